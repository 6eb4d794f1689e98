#include "bgc.h"

#include <cstring>
#include <string>

#include "bgc/json_io.hpp"

using namespace bgc;

struct bgc_channel {
  GaussianChannel value;
};

struct bgc_state {
  GaussianState value;
};

namespace {

thread_local std::string g_last_error;

bgc_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::bad_argument: return BGC_ERR_BAD_ARGUMENT;
    case ErrorCode::non_hermitian_input: return BGC_ERR_NON_HERMITIAN;
    case ErrorCode::not_psd: return BGC_ERR_NOT_PSD;
    case ErrorCode::dimension_mismatch: return BGC_ERR_DIMENSION;
    case ErrorCode::domain_error: return BGC_ERR_DOMAIN;
    case ErrorCode::invalid_state: return BGC_ERR_INVALID_STATE;
    case ErrorCode::invalid_channel: return BGC_ERR_INVALID_CHANNEL;
    case ErrorCode::bad_order: return BGC_ERR_BAD_ORDER;
    case ErrorCode::gain_too_high:
    case ErrorCode::gain_too_low: return BGC_ERR_GAIN;
    case ErrorCode::mode_mismatch: return BGC_ERR_MODE_MISMATCH;
    case ErrorCode::mixed_variant: return BGC_ERR_MIXED_VARIANT;
    case ErrorCode::not_extremal: return BGC_ERR_NOT_EXTREME;
    case ErrorCode::unsupported_branch: return BGC_ERR_UNSUPPORTED_BRANCH;
    case ErrorCode::non_commuting: return BGC_ERR_NON_COMMUTING;
    case ErrorCode::cutoff_too_small: return BGC_ERR_CUTOFF;
    case ErrorCode::invalid_factor: return BGC_ERR_INVALID_FACTOR;
    case ErrorCode::quadrature_not_converged: return BGC_ERR_NOT_CONVERGED;
    case ErrorCode::parse_error: return BGC_ERR_PARSE;
  }
  return BGC_ERR_INTERNAL;
}

template <typename Fn>
bgc_status guard(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return BGC_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return BGC_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return BGC_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename T>
void require_ptr(const T* ptr, const char* what) {
  if (!ptr) fail(ErrorCode::bad_argument, std::string(what) + " is null");
}

}  // namespace

extern "C" {

const char* bgc_status_name(bgc_status status) {
  switch (status) {
    case BGC_OK: return "ok";
    case BGC_ERR_BAD_ARGUMENT: return "bad_argument";
    case BGC_ERR_PARSE: return "parse_error";
    case BGC_ERR_NON_HERMITIAN: return "non_hermitian_input";
    case BGC_ERR_NOT_PSD: return "not_psd";
    case BGC_ERR_DIMENSION: return "dimension_mismatch";
    case BGC_ERR_DOMAIN: return "domain_error";
    case BGC_ERR_INVALID_STATE: return "invalid_state";
    case BGC_ERR_INVALID_CHANNEL: return "invalid_channel";
    case BGC_ERR_BAD_ORDER: return "bad_order";
    case BGC_ERR_GAIN: return "gain_out_of_range";
    case BGC_ERR_MODE_MISMATCH: return "mode_mismatch";
    case BGC_ERR_MIXED_VARIANT: return "mixed_variant";
    case BGC_ERR_NOT_EXTREME: return "not_extremal";
    case BGC_ERR_UNSUPPORTED_BRANCH: return "unsupported_branch";
    case BGC_ERR_NON_COMMUTING: return "non_commuting";
    case BGC_ERR_CUTOFF: return "cutoff_too_small";
    case BGC_ERR_INVALID_FACTOR: return "invalid_factor";
    case BGC_ERR_NOT_CONVERGED: return "quadrature_not_converged";
    case BGC_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

const char* bgc_last_error(void) { return g_last_error.c_str(); }

void bgc_string_free(char* str) { delete[] str; }
void bgc_channel_free(bgc_channel* channel) { delete channel; }
void bgc_state_free(bgc_state* state) { delete state; }

bgc_status bgc_channel_from_json(const char* json, bgc_channel** out) {
  return guard([&] {
    require_ptr(json, "json");
    require_ptr(out, "out");
    *out = new bgc_channel{parse_channel(json)};
  });
}

bgc_status bgc_channel_to_json(const bgc_channel* channel, char** json_out) {
  return guard([&] {
    require_ptr(channel, "channel");
    require_ptr(json_out, "json_out");
    *json_out = dup_string(dump_json(to_json(channel->value)));
  });
}

bgc_status bgc_state_from_json(const char* json, bgc_state** out) {
  return guard([&] {
    require_ptr(json, "json");
    require_ptr(out, "out");
    *out = new bgc_state{parse_state(json)};
  });
}

bgc_status bgc_state_to_json(const bgc_state* state, char** json_out) {
  return guard([&] {
    require_ptr(state, "state");
    require_ptr(json_out, "json_out");
    *json_out = dup_string(dump_json(to_json(state->value)));
  });
}

bgc_status bgc_state_vacuum(int modes, bgc_state** out) {
  return guard([&] {
    require_ptr(out, "out");
    *out = new bgc_state{vacuum(modes)};
  });
}

bgc_status bgc_channel_validate(const bgc_channel* channel, double tol,
                                int* valid_out, int* extreme_out) {
  return guard([&] {
    require_ptr(channel, "channel");
    require_ptr(valid_out, "valid_out");
    const bool valid = is_valid_channel(channel->value, tol);
    *valid_out = valid ? 1 : 0;
    if (extreme_out) {
      *extreme_out = valid && is_extreme(channel->value, tol) ? 1 : 0;
    }
  });
}

bgc_status bgc_channel_is_injective(const bgc_channel* channel, double tol,
                                    int* out) {
  return guard([&] {
    require_ptr(channel, "channel");
    require_ptr(out, "out");
    *out = is_injective(channel->value, tol) ? 1 : 0;
  });
}

bgc_status bgc_channel_min_output_entropy(const bgc_channel* channel,
                                          double* nats_out) {
  return guard([&] {
    require_ptr(channel, "channel");
    require_ptr(nats_out, "nats_out");
    *nats_out = min_output_entropy(channel->value);
  });
}

bgc_status bgc_channel_one_to_p_norm(const bgc_channel* channel, double p,
                                     double* out) {
  return guard([&] {
    require_ptr(channel, "channel");
    require_ptr(out, "out");
    *out = one_to_p_norm(channel->value, p);
  });
}

bgc_status bgc_channel_min_renyi_entropy(const bgc_channel* channel, double p,
                                         double* nats_out) {
  return guard([&] {
    require_ptr(channel, "channel");
    require_ptr(nats_out, "nats_out");
    *nats_out = min_renyi_entropy(channel->value, p);
  });
}

bgc_status bgc_channel_compose(const bgc_channel* outer,
                               const bgc_channel* inner, bgc_channel** out) {
  return guard([&] {
    require_ptr(outer, "outer");
    require_ptr(inner, "inner");
    require_ptr(out, "out");
    *out = new bgc_channel{compose(outer->value, inner->value)};
  });
}

bgc_status bgc_channel_tensor(const bgc_channel* a, const bgc_channel* b,
                              bgc_channel** out) {
  return guard([&] {
    require_ptr(a, "a");
    require_ptr(b, "b");
    require_ptr(out, "out");
    *out = new bgc_channel{tensor(a->value, b->value)};
  });
}

bgc_status bgc_channel_apply(const bgc_channel* channel, const bgc_state* in,
                             bgc_state** out) {
  return guard([&] {
    require_ptr(channel, "channel");
    require_ptr(in, "in");
    require_ptr(out, "out");
    *out = new bgc_state{apply(channel->value, in->value)};
  });
}

bgc_status bgc_channel_decompose(const bgc_channel* channel,
                                 bgc_channel** attenuator_out,
                                 bgc_channel** second_stage_out) {
  return guard([&] {
    require_ptr(channel, "channel");
    require_ptr(attenuator_out, "attenuator_out");
    require_ptr(second_stage_out, "second_stage_out");
    Decomposition d = decompose(channel->value);
    *attenuator_out = new bgc_channel{std::move(d.attenuator)};
    *second_stage_out = new bgc_channel{std::move(d.second_stage)};
  });
}

bgc_status bgc_channel_complement(const bgc_channel* channel,
                                  bgc_channel** out) {
  return guard([&] {
    require_ptr(channel, "channel");
    require_ptr(out, "out");
    *out = new bgc_channel{complement(channel->value)};
  });
}

bgc_status bgc_channel_diagonalize(const bgc_channel* channel,
                                   char** json_out) {
  return guard([&] {
    require_ptr(channel, "channel");
    require_ptr(json_out, "json_out");
    *json_out = dup_string(dump_json(to_json(diagonalize(channel->value))));
  });
}

bgc_status bgc_channel_dilation_symbol(const bgc_channel* channel,
                                       char** json_out) {
  return guard([&] {
    require_ptr(channel, "channel");
    require_ptr(json_out, "json_out");
    nlohmann::json j{{"V", to_json(dilation_unitary_symbol(channel->value))}};
    *json_out = dup_string(dump_json(j));
  });
}

bgc_status bgc_channel_capacity(const bgc_channel* channel,
                                const char* constraint_json, char** json_out) {
  return guard([&] {
    require_ptr(channel, "channel");
    require_ptr(constraint_json, "constraint_json");
    require_ptr(json_out, "json_out");
    EnergyConstraint constraint = parse_constraint(constraint_json);
    CapacitySolution sol = capacity(channel->value, constraint);
    *json_out = dup_string(dump_json(to_json(sol)));
  });
}

bgc_status bgc_state_is_valid(const bgc_state* state, double tol, int* out) {
  return guard([&] {
    require_ptr(state, "state");
    require_ptr(out, "out");
    *out = is_valid(state->value, tol) ? 1 : 0;
  });
}

bgc_status bgc_state_von_neumann_entropy(const bgc_state* state,
                                         double* nats_out) {
  return guard([&] {
    require_ptr(state, "state");
    require_ptr(nats_out, "nats_out");
    *nats_out = von_neumann_entropy(state->value);
  });
}

bgc_status bgc_state_renyi_entropy(const bgc_state* state, double p,
                                   double* nats_out) {
  return guard([&] {
    require_ptr(state, "state");
    require_ptr(nats_out, "nats_out");
    *nats_out = renyi_entropy(state->value, p);
  });
}

bgc_status bgc_state_spectrum(const bgc_state* state, int top_k,
                              double* spectrum_out) {
  return guard([&] {
    require_ptr(state, "state");
    require_ptr(spectrum_out, "spectrum_out");
    std::vector<double> spec = spectrum(state->value, top_k);
    std::memcpy(spectrum_out, spec.data(), spec.size() * sizeof(double));
  });
}

bgc_status bgc_witness_optimizer(const char* factor_json, const char* f_name,
                                 int trials, uint64_t seed, int cutoff,
                                 char** report_json_out) {
  return guard([&] {
    require_ptr(factor_json, "factor_json");
    require_ptr(f_name, "f_name");
    require_ptr(report_json_out, "report_json_out");
    OneModeFactor factor = parse_factor(factor_json);
    fock::WitnessReport report =
        fock::optimizer_witness(factor, f_name, trials, seed, cutoff);
    *report_json_out = dup_string(dump_json(to_json(report)));
  });
}

bgc_status bgc_wehrl(const char* state_json, const char* f_name, int cutoff,
                     int radial_nodes, int angular_nodes, double* out) {
  return guard([&] {
    require_ptr(state_json, "state_json");
    require_ptr(f_name, "f_name");
    require_ptr(out, "out");
    GaussianState s = parse_state(state_json);
    if (s.modes() != 1) {
      fail(ErrorCode::bad_argument,
           "wehrl functional is defined for one-mode states");
    }
    require_valid_state(s);
    const double occupation =
        std::max(s.corr(0, 0).real() - 0.5, 0.0);
    fock::FockDensity rho =
        fock::gaussian_fock(occupation, s.mean[0], cutoff);
    *out = fock::wehrl_functional(rho, fock::named_function(f_name),
                                  radial_nodes, angular_nodes);
  });
}

}  // extern "C"
