// Command-line front end for the bosonic Gaussian channel library.
// Talks to the shared library exclusively through the C API.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bgc.h"

namespace {

using nlohmann::json;

constexpr double kLn2 = 0.6931471805599453;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

[[noreturn]] void emit_error_and_exit(bgc_status status) {
  json err{{"error",
            {{"code", bgc_status_name(status)},
             {"message", bgc_last_error()}}}};
  std::cout << err.dump(2) << "\n";
  std::exit(1);
}

void check(bgc_status status) {
  if (status != BGC_OK) emit_error_and_exit(status);
}

json take_json(char* text) {
  json j = json::parse(text);
  bgc_string_free(text);
  return j;
}

struct ChannelHandle {
  bgc_channel* ptr = nullptr;
  ~ChannelHandle() { bgc_channel_free(ptr); }
};

struct StateHandle {
  bgc_state* ptr = nullptr;
  ~StateHandle() { bgc_state_free(ptr); }
};

void load_channel(const std::string& path, ChannelHandle& h) {
  check(bgc_channel_from_json(read_file(path).c_str(), &h.ptr));
}

void load_state(const std::string& path, StateHandle& h) {
  check(bgc_state_from_json(read_file(path).c_str(), &h.ptr));
}

bool looks_like_channel(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  return j.is_object() && j.contains("K");
}

struct OutputOptions {
  std::string units = "nats";
  std::string format = "json";
};

double convert_units(double nats, const OutputOptions& opts) {
  return opts.units == "bits" ? nats / kLn2 : nats;
}

void emit_scalar(double value, const OutputOptions& opts, bool entropic) {
  const double shown = entropic ? convert_units(value, opts) : value;
  if (opts.format == "csv") {
    std::cout << "value\n" << json(shown).dump() << "\n";
    return;
  }
  json out{{"value", shown}};
  if (entropic) out["units"] = opts.units;
  std::cout << out.dump(2) << "\n";
}

void emit_json(const json& j, const OutputOptions& opts) {
  (void)opts;
  std::cout << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bosonic Gaussian channel toolbox"};
  app.require_subcommand(1);
  app.fallthrough();

  OutputOptions out_opts;
  app.add_option("--units", out_opts.units, "entropy units: nats|bits")
      ->check(CLI::IsMember({"nats", "bits"}))
      ->capture_default_str();
  app.add_option("--format", out_opts.format, "output format: json|csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  double tol = 1e-9;
  double p_order = 2.0;
  int top_k = 16;
  int trials = 200;
  std::uint64_t seed = 12345;
  int cutoff = 40;
  int radial_nodes = 64;
  int angular_nodes = 64;
  std::string f_name = "neg_x_log_x";
  std::string file_a, file_b;

  auto* validate = app.add_subcommand("validate",
                                      "validity/extremality of a channel or "
                                      "state JSON file");
  validate->add_option("input", file_a)->required();
  validate->add_option("--tol", tol)->capture_default_str();

  auto* compose = app.add_subcommand("compose",
                                     "concatenate: first file is the outer "
                                     "channel, second the inner");
  compose->add_option("outer", file_a)->required();
  compose->add_option("inner", file_b)->required();

  auto* tensor_cmd = app.add_subcommand("tensor", "tensor product");
  tensor_cmd->add_option("first", file_a)->required();
  tensor_cmd->add_option("second", file_b)->required();

  auto* decompose_cmd =
      app.add_subcommand("decompose", "attenuator/second-stage factorization");
  decompose_cmd->add_option("channel", file_a)->required();

  auto* complement_cmd =
      app.add_subcommand("complement", "complementary channel");
  complement_cmd->add_option("channel", file_a)->required();

  auto* diagonalize_cmd =
      app.add_subcommand("diagonalize", "mode-wise normal form");
  diagonalize_cmd->add_option("channel", file_a)->required();

  auto* apply_cmd = app.add_subcommand("apply", "apply channel to a state");
  apply_cmd->add_option("channel", file_a)->required();
  apply_cmd->add_option("state", file_b)->required();

  auto* min_entropy =
      app.add_subcommand("min-entropy", "minimal output entropy of a channel");
  min_entropy->add_option("channel", file_a)->required();

  auto* norm_cmd = app.add_subcommand("norm", "(1->p) norm of a channel");
  norm_cmd->add_option("channel", file_a)->required();
  norm_cmd->add_option("--p", p_order)->capture_default_str();

  auto* renyi_cmd = app.add_subcommand(
      "renyi", "Renyi entropy of a state or minimal output Renyi entropy "
               "of a channel");
  renyi_cmd->add_option("input", file_a)->required();
  renyi_cmd->add_option("--p", p_order)->capture_default_str();

  auto* capacity_cmd = app.add_subcommand(
      "capacity", "constrained classical capacity (channel + constraint)");
  capacity_cmd->add_option("channel", file_a)->required();
  capacity_cmd->add_option("constraint", file_b)->required();

  auto* witness_cmd = app.add_subcommand(
      "witness-optimizer", "Monte-Carlo vacuum-optimality witness");
  witness_cmd->add_option("factor", file_a)->required();
  witness_cmd->add_option("--f", f_name)->capture_default_str();
  witness_cmd->add_option("--trials", trials)->capture_default_str();
  witness_cmd->add_option("--seed", seed)->capture_default_str();
  witness_cmd->add_option("--cutoff", cutoff)->capture_default_str();

  auto* wehrl_cmd = app.add_subcommand(
      "wehrl", "Wehrl-type functional of a one-mode state by quadrature");
  wehrl_cmd->add_option("state", file_a)->required();
  wehrl_cmd->add_option("--f", f_name)->capture_default_str();
  wehrl_cmd->add_option("--cutoff", cutoff)->capture_default_str();
  wehrl_cmd->add_option("--radial-nodes", radial_nodes)->capture_default_str();
  wehrl_cmd->add_option("--angular-nodes", angular_nodes)
      ->capture_default_str();

  auto* spectrum_cmd =
      app.add_subcommand("spectrum", "top eigenvalues of a Gaussian state");
  spectrum_cmd->add_option("state", file_a)->required();
  spectrum_cmd->add_option("--top-k", top_k)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*validate) {
      const std::string text = read_file(file_a);
      if (looks_like_channel(text)) {
        ChannelHandle ch;
        check(bgc_channel_from_json(text.c_str(), &ch.ptr));
        int valid = 0, extreme = 0;
        check(bgc_channel_validate(ch.ptr, tol, &valid, &extreme));
        emit_json(json{{"valid", valid != 0}, {"extreme", extreme != 0}},
                  out_opts);
      } else {
        StateHandle st;
        check(bgc_state_from_json(text.c_str(), &st.ptr));
        int valid = 0;
        check(bgc_state_is_valid(st.ptr, tol, &valid));
        emit_json(json{{"valid", valid != 0}}, out_opts);
      }
    } else if (*compose) {
      ChannelHandle outer, inner, result;
      load_channel(file_a, outer);
      load_channel(file_b, inner);
      check(bgc_channel_compose(outer.ptr, inner.ptr, &result.ptr));
      char* text = nullptr;
      check(bgc_channel_to_json(result.ptr, &text));
      emit_json(take_json(text), out_opts);
    } else if (*tensor_cmd) {
      ChannelHandle a, b, result;
      load_channel(file_a, a);
      load_channel(file_b, b);
      check(bgc_channel_tensor(a.ptr, b.ptr, &result.ptr));
      char* text = nullptr;
      check(bgc_channel_to_json(result.ptr, &text));
      emit_json(take_json(text), out_opts);
    } else if (*decompose_cmd) {
      ChannelHandle ch, att, second;
      load_channel(file_a, ch);
      check(bgc_channel_decompose(ch.ptr, &att.ptr, &second.ptr));
      char *att_text = nullptr, *second_text = nullptr;
      check(bgc_channel_to_json(att.ptr, &att_text));
      check(bgc_channel_to_json(second.ptr, &second_text));
      emit_json(json{{"attenuator", take_json(att_text)},
                     {"second_stage", take_json(second_text)}},
                out_opts);
    } else if (*complement_cmd) {
      ChannelHandle ch, result;
      load_channel(file_a, ch);
      check(bgc_channel_complement(ch.ptr, &result.ptr));
      char* text = nullptr;
      check(bgc_channel_to_json(result.ptr, &text));
      emit_json(take_json(text), out_opts);
    } else if (*diagonalize_cmd) {
      ChannelHandle ch;
      load_channel(file_a, ch);
      char* text = nullptr;
      check(bgc_channel_diagonalize(ch.ptr, &text));
      emit_json(take_json(text), out_opts);
    } else if (*apply_cmd) {
      ChannelHandle ch;
      StateHandle in, out;
      load_channel(file_a, ch);
      load_state(file_b, in);
      check(bgc_channel_apply(ch.ptr, in.ptr, &out.ptr));
      char* text = nullptr;
      check(bgc_state_to_json(out.ptr, &text));
      emit_json(take_json(text), out_opts);
    } else if (*min_entropy) {
      ChannelHandle ch;
      load_channel(file_a, ch);
      double value = 0;
      check(bgc_channel_min_output_entropy(ch.ptr, &value));
      emit_scalar(value, out_opts, true);
    } else if (*norm_cmd) {
      ChannelHandle ch;
      load_channel(file_a, ch);
      double value = 0;
      check(bgc_channel_one_to_p_norm(ch.ptr, p_order, &value));
      emit_scalar(value, out_opts, false);
    } else if (*renyi_cmd) {
      const std::string text = read_file(file_a);
      double value = 0;
      if (looks_like_channel(text)) {
        ChannelHandle ch;
        check(bgc_channel_from_json(text.c_str(), &ch.ptr));
        check(bgc_channel_min_renyi_entropy(ch.ptr, p_order, &value));
      } else {
        StateHandle st;
        check(bgc_state_from_json(text.c_str(), &st.ptr));
        check(bgc_state_renyi_entropy(st.ptr, p_order, &value));
      }
      emit_scalar(value, out_opts, true);
    } else if (*capacity_cmd) {
      ChannelHandle ch;
      load_channel(file_a, ch);
      char* text = nullptr;
      check(bgc_channel_capacity(ch.ptr, read_file(file_b).c_str(), &text));
      json sol = take_json(text);
      sol["capacity"] =
          convert_units(sol["capacity_nats"].get<double>(), out_opts);
      sol["units"] = out_opts.units;
      emit_json(sol, out_opts);
    } else if (*witness_cmd) {
      char* text = nullptr;
      check(bgc_witness_optimizer(read_file(file_a).c_str(), f_name.c_str(),
                                  trials, seed, cutoff, &text));
      emit_json(take_json(text), out_opts);
    } else if (*wehrl_cmd) {
      double value = 0;
      check(bgc_wehrl(read_file(file_a).c_str(), f_name.c_str(), cutoff,
                      radial_nodes, angular_nodes, &value));
      emit_scalar(value, out_opts, true);
    } else if (*spectrum_cmd) {
      StateHandle st;
      load_state(file_a, st);
      std::vector<double> spec(static_cast<size_t>(std::max(top_k, 1)));
      check(bgc_state_spectrum(st.ptr, top_k, spec.data()));
      if (out_opts.format == "csv") {
        std::cout << "index,value\n";
        for (size_t i = 0; i < spec.size(); ++i) {
          std::cout << i << "," << json(spec[i]).dump() << "\n";
        }
      } else {
        emit_json(json{{"spectrum", spec}}, out_opts);
      }
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    json err{{"error", {{"code", "parse_error"}, {"message", e.what()}}}};
    std::cout << err.dump(2) << "\n";
    return 1;
  }
  return 0;
}
