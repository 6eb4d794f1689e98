#include "bgc/json_io.hpp"

namespace bgc {

using nlohmann::json;

namespace {

json complex_to_json(const std::complex<double>& z) {
  return json{{"re", z.real()}, {"im", z.imag()}};
}

std::complex<double> complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  return {j.at("re").get<double>(), j.value("im", 0.0)};
}

template <typename Fn>
auto guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    fail(ErrorCode::parse_error, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

json to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(complex_to_json(m(r, c)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const ComplexVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out.push_back(complex_to_json(v[i]));
  }
  return out;
}

json to_json(const GaussianState& s) {
  return json{{"modes", s.modes()},
              {"mean", to_json(s.mean)},
              {"corr", to_json(s.corr)}};
}

json to_json(const GaussianChannel& c) {
  return json{{"modes_in", c.modes_in()},
              {"modes_out", c.modes_out()},
              {"variant", variant_name(c.variant)},
              {"K", to_json(c.K)},
              {"mu", to_json(c.mu)}};
}

json to_json(const Decomposition& d) {
  return json{{"attenuator", to_json(d.attenuator)},
              {"second_stage", to_json(d.second_stage)}};
}

json to_json(const OneModeFactor& f) {
  return json{{"k", f.k},
              {"mu", f.mu},
              {"role", factor_role_name(f.role)},
              {"variant", variant_name(f.variant)}};
}

json to_json(const Diagonalization& d) {
  json factors = json::array();
  for (const auto& f : d.factors) factors.push_back(to_json(f));
  return json{{"pre_unitary", to_json(d.pre_unitary)},
              {"post_unitary", to_json(d.post_unitary)},
              {"factors", std::move(factors)}};
}

json to_json(const EnergyConstraint& constraint) {
  return json{{"epsilon", to_json(constraint.epsilon)},
              {"E", constraint.E}};
}

json to_json(const CapacitySolution& sol) {
  return json{{"nu", to_json(sol.nu)},
              {"capacity_nats", sol.capacity_nats},
              {"chi_value", sol.chi_value},
              {"iterations", sol.iterations},
              {"kkt_residual", sol.kkt_residual},
              {"lambda", sol.lambda},
              {"allocations", sol.allocations},
              {"path", sol.path}};
}

json to_json(const fock::WitnessReport& report) {
  return json{{"factor", to_json(report.factor)},
              {"f", report.f_name},
              {"trials", report.trials},
              {"seed", report.seed},
              {"cutoff", report.cutoff},
              {"vacuum_value", report.vacuum_value},
              {"sample_min", report.sample_min},
              {"margin", report.margin},
              {"pass", report.pass},
              {"argmin_trial", report.argmin_trial},
              {"argmin_coherent_fidelity", report.argmin_coherent_fidelity}};
}

ComplexMatrix matrix_from_json(const json& j) {
  return guarded([&] {
    if (!j.is_array() || j.empty()) {
      fail(ErrorCode::parse_error, "matrix must be a nonempty array of rows");
    }
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    const Eigen::Index cols = static_cast<Eigen::Index>(j.at(0).size());
    ComplexMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      const json& row = j.at(static_cast<size_t>(r));
      if (static_cast<Eigen::Index>(row.size()) != cols) {
        fail(ErrorCode::parse_error, "ragged matrix rows");
      }
      for (Eigen::Index c = 0; c < cols; ++c) {
        m(r, c) = complex_from_json(row.at(static_cast<size_t>(c)));
      }
    }
    return m;
  });
}

ComplexVector vector_from_json(const json& j) {
  return guarded([&] {
    ComplexVector v(static_cast<Eigen::Index>(j.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      v[i] = complex_from_json(j.at(static_cast<size_t>(i)));
    }
    return v;
  });
}

GaussianState state_from_json(const json& j) {
  return guarded([&] {
    GaussianState s;
    s.mean = vector_from_json(j.at("mean"));
    s.corr = matrix_from_json(j.at("corr"));
    const int modes = j.value("modes", static_cast<int>(s.corr.rows()));
    if (modes != s.corr.rows() || s.corr.rows() != s.corr.cols() ||
        s.mean.size() != s.corr.rows()) {
      fail(ErrorCode::parse_error, "state dimensions are inconsistent");
    }
    return s;
  });
}

GaussianChannel channel_from_json(const json& j) {
  return guarded([&] {
    GaussianChannel c;
    const std::string variant = j.value("variant", "covariant");
    if (variant == "covariant") {
      c.variant = Variant::covariant;
    } else if (variant == "contravariant") {
      c.variant = Variant::contravariant;
    } else {
      fail(ErrorCode::parse_error, "unknown variant: " + variant);
    }
    c.K = matrix_from_json(j.at("K"));
    c.mu = matrix_from_json(j.at("mu"));
    const int modes_in = j.value("modes_in", static_cast<int>(c.K.rows()));
    const int modes_out = j.value("modes_out", static_cast<int>(c.K.cols()));
    if (modes_in != c.K.rows() || modes_out != c.K.cols() ||
        c.mu.rows() != modes_out || c.mu.cols() != modes_out) {
      fail(ErrorCode::parse_error, "channel dimensions are inconsistent");
    }
    return c;
  });
}

OneModeFactor factor_from_json(const json& j) {
  return guarded([&] {
    OneModeFactor f;
    f.k = j.at("k").get<double>();
    f.mu = j.at("mu").get<double>();
    const std::string role = j.value("role", "active");
    if (role == "active") {
      f.role = FactorRole::active;
    } else if (role == "padded_vacuum") {
      f.role = FactorRole::padded_vacuum;
    } else if (role == "traced_out") {
      f.role = FactorRole::traced_out;
    } else {
      fail(ErrorCode::parse_error, "unknown factor role: " + role);
    }
    const std::string variant = j.value("variant", "covariant");
    if (variant == "covariant") {
      f.variant = Variant::covariant;
    } else if (variant == "contravariant") {
      f.variant = Variant::contravariant;
    } else {
      fail(ErrorCode::parse_error, "unknown variant: " + variant);
    }
    return f;
  });
}

EnergyConstraint constraint_from_json(const json& j) {
  return guarded([&] {
    EnergyConstraint constraint;
    constraint.epsilon = matrix_from_json(j.at("epsilon"));
    constraint.E = j.at("E").get<double>();
    return constraint;
  });
}

namespace {

json parse_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    fail(ErrorCode::parse_error, "input is not valid JSON");
  }
  return j;
}

}  // namespace

GaussianState parse_state(const std::string& text) {
  return state_from_json(parse_text(text));
}

GaussianChannel parse_channel(const std::string& text) {
  return channel_from_json(parse_text(text));
}

OneModeFactor parse_factor(const std::string& text) {
  return factor_from_json(parse_text(text));
}

EnergyConstraint parse_constraint(const std::string& text) {
  return constraint_from_json(parse_text(text));
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

}  // namespace bgc
