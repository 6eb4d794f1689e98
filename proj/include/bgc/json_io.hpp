#pragma once

#include <json.hpp>

#include "bgc/fock.hpp"
#include "bgc/optimizers.hpp"

namespace bgc {

// Complex numbers serialize as {"re": .., "im": ..}; matrices as nested
// row-major arrays. States carry "modes", channels carry
// "modes_in"/"modes_out"/"variant" alongside "K" (modes_in rows by
// modes_out columns) and "mu".

nlohmann::json to_json(const ComplexMatrix& m);
nlohmann::json to_json(const ComplexVector& v);
nlohmann::json to_json(const GaussianState& s);
nlohmann::json to_json(const GaussianChannel& c);
nlohmann::json to_json(const Decomposition& d);
nlohmann::json to_json(const OneModeFactor& f);
nlohmann::json to_json(const Diagonalization& d);
nlohmann::json to_json(const EnergyConstraint& constraint);
nlohmann::json to_json(const CapacitySolution& sol);
nlohmann::json to_json(const fock::WitnessReport& report);

ComplexMatrix matrix_from_json(const nlohmann::json& j);
ComplexVector vector_from_json(const nlohmann::json& j);
GaussianState state_from_json(const nlohmann::json& j);
GaussianChannel channel_from_json(const nlohmann::json& j);
OneModeFactor factor_from_json(const nlohmann::json& j);
EnergyConstraint constraint_from_json(const nlohmann::json& j);

GaussianState parse_state(const std::string& text);
GaussianChannel parse_channel(const std::string& text);
OneModeFactor parse_factor(const std::string& text);
EnergyConstraint parse_constraint(const std::string& text);

std::string dump_json(const nlohmann::json& j);

}  // namespace bgc
