#pragma once

#include <string>
#include <vector>

#include "bgc/channels.hpp"

namespace bgc {

/// Gauge-invariant oscillator energy form epsilon (positive definite)
/// and the budget E on tr(nu epsilon).
struct EnergyConstraint {
  ComplexMatrix epsilon;
  double E = 0.0;
};

struct CapacitySolution {
  ComplexMatrix nu;          // optimal input correlation, PSD
  double capacity_nats = 0;  // chi at nu
  double chi_value = 0;      // same as capacity_nats, kept for reports
  int iterations = 0;
  double kkt_residual = 0;
  double lambda = 0;                  // water level (commuting path)
  std::vector<double> allocations;   // per-mode nu_j (commuting path)
  std::string path;                  // "water_filling" or "projected_ascent"
};

/// Vacuum-output occupation matrix mu + (K^dag K - I)/2 (same formula
/// for both variants).
ComplexMatrix vacuum_output_occupation(const GaussianChannel& c);

/// Minimal output von Neumann entropy tr g(mu + (K^dag K - I)/2) in
/// nats; attained on the vacuum.
double min_output_entropy(const GaussianChannel& c);

/// (1 -> p) norm for p > 1 via the determinant formula; lies in (0, 1].
double one_to_p_norm(const GaussianChannel& c, double p);

/// Minimal output Renyi entropy p/(1-p) * ln ||Phi||_{1->p} in nats.
double min_renyi_entropy(const GaussianChannel& c, double p);

/// chi quantity of the Gaussian coherent-state ensemble with input
/// correlation nu >= 0, in nats.
double chi_of_gaussian_ensemble(const GaussianChannel& c,
                                const ComplexMatrix& nu);

void require_constraint(const EnergyConstraint& constraint);

/// Constrained classical capacity max_{tr(nu eps) <= E} chi(pi_nu).
/// Uses per-mode water-filling when K, mu, epsilon form a commuting
/// family, otherwise projected gradient ascent over PSD nu.
CapacitySolution capacity(const GaussianChannel& c,
                          const EnergyConstraint& constraint);

/// Commuting-path solver; NonCommuting if the family does not share an
/// eigenbasis. Exposed for cross-validation against the general path.
CapacitySolution capacity_water_filling(const GaussianChannel& c,
                                        const EnergyConstraint& constraint);

/// General-path solver, usable on any instance.
CapacitySolution capacity_projected_ascent(const GaussianChannel& c,
                                           const EnergyConstraint& constraint);

}  // namespace bgc
