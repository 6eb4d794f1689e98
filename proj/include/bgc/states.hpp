#pragma once

#include <vector>

#include "bgc/linalg.hpp"

namespace bgc {

/// Gauge-invariant Gaussian state in the complex mode parametrization.
///
/// `corr` is the full Hermitian correlation matrix including the vacuum
/// floor, so the state is physical iff corr >= I/2 and the occupation
/// number matrix is corr - I/2. `mean` holds the complex displacement
/// amplitudes of the modes.
struct GaussianState {
  ComplexVector mean;
  ComplexMatrix corr;

  int modes() const { return static_cast<int>(corr.rows()); }
};

inline constexpr double kStateTol = 1e-9;

GaussianState vacuum(int modes);

GaussianState coherent(const ComplexVector& w);

/// corr >= I/2 up to `tol` on eigenvalues.
bool is_valid(const GaussianState& s, double tol = kStateTol);

void require_valid_state(const GaussianState& s, double tol = kStateTol);

/// Mode occupation numbers: eigenvalues of corr - I/2, ascending,
/// clamped to zero within tolerance.
std::vector<double> occupations(const GaussianState& s);

/// Von Neumann entropy sum_j g(nu_j) in nats.
double von_neumann_entropy(const GaussianState& s);

/// Quantum Renyi entropy of order p > 1 in nats.
double renyi_entropy(const GaussianState& s, double p);

/// Largest `top_k` eigenvalues of the density operator, descending.
/// The spectrum only depends on `corr` (displacements are unitary).
std::vector<double> spectrum(const GaussianState& s, int top_k);

}  // namespace bgc
