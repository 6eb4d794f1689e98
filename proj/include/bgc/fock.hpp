#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bgc/structure.hpp"

namespace bgc::fock {

/// Density operator on a photon-number-truncated one-mode Hilbert space
/// (levels 0..cutoff). Truncation may leak a little trace.
struct FockDensity {
  ComplexMatrix matrix;

  int cutoff() const { return static_cast<int>(matrix.rows()) - 1; }
};

/// Unit vector of Fock amplitudes.
struct FockPure {
  ComplexVector amplitudes;

  int cutoff() const { return static_cast<int>(amplitudes.size()) - 1; }
};

struct FockOptions {
  double leak_tol = 1e-9;
};

/// Hermitian within 1e-12, min eigenvalue >= -1e-10, trace in
/// (1 - leak_tol, 1 + 1e-9].
void require_density(const FockDensity& rho, double leak_tol = 1e-9);

FockPure fock_basis(int n, int cutoff);

/// Coherent vector, amplitudes e^{-|w|^2/2} w^n / sqrt(n!). Throws
/// CutoffTooSmall when the truncated mass exceeds 1e-10.
FockPure coherent_fock(std::complex<double> w, int cutoff);

/// Haar-random pure state: normalized standard complex Gaussian vector.
FockPure haar_random_pure(int cutoff, std::uint64_t seed);

FockDensity pure_to_density(const FockPure& psi);

/// One-mode gauge-invariant Gaussian state: displaced thermal state with
/// the given occupation number and complex mean.
FockDensity gaussian_fock(double occupation, std::complex<double> mean,
                          int cutoff);

/// Eigenvalues of the density operator, descending, clamped at zero.
std::vector<double> spectrum_of(const FockDensity& rho);

/// Apply a one-mode factor by exact dilation: beamsplitter for the
/// attenuator part, two-mode squeezer for the amplifier or contravariant
/// part, non-extreme noise split into attenuator-then-second-stage.
FockDensity apply_one_mode(const OneModeFactor& factor, const FockDensity& rho,
                           const FockOptions& opts = {});

/// Environment output of the dilation of an extreme factor.
FockDensity complementary_output(const OneModeFactor& factor,
                                 const FockPure& psi,
                                 const FockOptions& opts = {});

/// Tr f(Phi[rho]) over the output spectrum, skipping zero eigenvalues.
double tr_f_output(const OneModeFactor& factor, const FockDensity& rho,
                   const std::function<double(double)>& f,
                   const FockOptions& opts = {});

struct WitnessReport {
  OneModeFactor factor;
  std::string f_name;
  int trials = 0;
  std::uint64_t seed = 0;
  int cutoff = 0;
  double vacuum_value = 0;
  double sample_min = 0;
  double margin = 0;  // sample_min - vacuum_value
  bool pass = false;
  int argmin_trial = -1;
  /// |<coh(<a>)|psi>|^2 of the minimizing sample; diagnostic only.
  double argmin_coherent_fidelity = 0;
};

/// Monte-Carlo witness for vacuum optimality: samples Haar-random pure
/// inputs and checks that none beats the vacuum output value of
/// Tr f(Phi[.]) by more than 1e-9. Falsifies, never proves.
WitnessReport optimizer_witness(const OneModeFactor& factor,
                                const std::string& f_name, int trials,
                                std::uint64_t seed, int cutoff,
                                const FockOptions& opts = {});

/// Same sampling pass evaluated for several concave functions at once.
std::vector<WitnessReport> optimizer_witness_multi(
    const OneModeFactor& factor, const std::vector<std::string>& f_names,
    int trials, std::uint64_t seed, int cutoff, const FockOptions& opts = {});

/// Partial-sum dominance of the sorted spectra.
bool majorizes(const FockDensity& rho, const FockDensity& sigma, double tol);

/// Husimi density p_rho(z) = <z|rho|z>.
double husimi(const FockDensity& rho, std::complex<double> z);

/// integral f(p_rho(z)) d^2 z / pi by Gauss-Legendre (angle) x
/// Gauss-Laguerre (t = |z|^2) quadrature; the result must move by less
/// than 1e-5 when both node counts double, else QuadratureNotConverged.
double wehrl_functional(const FockDensity& rho,
                        const std::function<double(double)>& f,
                        int radial_nodes, int angular_nodes);

/// Concave test functions by name: "neg_x_log_x", "neg_x_sq",
/// "neg_x_p15", "identity".
std::function<double(double)> named_function(const std::string& name);

/// Output cutoff policy for amplifying stages.
int amplifier_output_cutoff(double gain_sq, int input_cutoff);

}  // namespace bgc::fock
