#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "bgc/errors.hpp"

namespace bgc {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Entrywise tolerance for accepting a matrix as Hermitian.
inline constexpr double kHermitianTol = 1e-12;

/// Eigenvalues below this (relative to the largest) are clamped to zero
/// when taking square roots or pseudo-inverses of nominally PSD matrices.
inline constexpr double kPsdClampTol = 1e-10;

struct HermitianEig {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // unitary, columns are eigenvectors
};

bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTol);

/// Throws NonHermitianInput unless `m` is square and Hermitian within `tol`.
void require_hermitian(const ComplexMatrix& m, double tol = kHermitianTol);

/// Spectral decomposition of a Hermitian matrix, eigenvalues ascending.
HermitianEig eig_hermitian(const ComplexMatrix& m);

/// Principal square root of a PSD matrix. Eigenvalues in
/// [-kPsdClampTol, 0) are clamped to zero; anything lower throws NotPSD.
ComplexMatrix sqrt_psd(const ComplexMatrix& m);

/// Moore-Penrose pseudo-inverse of a PSD matrix. Eigenvalues below
/// rank_tol * lambda_max count as zero.
ComplexMatrix pinv_psd(const ComplexMatrix& m, double rank_tol = kPsdClampTol);

/// Loewner order test: a >= b iff min eig(a - b) >= -tol.
bool loewner_geq(const ComplexMatrix& a, const ComplexMatrix& b, double tol);

/// tr f(m) evaluated on the spectrum. Throws DomainError if f is not
/// finite at some eigenvalue.
double apply_spectral(const ComplexMatrix& m,
                      const std::function<double(double)>& f);

/// Matrix function f(m) of a Hermitian matrix, evaluated spectrally.
ComplexMatrix matrix_function(const ComplexMatrix& m,
                              const std::function<double(double)>& f);

/// Common eigenbasis (columns) of a family of pairwise commuting
/// Hermitian matrices: eigenvectors of the first matrix, recursively
/// rotated inside degenerate clusters to diagonalize the rest.
ComplexMatrix joint_eigenbasis(const std::vector<ComplexMatrix>& mats);

/// Bosonic entropy kernel g(x) = (x+1)ln(x+1) - x ln x, g(0) = 0 (nats).
double g_bose(double x);

/// g'(x) = ln(1 + 1/x); diverges as x -> 0+.
double g_bose_prime(double x);

/// (M + M^dagger)/2, used to strip roundoff asymmetry from products
/// that are Hermitian in exact arithmetic.
inline ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  return 0.5 * (m + m.adjoint());
}

}  // namespace bgc
