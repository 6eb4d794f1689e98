#include "bgc/linalg.hpp"

#include <cmath>
#include <sstream>

namespace bgc {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::bad_argument: return "BadArgument";
    case ErrorCode::non_hermitian_input: return "NonHermitianInput";
    case ErrorCode::not_psd: return "NotPSD";
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::domain_error: return "DomainError";
    case ErrorCode::invalid_state: return "InvalidState";
    case ErrorCode::invalid_channel: return "InvalidChannel";
    case ErrorCode::bad_order: return "BadOrder";
    case ErrorCode::gain_too_high: return "GainTooHigh";
    case ErrorCode::gain_too_low: return "GainTooLow";
    case ErrorCode::mode_mismatch: return "ModeMismatch";
    case ErrorCode::mixed_variant: return "MixedVariant";
    case ErrorCode::not_extremal: return "NotExtremal";
    case ErrorCode::unsupported_branch: return "UnsupportedBranch";
    case ErrorCode::non_commuting: return "NonCommuting";
    case ErrorCode::cutoff_too_small: return "CutoffTooSmall";
    case ErrorCode::invalid_factor: return "InvalidFactor";
    case ErrorCode::quadrature_not_converged: return "QuadratureNotConverged";
    case ErrorCode::parse_error: return "ParseError";
  }
  return "Unknown";
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

void require_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) {
    fail(ErrorCode::non_hermitian_input, "matrix is not square");
  }
  const double defect =
      m.size() == 0 ? 0.0 : (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (defect > tol) {
    std::ostringstream os;
    os << "matrix is not Hermitian (max asymmetry " << defect << ")";
    fail(ErrorCode::non_hermitian_input, os.str());
  }
}

HermitianEig eig_hermitian(const ComplexMatrix& m) {
  require_hermitian(m);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(m));
  if (solver.info() != Eigen::Success) {
    fail(ErrorCode::domain_error, "Hermitian eigendecomposition failed");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix sqrt_psd(const ComplexMatrix& m) {
  HermitianEig eig = eig_hermitian(m);
  const double scale = std::max(1.0, std::abs(eig.values.cwiseAbs().maxCoeff()));
  RealVector roots(eig.values.size());
  for (Eigen::Index j = 0; j < eig.values.size(); ++j) {
    double lambda = eig.values[j];
    if (lambda < -kPsdClampTol * scale) {
      std::ostringstream os;
      os << "matrix is not PSD (eigenvalue " << lambda << ")";
      fail(ErrorCode::not_psd, os.str());
    }
    roots[j] = std::sqrt(std::max(lambda, 0.0));
  }
  return hermitian_part(eig.vectors * roots.asDiagonal() *
                        eig.vectors.adjoint());
}

ComplexMatrix pinv_psd(const ComplexMatrix& m, double rank_tol) {
  HermitianEig eig = eig_hermitian(m);
  const double lambda_max =
      eig.values.size() == 0 ? 0.0 : eig.values.maxCoeff();
  const double scale = std::max(1.0, std::abs(lambda_max));
  RealVector inv(eig.values.size());
  for (Eigen::Index j = 0; j < eig.values.size(); ++j) {
    double lambda = eig.values[j];
    if (lambda < -kPsdClampTol * scale) {
      fail(ErrorCode::not_psd, "pinv_psd: matrix is not PSD");
    }
    inv[j] = lambda > rank_tol * std::max(lambda_max, 0.0) && lambda > 0.0
                 ? 1.0 / lambda
                 : 0.0;
  }
  return hermitian_part(eig.vectors * inv.asDiagonal() *
                        eig.vectors.adjoint());
}

bool loewner_geq(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    fail(ErrorCode::dimension_mismatch, "loewner_geq: dimension mismatch");
  }
  ComplexMatrix diff = hermitian_part(a - b);
  require_hermitian(diff, 1e-9);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(diff,
                                                      Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    fail(ErrorCode::domain_error, "loewner_geq: eigendecomposition failed");
  }
  return solver.eigenvalues().minCoeff() >= -tol;
}

double apply_spectral(const ComplexMatrix& m,
                      const std::function<double(double)>& f) {
  HermitianEig eig = eig_hermitian(m);
  double sum = 0.0;
  for (Eigen::Index j = 0; j < eig.values.size(); ++j) {
    double value = f(eig.values[j]);
    if (!std::isfinite(value)) {
      std::ostringstream os;
      os << "apply_spectral: f undefined at eigenvalue " << eig.values[j];
      fail(ErrorCode::domain_error, os.str());
    }
    sum += value;
  }
  return sum;
}

ComplexMatrix matrix_function(const ComplexMatrix& m,
                              const std::function<double(double)>& f) {
  HermitianEig eig = eig_hermitian(m);
  RealVector mapped(eig.values.size());
  for (Eigen::Index j = 0; j < eig.values.size(); ++j) {
    double value = f(eig.values[j]);
    if (!std::isfinite(value)) {
      fail(ErrorCode::domain_error, "matrix_function: f undefined on spectrum");
    }
    mapped[j] = value;
  }
  return hermitian_part(eig.vectors * mapped.asDiagonal() *
                        eig.vectors.adjoint());
}

namespace {

void joint_eigenbasis_recurse(const std::vector<ComplexMatrix>& mats,
                              size_t level, ComplexMatrix& basis) {
  if (level >= mats.size()) return;
  const ComplexMatrix projected =
      hermitian_part(basis.adjoint() * mats[level] * basis);
  HermitianEig eig = eig_hermitian(projected);
  basis *= eig.vectors;
  const Eigen::Index n = eig.values.size();
  const double gap_tol =
      1e-8 * std::max(1.0, std::abs(eig.values.cwiseAbs().maxCoeff()));
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index stop = start + 1;
    while (stop < n && eig.values[stop] - eig.values[stop - 1] <= gap_tol) {
      ++stop;
    }
    if (stop - start > 1) {
      ComplexMatrix cluster = basis.middleCols(start, stop - start);
      joint_eigenbasis_recurse(mats, level + 1, cluster);
      basis.middleCols(start, stop - start) = cluster;
    }
    start = stop;
  }
}

}  // namespace

ComplexMatrix joint_eigenbasis(const std::vector<ComplexMatrix>& mats) {
  if (mats.empty()) {
    fail(ErrorCode::bad_argument, "joint_eigenbasis: no matrices");
  }
  const Eigen::Index n = mats.front().rows();
  ComplexMatrix basis = ComplexMatrix::Identity(n, n);
  joint_eigenbasis_recurse(mats, 0, basis);
  return basis;
}

double g_bose(double x) {
  if (x <= 0.0) return 0.0;
  return (x + 1.0) * std::log1p(x) - x * std::log(x);
}

double g_bose_prime(double x) {
  return std::log1p(1.0 / x);
}

}  // namespace bgc
