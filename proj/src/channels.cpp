#include "bgc/channels.hpp"

#include <cmath>

namespace bgc {

const char* variant_name(Variant v) {
  return v == Variant::covariant ? "covariant" : "contravariant";
}

void require_shape(const GaussianChannel& c) {
  if (c.K.rows() < 1 || c.K.cols() < 1) {
    fail(ErrorCode::dimension_mismatch, "channel has empty K");
  }
  if (c.mu.rows() != c.K.cols() || c.mu.cols() != c.K.cols()) {
    fail(ErrorCode::dimension_mismatch,
         "mu must be square of dimension modes_out");
  }
  require_hermitian(c.mu, 1e-9);
}

ComplexMatrix minimal_noise(Variant variant, const ComplexMatrix& K) {
  const int sb = static_cast<int>(K.cols());
  ComplexMatrix ktk = hermitian_part(K.adjoint() * K);
  ComplexMatrix eye = ComplexMatrix::Identity(sb, sb);
  if (variant == Variant::contravariant) {
    return hermitian_part(0.5 * (eye + ktk));
  }
  return 0.5 * matrix_function(eye - ktk,
                               [](double x) { return std::abs(x); });
}

bool is_valid_channel(const GaussianChannel& c, double tol) {
  require_shape(c);
  const int sb = c.modes_out();
  ComplexMatrix ktk = hermitian_part(c.K.adjoint() * c.K);
  ComplexMatrix eye = ComplexMatrix::Identity(sb, sb);
  if (c.variant == Variant::contravariant) {
    return loewner_geq(c.mu, 0.5 * (eye + ktk), tol);
  }
  ComplexMatrix gap = 0.5 * (eye - ktk);
  return loewner_geq(c.mu, gap, tol) && loewner_geq(c.mu, -gap, tol);
}

void require_valid_channel(const GaussianChannel& c, double tol) {
  if (!is_valid_channel(c, tol)) {
    fail(ErrorCode::invalid_channel,
         "channel violates the complete-positivity inequality");
  }
}

GaussianChannel make_attenuator(const ComplexMatrix& K) {
  const int sb = static_cast<int>(K.cols());
  ComplexMatrix ktk = hermitian_part(K.adjoint() * K);
  ComplexMatrix eye = ComplexMatrix::Identity(sb, sb);
  if (!loewner_geq(eye, ktk, kChannelTol)) {
    fail(ErrorCode::gain_too_high, "attenuator requires K^dag K <= I");
  }
  return {Variant::covariant, K, hermitian_part(0.5 * (eye - ktk))};
}

GaussianChannel make_amplifier(const ComplexMatrix& K) {
  const int sb = static_cast<int>(K.cols());
  ComplexMatrix ktk = hermitian_part(K.adjoint() * K);
  ComplexMatrix eye = ComplexMatrix::Identity(sb, sb);
  if (!loewner_geq(ktk, eye, kChannelTol)) {
    fail(ErrorCode::gain_too_low, "amplifier requires K^dag K >= I");
  }
  return {Variant::covariant, K, hermitian_part(0.5 * (ktk - eye))};
}

GaussianChannel make_contravariant(const ComplexMatrix& K) {
  return {Variant::contravariant, K, minimal_noise(Variant::contravariant, K)};
}

bool is_extreme(const GaussianChannel& c, double tol) {
  require_valid_channel(c);
  ComplexMatrix mu_min = minimal_noise(c.variant, c.K);
  return (c.mu - mu_min).cwiseAbs().maxCoeff() <= tol;
}

DisplacementImage dual_on_displacement(const GaussianChannel& c) {
  require_valid_channel(c);
  return {c.K, c.mu, c.variant == Variant::contravariant};
}

GaussianState apply(const GaussianChannel& c, const GaussianState& s) {
  require_valid_channel(c);
  require_valid_state(s);
  if (s.modes() != c.modes_in()) {
    fail(ErrorCode::mode_mismatch, "apply: state has wrong mode count");
  }
  GaussianState out;
  if (c.variant == Variant::covariant) {
    out.mean = c.K.adjoint() * s.mean;
    out.corr = hermitian_part(c.K.adjoint() * s.corr * c.K + c.mu);
  } else {
    out.mean = c.K.adjoint() * s.mean.conjugate();
    out.corr = hermitian_part(c.K.adjoint() * s.corr.conjugate() * c.K + c.mu);
  }
  return out;
}

GaussianChannel compose(const GaussianChannel& outer,
                        const GaussianChannel& inner) {
  require_valid_channel(outer);
  require_valid_channel(inner);
  if (inner.modes_out() != outer.modes_in()) {
    fail(ErrorCode::mode_mismatch,
         "compose: inner output modes must match outer input modes");
  }
  GaussianChannel out;
  const bool outer_contra = outer.variant == Variant::contravariant;
  out.variant = (inner.variant != outer.variant) ? Variant::contravariant
                                                 : Variant::covariant;
  if (outer_contra) {
    // Conjugation of the outer dual acts on everything the inner
    // channel contributes.
    out.K = inner.K.conjugate() * outer.K;
    out.mu = hermitian_part(outer.K.adjoint() * inner.mu.conjugate() * outer.K +
                            outer.mu);
  } else {
    out.K = inner.K * outer.K;
    out.mu =
        hermitian_part(outer.K.adjoint() * inner.mu * outer.K + outer.mu);
  }
  return out;
}

bool is_injective(const GaussianChannel& c, double tol) {
  require_valid_channel(c);
  ComplexMatrix kkt = hermitian_part(c.K * c.K.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(kkt,
                                                      Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff() > tol;
}

GaussianChannel tensor(const GaussianChannel& c1, const GaussianChannel& c2) {
  require_shape(c1);
  require_shape(c2);
  if (c1.variant != c2.variant) {
    fail(ErrorCode::mixed_variant,
         "tensor: channels must share the same variant");
  }
  const int ra = c1.modes_in(), rb = c2.modes_in();
  const int ca = c1.modes_out(), cb = c2.modes_out();
  GaussianChannel out;
  out.variant = c1.variant;
  out.K = ComplexMatrix::Zero(ra + rb, ca + cb);
  out.K.topLeftCorner(ra, ca) = c1.K;
  out.K.bottomRightCorner(rb, cb) = c2.K;
  out.mu = ComplexMatrix::Zero(ca + cb, ca + cb);
  out.mu.topLeftCorner(ca, ca) = c1.mu;
  out.mu.bottomRightCorner(cb, cb) = c2.mu;
  return out;
}

}  // namespace bgc
