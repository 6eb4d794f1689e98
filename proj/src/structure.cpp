#include "bgc/structure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace bgc {

const char* factor_role_name(FactorRole role) {
  switch (role) {
    case FactorRole::active: return "active";
    case FactorRole::padded_vacuum: return "padded_vacuum";
    case FactorRole::traced_out: return "traced_out";
  }
  return "unknown";
}

bool factor_is_valid(const OneModeFactor& f, double tol) {
  if (f.role == FactorRole::traced_out) return true;
  if (f.k < 0.0) return false;
  const double k2 = f.k * f.k;
  const double bound = f.variant == Variant::contravariant
                           ? 0.5 * (1.0 + k2)
                           : 0.5 * std::abs(1.0 - k2);
  return f.mu >= bound - tol;
}

namespace {

// Square root and pseudo-inverse square root of a PSD matrix from one
// eigendecomposition, so the rank cut applies to the eigenvalues of the
// squared matrix. Splitting this across sqrt_psd and pinv_psd would let
// a structural zero (~1e-16) surface as ~1e-8 in the root and survive
// the inverse's rank tolerance.
struct RootAndInverse {
  ComplexMatrix root;
  ComplexMatrix inverse_root;
};

RootAndInverse split_psd_root(const ComplexMatrix& m) {
  HermitianEig eig = eig_hermitian(m);
  const double lambda_max = std::max(eig.values.maxCoeff(), 0.0);
  const double cut = kPsdClampTol * std::max(lambda_max, 1.0);
  RealVector root(eig.values.size()), inv(eig.values.size());
  for (Eigen::Index j = 0; j < eig.values.size(); ++j) {
    const double lambda = eig.values[j];
    if (lambda < -cut) {
      fail(ErrorCode::not_psd, "decompose: negative second-stage gain block");
    }
    if (lambda > cut) {
      root[j] = std::sqrt(lambda);
      inv[j] = 1.0 / root[j];
    } else {
      root[j] = std::sqrt(std::max(lambda, 0.0));
      inv[j] = 0.0;
    }
  }
  return {hermitian_part(eig.vectors * root.asDiagonal() *
                         eig.vectors.adjoint()),
          hermitian_part(eig.vectors * inv.asDiagonal() *
                         eig.vectors.adjoint())};
}

}  // namespace

Decomposition decompose(const GaussianChannel& c) {
  require_valid_channel(c);
  const int sb = c.modes_out();
  ComplexMatrix ktk = hermitian_part(c.K.adjoint() * c.K);
  ComplexMatrix eye = ComplexMatrix::Identity(sb, sb);

  Decomposition d;
  if (c.variant == Variant::covariant) {
    // |K2|^2 = mu + (K^dag K + I)/2 >= I, so |K2| is invertible here.
    RootAndInverse k2 = split_psd_root(hermitian_part(c.mu + 0.5 * (ktk + eye)));
    d.second_stage = make_amplifier(k2.root);
    d.attenuator = make_attenuator(c.K * k2.inverse_root);
  } else {
    // |K2|^2 = mu + (K^dag K - I)/2 >= K^dag K, possibly singular.
    RootAndInverse k2 = split_psd_root(hermitian_part(c.mu + 0.5 * (ktk - eye)));
    d.second_stage = make_contravariant(k2.root);
    d.attenuator = make_attenuator((c.K * k2.inverse_root).conjugate());
  }
  return d;
}

namespace {

enum class ExtremeBranch { attenuator, amplifier };

ExtremeBranch classify_extreme(const GaussianChannel& c) {
  if (!is_extreme(c)) {
    fail(ErrorCode::not_extremal, "channel is not extreme");
  }
  if (c.variant == Variant::contravariant) {
    fail(ErrorCode::unsupported_branch,
         "only extreme attenuators and amplifiers are supported");
  }
  const int sb = c.modes_out();
  ComplexMatrix ktk = hermitian_part(c.K.adjoint() * c.K);
  ComplexMatrix eye_b = ComplexMatrix::Identity(sb, sb);
  if (loewner_geq(eye_b, ktk, kChannelTol)) return ExtremeBranch::attenuator;
  if (loewner_geq(ktk, eye_b, kChannelTol)) return ExtremeBranch::amplifier;
  fail(ErrorCode::unsupported_branch,
       "extreme channel with mixed gain spectrum has no single-branch "
       "complement");
}

ComplexMatrix amplifier_kkt_minus_eye(const GaussianChannel& c) {
  const int sa = c.modes_in();
  ComplexMatrix kkt = hermitian_part(c.K * c.K.adjoint());
  ComplexMatrix eye_a = ComplexMatrix::Identity(sa, sa);
  if (!loewner_geq(kkt, eye_a, kChannelTol)) {
    fail(ErrorCode::unsupported_branch,
         "amplifier dilation requires K K^dag >= I on the input side");
  }
  return hermitian_part(kkt - eye_a);
}

}  // namespace

GaussianChannel complement(const GaussianChannel& c) {
  const ExtremeBranch branch = classify_extreme(c);
  const int sa = c.modes_in();
  ComplexMatrix eye_a = ComplexMatrix::Identity(sa, sa);
  if (branch == ExtremeBranch::attenuator) {
    ComplexMatrix kkt = hermitian_part(c.K * c.K.adjoint());
    return make_attenuator(sqrt_psd(eye_a - kkt));
  }
  return make_contravariant(sqrt_psd(amplifier_kkt_minus_eye(c)).conjugate());
}

ComplexMatrix dilation_unitary_symbol(const GaussianChannel& c) {
  const ExtremeBranch branch = classify_extreme(c);
  const int sa = c.modes_in();
  const int sb = c.modes_out();
  ComplexMatrix ktk = hermitian_part(c.K.adjoint() * c.K);
  ComplexMatrix eye_a = ComplexMatrix::Identity(sa, sa);
  ComplexMatrix eye_b = ComplexMatrix::Identity(sb, sb);
  ComplexMatrix v(sa + sb, sb + sa);
  if (branch == ExtremeBranch::attenuator) {
    ComplexMatrix kkt = hermitian_part(c.K * c.K.adjoint());
    v.topLeftCorner(sa, sb) = c.K;
    v.topRightCorner(sa, sa) = sqrt_psd(eye_a - kkt);
    v.bottomLeftCorner(sb, sb) = sqrt_psd(eye_b - ktk);
    v.bottomRightCorner(sb, sa) = -c.K.adjoint();
  } else {
    v.topLeftCorner(sa, sb) = c.K;
    v.topRightCorner(sa, sa) = sqrt_psd(amplifier_kkt_minus_eye(c));
    v.bottomLeftCorner(sb, sb) = sqrt_psd(hermitian_part(ktk - eye_b));
    v.bottomRightCorner(sb, sa) = c.K.adjoint();
  }
  return v;
}

namespace {

// Extend a set of orthonormal columns (some unset) to a full unitary:
// missing columns get an orthonormal basis of the fixed columns'
// orthogonal complement.
ComplexMatrix complete_unitary(const ComplexMatrix& partial,
                               const std::vector<bool>& fixed) {
  const Eigen::Index n = partial.rows();
  ComplexMatrix u = partial;
  ComplexMatrix projector = ComplexMatrix::Identity(n, n);
  Eigen::Index missing = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (fixed[static_cast<size_t>(i)]) {
      projector -= u.col(i) * u.col(i).adjoint();
    } else {
      ++missing;
    }
  }
  if (missing == 0) return u;
  // Complement basis: eigenvectors of the projector with eigenvalue 1,
  // which arrive last in ascending order.
  HermitianEig eig = eig_hermitian(hermitian_part(projector));
  Eigen::Index next = n - missing;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (!fixed[static_cast<size_t>(j)]) u.col(j) = eig.vectors.col(next++);
  }
  return u;
}

}  // namespace

Diagonalization diagonalize(const GaussianChannel& c) {
  require_valid_channel(c);
  const int sa = c.modes_in();
  const int sb = c.modes_out();
  ComplexMatrix a = hermitian_part(c.K.adjoint() * c.K);
  ComplexMatrix m = hermitian_part(c.mu);

  ComplexMatrix comm = a * m - m * a;
  const double comm_scale = std::max(1.0, a.norm() * m.norm());
  if (comm.norm() > 1e-8 * comm_scale) {
    fail(ErrorCode::non_commuting, "K^dag K and mu do not commute");
  }

  ComplexMatrix w = joint_eigenbasis({a, m});

  // Gains and noises on the shared eigenbasis, sorted by descending gain
  // so the structurally-zero gains of the s_A < s_B case trail.
  std::vector<double> k2(sb), mu_d(sb);
  for (int j = 0; j < sb; ++j) {
    k2[j] = std::max((w.col(j).adjoint() * a * w.col(j))(0, 0).real(), 0.0);
    mu_d[j] = (w.col(j).adjoint() * m * w.col(j))(0, 0).real();
  }
  std::vector<int> order(sb);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return k2[i] > k2[j]; });
  ComplexMatrix w_sorted(sb, sb);
  std::vector<double> k2_s(sb), mu_s(sb);
  for (int j = 0; j < sb; ++j) {
    w_sorted.col(j) = w.col(order[j]);
    k2_s[j] = k2[order[j]];
    mu_s[j] = mu_d[order[j]];
  }

  Diagonalization d;
  d.post_unitary = w_sorted.adjoint();

  const int active = std::min(sa, sb);
  d.factors.reserve(static_cast<size_t>(std::max(sa, sb)));
  for (int j = 0; j < active; ++j) {
    d.factors.push_back({std::sqrt(k2_s[j]), mu_s[j], FactorRole::active,
                         c.variant});
  }
  for (int j = active; j < sb; ++j) {
    d.factors.push_back({0.0, mu_s[j], FactorRole::padded_vacuum, c.variant});
  }
  for (int j = active; j < sa; ++j) {
    d.factors.push_back({0.0, 0.0, FactorRole::traced_out, c.variant});
  }

  // V_A columns: normalized images K w_j for nonzero gains, completed to
  // an orthonormal basis elsewhere.
  ComplexMatrix m2 = c.K * w_sorted;  // sa x sb
  ComplexMatrix va = ComplexMatrix::Zero(sa, sa);
  std::vector<bool> known(static_cast<size_t>(sa), false);
  for (int j = 0; j < active; ++j) {
    double k = std::sqrt(k2_s[j]);
    if (k > 1e-12) {
      va.col(j) = m2.col(j) / k;
      known[static_cast<size_t>(j)] = true;
    }
  }
  d.pre_unitary = complete_unitary(va, known);
  return d;
}

GaussianChannel reassemble(const Diagonalization& d) {
  const int sa = static_cast<int>(d.pre_unitary.rows());
  const int sb = static_cast<int>(d.post_unitary.rows());
  ComplexMatrix kd = ComplexMatrix::Zero(sa, sb);
  ComplexMatrix mu_d = ComplexMatrix::Zero(sb, sb);
  Variant variant = Variant::covariant;
  int j = 0;
  for (const OneModeFactor& f : d.factors) {
    variant = f.variant;
    if (f.role == FactorRole::traced_out) continue;
    if (j >= sb) fail(ErrorCode::dimension_mismatch, "too many factors");
    if (f.role == FactorRole::active) kd(j, j) = f.k;
    mu_d(j, j) = f.mu;
    ++j;
  }
  GaussianChannel c;
  c.variant = variant;
  c.K = d.pre_unitary * kd * d.post_unitary;
  c.mu = hermitian_part(d.post_unitary.adjoint() * mu_d * d.post_unitary);
  return c;
}

}  // namespace bgc
