#pragma once

#include <random>

#include "bgc/channels.hpp"

namespace test_support {

using Rng = std::mt19937_64;
using bgc::ComplexMatrix;
using bgc::ComplexVector;

inline ComplexMatrix random_matrix(int rows, int cols, Rng& rng,
                                   double scale = 1.0) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      m(r, c) = std::complex<double>(gauss(rng), gauss(rng)) * scale;
    }
  }
  return m;
}

inline ComplexVector random_vector(int n, Rng& rng, double scale = 1.0) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexVector v(n);
  for (int i = 0; i < n; ++i) {
    v[i] = std::complex<double>(gauss(rng), gauss(rng)) * scale;
  }
  return v;
}

inline ComplexMatrix random_hermitian(int n, Rng& rng, double scale = 1.0) {
  ComplexMatrix a = random_matrix(n, n, rng, scale);
  return 0.5 * (a + a.adjoint());
}

inline ComplexMatrix random_psd(int n, Rng& rng, double scale = 1.0) {
  ComplexMatrix a = random_matrix(n, n, rng, scale);
  return (a * a.adjoint()) / static_cast<double>(n);
}

inline ComplexMatrix random_unitary(int n, Rng& rng) {
  Eigen::HouseholderQR<ComplexMatrix> qr(random_matrix(n, n, rng));
  ComplexMatrix q = qr.householderQ();
  return q;
}

/// Valid channel with noise at (extreme) or strictly above (otherwise)
/// the variant's minimal solution.
inline bgc::GaussianChannel random_valid_channel(int modes_in, int modes_out,
                                                 bgc::Variant variant,
                                                 Rng& rng,
                                                 bool extreme = false) {
  bgc::GaussianChannel c;
  c.variant = variant;
  c.K = random_matrix(modes_in, modes_out, rng,
                      0.7 / std::sqrt(static_cast<double>(modes_in)));
  c.mu = bgc::minimal_noise(variant, c.K);
  if (!extreme) {
    c.mu = bgc::hermitian_part(c.mu + random_psd(modes_out, rng, 0.5));
  }
  return c;
}

/// Channel whose K^dag K and mu share a common eigenbasis. The shape
/// cases modes_in != modes_out embed a rectangular diagonal gain block.
inline bgc::GaussianChannel random_commuting_channel(
    int modes_in, int modes_out, bgc::Variant variant, Rng& rng,
    bool extreme_noise = false) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const int active = std::min(modes_in, modes_out);
  ComplexMatrix w = random_unitary(modes_out, rng);   // output-side basis
  ComplexMatrix va = random_unitary(modes_in, rng);   // input-side basis
  ComplexMatrix kd = ComplexMatrix::Zero(modes_in, modes_out);
  Eigen::VectorXd noises(modes_out);
  for (int j = 0; j < modes_out; ++j) {
    const double k = j < active ? 0.2 + 1.6 * unif(rng) : 0.0;
    if (j < active) kd(j, j) = k;
    const double bound = variant == bgc::Variant::contravariant
                             ? 0.5 * (1.0 + k * k)
                             : 0.5 * std::abs(1.0 - k * k);
    noises[j] = bound + (extreme_noise ? 0.0 : 0.8 * unif(rng));
  }
  bgc::GaussianChannel c;
  c.variant = variant;
  c.K = va * kd * w.adjoint();
  c.mu = bgc::hermitian_part(w * noises.cast<std::complex<double>>()
                                     .asDiagonal() *
                             w.adjoint());
  return c;
}

}  // namespace test_support
