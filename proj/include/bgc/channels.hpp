#pragma once

#include "bgc/states.hpp"

namespace bgc {

enum class Variant { covariant, contravariant };

const char* variant_name(Variant v);

/// Bosonic Gaussian channel commuting (covariant) or anti-commuting
/// (contravariant) with the gauge group.
///
/// `K` is stored exactly as it appears inside the dual action on
/// displacement symbols: it maps output-side symbols to input-side ones,
/// so K has modes_in rows and modes_out columns. `mu` is the Hermitian
/// damping form on the output side (modes_out x modes_out).
///
/// Covariant validity:      mu >= +-(I - K^dag K)/2
/// Contravariant validity:  mu >=   (I + K^dag K)/2
struct GaussianChannel {
  Variant variant = Variant::covariant;
  ComplexMatrix K;
  ComplexMatrix mu;

  int modes_in() const { return static_cast<int>(K.rows()); }
  int modes_out() const { return static_cast<int>(K.cols()); }
};

/// Dual action on a displacement symbol z: either D(Kz) or D(-conj(Kz)),
/// damped by exp(-z^dag mu z).
struct DisplacementImage {
  ComplexMatrix arg_matrix;
  ComplexMatrix damping;
  bool conjugated = false;
};

inline constexpr double kChannelTol = 1e-9;

void require_shape(const GaussianChannel& c);

/// Minimal admissible noise for the given variant and gain matrix:
/// |I - K^dag K|/2 (covariant, spectral absolute value) or
/// (I + K^dag K)/2 (contravariant).
ComplexMatrix minimal_noise(Variant variant, const ComplexMatrix& K);

bool is_valid_channel(const GaussianChannel& c, double tol = kChannelTol);

void require_valid_channel(const GaussianChannel& c, double tol = kChannelTol);

/// Extreme attenuator: requires K^dag K <= I, sets mu = (I - K^dag K)/2.
GaussianChannel make_attenuator(const ComplexMatrix& K);

/// Extreme amplifier: requires K^dag K >= I, sets mu = (K^dag K - I)/2.
GaussianChannel make_amplifier(const ComplexMatrix& K);

/// Extreme contravariant channel: mu = (I + K^dag K)/2, any K admissible.
GaussianChannel make_contravariant(const ComplexMatrix& K);

/// True iff mu equals the variant's minimal solution within tol. For
/// covariant K with mixed spectrum the comparison is against the
/// blockwise minimum |I - K^dag K|/2 in the eigenbasis of K^dag K.
bool is_extreme(const GaussianChannel& c, double tol = kChannelTol);

DisplacementImage dual_on_displacement(const GaussianChannel& c);

/// Schroedinger action on a Gaussian state.
///
/// Covariant:      corr' = K^dag corr K + mu,        mean' = K^dag mean
/// Contravariant:  corr' = K^dag conj(corr) K + mu,  mean' = K^dag conj(mean)
///
/// The contravariant mean map follows from the characteristic function of
/// D(-conj(Kz)) applied to a displaced Gaussian; it is cross-checked
/// against the Fock-space dilation in the test suite.
GaussianState apply(const GaussianChannel& c, const GaussianState& s);

/// Concatenation outer o inner (inner acts first).
GaussianChannel compose(const GaussianChannel& outer,
                        const GaussianChannel& inner);

/// Injectivity of the channel as a map on states: K K^dag > 0.
bool is_injective(const GaussianChannel& c, double tol = kChannelTol);

/// Tensor product of same-variant channels (block-diagonal K and mu).
GaussianChannel tensor(const GaussianChannel& c1, const GaussianChannel& c2);

}  // namespace bgc
