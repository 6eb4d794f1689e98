#pragma once

#include <vector>

#include "bgc/channels.hpp"

namespace bgc {

/// Two-stage factorization of a valid channel: an extreme attenuator
/// followed by an extreme amplifier (covariant source) or an extreme
/// contravariant channel (contravariant source).
struct Decomposition {
  GaussianChannel attenuator;    // A -> B, first stage
  GaussianChannel second_stage;  // B -> B, extreme
};

enum class FactorRole { active, padded_vacuum, traced_out };

const char* factor_role_name(FactorRole role);

/// One-mode channel factor of a diagonalized multimode channel.
/// Covariant validity: mu >= |1 - k^2|/2; contravariant: mu >= (1 + k^2)/2.
struct OneModeFactor {
  double k = 1.0;
  double mu = 0.0;
  FactorRole role = FactorRole::active;
  Variant variant = Variant::covariant;
};

bool factor_is_valid(const OneModeFactor& f, double tol = kChannelTol);

/// Mode-wise normal form K = V_A K_d V_B, mu = V_B^dag mu_d V_B with
/// unitary V_A, V_B and one-mode factors along the diagonal.
struct Diagonalization {
  ComplexMatrix pre_unitary;   // V_A, modes_in x modes_in
  ComplexMatrix post_unitary;  // V_B, modes_out x modes_out
  std::vector<OneModeFactor> factors;
};

/// Attenuator-first factorization of any valid channel.
Decomposition decompose(const GaussianChannel& c);

/// Complementary channel of an extreme attenuator (another extreme
/// attenuator with gain sqrt(I - K K^dag)) or of an extreme amplifier
/// (an extreme contravariant channel with gain sqrt(conj(K K^dag) - I)).
GaussianChannel complement(const GaussianChannel& c);

/// Symbol of the two-mode-block dilation unitary: for an extreme
/// attenuator the unitary matrix [[K, sqrt(I-KK^dag)],
/// [sqrt(I-K^dag K), -K^dag]]; for an extreme amplifier the block matrix
/// V1 preserving the indefinite form diag(I_B, -I_A).
ComplexMatrix dilation_unitary_symbol(const GaussianChannel& c);

/// Simultaneous diagonalization of K^dag K and mu; requires the two to
/// commute within tolerance. Factor roles encode the rectangular cases:
/// extra output modes are padded, extra input modes are traced out.
Diagonalization diagonalize(const GaussianChannel& c);

/// Rebuild (K, mu) from a diagonalization; inverse of `diagonalize` up
/// to the unitary freedom, used by tests and serialization consumers.
GaussianChannel reassemble(const Diagonalization& d);

}  // namespace bgc
