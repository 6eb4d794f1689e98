#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "bgc/fock.hpp"
#include "bgc/optimizers.hpp"
#include "support.hpp"

using namespace bgc;
using namespace bgc::fock;
using test_support::Rng;

namespace {

using Complex = std::complex<double>;

const double kLn2 = std::log(2.0);

Complex mean_of(const FockDensity& rho) {
  Complex acc(0.0, 0.0);
  for (int m = 0; m + 1 <= rho.cutoff(); ++m) {
    acc += std::sqrt(static_cast<double>(m + 1)) * rho.matrix(m + 1, m);
  }
  return acc;  // Tr[rho a] = sum_m sqrt(m+1) rho[m+1, m]
}

double photon_number_of(const FockDensity& rho) {
  double acc = 0.0;
  for (int n = 0; n <= rho.cutoff(); ++n) {
    acc += n * rho.matrix(n, n).real();
  }
  return acc;
}

double entropy_of(const FockDensity& rho) {
  double h = 0.0;
  for (double lambda : spectrum_of(rho)) {
    if (lambda > 1e-15) h -= lambda * std::log(lambda);
  }
  return h;
}

OneModeFactor covariant_factor(double k, double mu) {
  return {k, mu, FactorRole::active, Variant::covariant};
}

OneModeFactor contravariant_factor(double k, double mu) {
  return {k, mu, FactorRole::active, Variant::contravariant};
}

GaussianChannel scalar_channel(double k, double mu, Variant variant) {
  return {variant, ComplexMatrix::Constant(1, 1, k),
          ComplexMatrix::Constant(1, 1, mu)};
}

}  // namespace

TEST_CASE("coherent amplitudes and overlaps") {
  FockPure vac = coherent_fock(0.0, 10);
  CHECK(vac.amplitudes[0].real() == doctest::Approx(1.0));
  CHECK(vac.amplitudes.tail(10).norm() == doctest::Approx(0.0));

  FockPure one = coherent_fock(1.0, 30);
  CHECK(one.amplitudes.squaredNorm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(one.amplitudes[3].real() ==
        doctest::Approx(std::exp(-0.5) / std::sqrt(6.0)).epsilon(1e-12));

  Complex w(0.7, -0.3), v(-0.2, 0.5);
  FockPure cw = coherent_fock(w, 40);
  FockPure cv = coherent_fock(v, 40);
  CHECK(std::norm(cw.amplitudes.dot(cv.amplitudes)) ==
        doctest::Approx(std::exp(-std::norm(w - v))).epsilon(1e-9));

  CHECK_THROWS_AS(coherent_fock(Complex(4.0, 0.0), 10), Error);
}

TEST_CASE("gaussian_fock produces the geometric thermal spectrum") {
  FockDensity th = gaussian_fock(1.0, 0.0, 60);
  auto spec = spectrum_of(th);
  CHECK(spec[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(spec[1] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(entropy_of(th) == doctest::Approx(g_bose(1.0)).epsilon(1e-9));

  FockDensity displaced = gaussian_fock(0.4, Complex(1.0, -0.5), 40);
  CHECK(mean_of(displaced).real() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(mean_of(displaced).imag() == doctest::Approx(-0.5).epsilon(1e-9));
  // displacement is unitary: spectrum unchanged
  auto disp_spec = spectrum_of(displaced);
  auto base_spec = spectrum_of(gaussian_fock(0.4, 0.0, 40));
  for (int i = 0; i < 5; ++i) {
    CHECK(disp_spec[i] == doctest::Approx(base_spec[i]).epsilon(1e-9));
  }
}

TEST_CASE("identity factor acts trivially") {
  Rng rng(179);
  FockPure psi = haar_random_pure(12, 7);
  FockDensity rho = pure_to_density(psi);
  FockDensity out = apply_one_mode(covariant_factor(1.0, 0.0), rho);
  CHECK((out.matrix - rho.matrix).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("extreme attenuator maps vacuum to vacuum") {
  FockDensity vac = pure_to_density(fock_basis(0, 10));
  FockDensity out = apply_one_mode(covariant_factor(0.6, 0.32), vac);
  CHECK(out.matrix(0, 0).real() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(out.matrix.trace().real() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("extreme amplifier on vacuum gives the geometric spectrum") {
  FockDensity vac = pure_to_density(fock_basis(0, 2));
  FockDensity out =
      apply_one_mode(covariant_factor(std::sqrt(2.0), 0.5), vac);
  auto spec = spectrum_of(out);
  for (int n = 0; n < 8; ++n) {
    CHECK(spec[static_cast<size_t>(n)] ==
          doctest::Approx(std::pow(0.5, n + 1)).epsilon(1e-7));
  }
}

TEST_CASE("attenuator on a coherent state matches the closed form") {
  Complex w(2.0, 0.0);
  FockDensity in = pure_to_density(coherent_fock(w, 40));
  FockDensity out = apply_one_mode(covariant_factor(0.6, 0.32), in);
  CHECK(mean_of(out).real() == doctest::Approx(1.2).epsilon(1e-9));
  CHECK(mean_of(out).imag() == doctest::Approx(0.0));
  // output stays pure (coherent): top eigenvalue 1
  CHECK(spectrum_of(out)[0] == doctest::Approx(1.0).epsilon(1e-9));

  GaussianState closed = apply(scalar_channel(0.6, 0.32, Variant::covariant),
                               coherent(ComplexVector::Constant(1, w)));
  CHECK(closed.mean[0].real() == doctest::Approx(1.2));
  CHECK(closed.corr(0, 0).real() == doctest::Approx(0.5));
}

TEST_CASE("contravariant factor conjugates the mean (sign oracle)") {
  const double k = 0.8;
  const double mu = 0.5 * (1.0 + k * k);
  Complex w(0.9, 0.4);
  FockDensity in = pure_to_density(coherent_fock(w, 30));
  FockDensity out = apply_one_mode(contravariant_factor(k, mu), in);

  GaussianState closed = apply(scalar_channel(k, mu, Variant::contravariant),
                               coherent(ComplexVector::Constant(1, w)));
  // the Fock dilation settles the sign convention: mean -> +k conj(w)
  CHECK(mean_of(out).real() ==
        doctest::Approx(closed.mean[0].real()).epsilon(1e-7));
  CHECK(mean_of(out).imag() ==
        doctest::Approx(closed.mean[0].imag()).epsilon(1e-7));
  CHECK(mean_of(out).real() == doctest::Approx(k * w.real()).epsilon(1e-7));
  CHECK(mean_of(out).imag() == doctest::Approx(-k * w.imag()).epsilon(1e-7));

  const double occupation_out = closed.corr(0, 0).real() - 0.5;
  CHECK(photon_number_of(out) ==
        doctest::Approx(occupation_out + std::norm(closed.mean[0]))
            .epsilon(1e-7));
}

TEST_CASE("oracle spectra match the Gaussian closed form across factors") {
  for (const auto& factor :
       {covariant_factor(0.7, 0.5 * (1 - 0.49) + 0.4),
        covariant_factor(1.3, 0.5 * (1.69 - 1.0) + 0.25),
        contravariant_factor(0.9, 0.5 * (1 + 0.81) + 0.3)}) {
    const double nu_in = 0.7;
    FockDensity in = gaussian_fock(nu_in, 0.0, 30);
    FockDensity out = apply_one_mode(factor, in);

    GaussianChannel c = scalar_channel(factor.k, factor.mu, factor.variant);
    GaussianState closed_in = vacuum(1);
    closed_in.corr(0, 0) = nu_in + 0.5;
    GaussianState closed_out = apply(c, closed_in);
    auto expected = spectrum(closed_out, 12);
    auto got = spectrum_of(out);
    for (size_t i = 0; i < expected.size(); ++i) {
      CHECK(got[i] == doctest::Approx(expected[i]).epsilon(1e-6));
    }
  }
}

TEST_CASE("complementary outputs share the nonzero spectrum (Lemma L1)") {
  Rng rng(181);
  for (double k : {0.3, 0.7}) {
    OneModeFactor factor = covariant_factor(k, 0.5 * (1.0 - k * k));
    for (int trial = 0; trial < 10; ++trial) {
      FockPure psi = haar_random_pure(18, 1000 + trial);
      FockDensity direct = apply_one_mode(factor, pure_to_density(psi));
      FockDensity env = complementary_output(factor, psi);
      auto a = spectrum_of(direct);
      auto b = spectrum_of(env);
      for (size_t i = 0; i < 19; ++i) {
        const double da = i < a.size() ? a[i] : 0.0;
        const double db = i < b.size() ? b[i] : 0.0;
        CHECK(da == doctest::Approx(db).epsilon(1e-7));
      }
    }
  }
  // amplifier branch
  OneModeFactor amp = covariant_factor(1.4, 0.5 * (1.96 - 1.0));
  FockPure psi = haar_random_pure(14, 77);
  auto a = spectrum_of(apply_one_mode(amp, pure_to_density(psi)));
  auto b = spectrum_of(complementary_output(amp, psi));
  for (size_t i = 0; i < 30; ++i) {
    const double da = i < a.size() ? a[i] : 0.0;
    const double db = i < b.size() ? b[i] : 0.0;
    CHECK(da == doctest::Approx(db).epsilon(1e-7));
  }
}

TEST_CASE("attenuator on |1> splits (k^2, 1-k^2) across both outputs") {
  OneModeFactor factor = covariant_factor(0.6, 0.32);
  FockPure one = fock_basis(1, 10);
  auto direct = spectrum_of(apply_one_mode(factor, pure_to_density(one)));
  auto env = spectrum_of(complementary_output(factor, one));
  CHECK(direct[0] == doctest::Approx(0.64).epsilon(1e-9));
  CHECK(direct[1] == doctest::Approx(0.36).epsilon(1e-9));
  CHECK(env[0] == doctest::Approx(0.64).epsilon(1e-9));
  CHECK(env[1] == doctest::Approx(0.36).epsilon(1e-9));
}

TEST_CASE("coherent inputs stay pure on both sides of the dilation") {
  OneModeFactor factor = covariant_factor(0.6, 0.32);
  FockPure coh = coherent_fock(Complex(0.8, -0.6), 30);
  CHECK(spectrum_of(apply_one_mode(factor, pure_to_density(coh)))[0] ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(spectrum_of(complementary_output(factor, coh))[0] ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("tr_f_output closed values") {
  FockDensity vac = pure_to_density(fock_basis(0, 2));
  CHECK(tr_f_output(covariant_factor(0.6, 0.32), vac,
                    named_function("neg_x_log_x")) ==
        doctest::Approx(0.0).epsilon(1e-10));
  CHECK(tr_f_output(covariant_factor(std::sqrt(2.0), 0.5), vac,
                    named_function("neg_x_sq")) ==
        doctest::Approx(-1.0 / 3.0).epsilon(1e-7));
  CHECK(tr_f_output(covariant_factor(std::sqrt(2.0), 0.5), vac,
                    named_function("neg_x_log_x")) ==
        doctest::Approx(2.0 * kLn2).epsilon(1e-6));
}

TEST_CASE("optimizer witness: vacuum wins on sampled inputs") {
  WitnessReport rep = optimizer_witness(covariant_factor(std::sqrt(2.0), 0.5),
                                        "neg_x_sq", 60, 4242, 16);
  CHECK(rep.pass);
  CHECK(rep.vacuum_value == doctest::Approx(-1.0 / 3.0).epsilon(1e-6));
  CHECK(rep.sample_min >= rep.vacuum_value - 1e-9);
  CHECK(rep.argmin_coherent_fidelity <= 1.0 + 1e-12);

  WitnessReport att = optimizer_witness(covariant_factor(0.6, 0.32),
                                        "neg_x_log_x", 40, 99, 16);
  CHECK(att.pass);
  CHECK(att.vacuum_value == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(att.sample_min >= -1e-9);

  // composite factor: attenuation into amplification
  WitnessReport comp = optimizer_witness(covariant_factor(1.0, 0.5),
                                         "neg_x_sq", 40, 7, 14);
  CHECK(comp.pass);

  WitnessReport p15 = optimizer_witness(covariant_factor(std::sqrt(2.0), 0.5),
                                        "neg_x_p15", 40, 11, 14);
  CHECK(p15.pass);

  CHECK_THROWS_AS(optimizer_witness(contravariant_factor(1.0, 1.0),
                                    "neg_x_sq", 5, 1, 8),
                  Error);
}

TEST_CASE("witness reports are deterministic in the seed") {
  WitnessReport a = optimizer_witness(covariant_factor(0.8, 0.18),
                                      "neg_x_sq", 25, 31337, 12);
  WitnessReport b = optimizer_witness(covariant_factor(0.8, 0.18),
                                      "neg_x_sq", 25, 31337, 12);
  CHECK(a.sample_min == b.sample_min);
  CHECK(a.argmin_trial == b.argmin_trial);
}

TEST_CASE("majorization") {
  FockDensity pure = pure_to_density(haar_random_pure(8, 3));
  FockDensity mixed = gaussian_fock(0.8, 0.0, 30);
  CHECK(majorizes(pure, mixed, 1e-12));
  CHECK(majorizes(mixed, mixed, 1e-12));
  CHECK_FALSE(majorizes(mixed, pure, 1e-9));

  // amplifier output on vacuum majorizes the output on |1>
  OneModeFactor amp = covariant_factor(std::sqrt(2.0), 0.5);
  FockDensity out_vac =
      apply_one_mode(amp, pure_to_density(fock_basis(0, 4)));
  FockDensity out_one =
      apply_one_mode(amp, pure_to_density(fock_basis(1, 4)));
  CHECK(majorizes(out_vac, out_one, 1e-9));
}

TEST_CASE("husimi closed forms") {
  FockDensity vac = pure_to_density(fock_basis(0, 25));
  Complex z(0.7, 0.2);
  CHECK(husimi(vac, z) == doctest::Approx(std::exp(-std::norm(z)))
                              .epsilon(1e-10));

  Complex w(0.5, -0.4);
  FockDensity coh = pure_to_density(coherent_fock(w, 25));
  CHECK(husimi(coh, z) == doctest::Approx(std::exp(-std::norm(z - w)))
                              .epsilon(1e-8));

  FockDensity one = pure_to_density(fock_basis(1, 25));
  CHECK(husimi(one, z) ==
        doctest::Approx(std::norm(z) * std::exp(-std::norm(z)))
            .epsilon(1e-10));
}

TEST_CASE("wehrl functional closed values") {
  FockDensity coh = pure_to_density(coherent_fock(Complex(0.6, 0.3), 30));
  CHECK(wehrl_functional(coh, named_function("neg_x_log_x"), 48, 48) ==
        doctest::Approx(1.0).epsilon(1e-4));
  CHECK(wehrl_functional(coh, named_function("identity"), 48, 48) ==
        doctest::Approx(1.0).epsilon(1e-5));

  // Fock |1>: integral of -t e^{-t} ln(t e^{-t}) equals 1 + gamma
  const double euler_gamma = 0.5772156649015329;
  FockDensity one = pure_to_density(fock_basis(1, 20));
  CHECK(wehrl_functional(one, named_function("neg_x_log_x"), 192, 192) ==
        doctest::Approx(1.0 + euler_gamma).epsilon(1e-5));
  CHECK(wehrl_functional(one, named_function("identity"), 48, 48) ==
        doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("random states never beat the coherent Wehrl value") {
  FockDensity coh = pure_to_density(coherent_fock(0.0, 24));
  const double coherent_value =
      wehrl_functional(coh, named_function("neg_x_log_x"), 48, 48);
  for (int trial = 0; trial < 10; ++trial) {
    FockDensity rho = pure_to_density(haar_random_pure(24, 555 + trial));
    CHECK(wehrl_functional(rho, named_function("neg_x_log_x"), 192, 192) >=
          coherent_value - 1e-5);
  }

  // same ordering for the other concave test functions
  for (const char* name : {"neg_x_sq", "neg_x_p15"}) {
    auto f = named_function(name);
    const double base = wehrl_functional(coh, f, 192, 192);
    for (int trial = 0; trial < 4; ++trial) {
      FockDensity rho = pure_to_density(haar_random_pure(20, 9000 + trial));
      CHECK(wehrl_functional(rho, f, 192, 192) >= base - 1e-5);
    }
  }
}

TEST_CASE("Berezin-Lieb sandwich around a thermal state") {
  // sigma = integral of (1/N) e^{-|z|^2/N} rho_z d^2z/pi is thermal with
  // occupation N; lower density gives 1 + ln N, upper (Husimi) side is
  // the Wehrl integral, and Tr f(sigma) = g(N) sits between.
  const double occupation = 1.0;
  FockDensity th = gaussian_fock(occupation, 0.0, 50);
  const double lower = 1.0 + std::log(occupation);
  const double upper =
      wehrl_functional(th, named_function("neg_x_log_x"), 64, 64);
  const double exact = g_bose(occupation);
  CHECK(lower <= exact + 1e-9);
  CHECK(exact <= upper + 1e-9);
  CHECK(upper == doctest::Approx(1.0 + std::log(occupation + 1.0))
                     .epsilon(1e-5));
}

TEST_CASE("density validation catches broken inputs") {
  FockDensity bad{0.5 * ComplexMatrix::Identity(3, 3)};
  CHECK_THROWS_AS(require_density(bad, 1e-9), Error);
  OneModeFactor invalid = covariant_factor(1.0, -0.2);
  FockDensity vac = pure_to_density(fock_basis(0, 4));
  CHECK_THROWS_AS(apply_one_mode(invalid, vac), Error);
  OneModeFactor traced{0.0, 0.0, FactorRole::traced_out, Variant::covariant};
  CHECK_THROWS_AS(apply_one_mode(traced, vac), Error);
}
