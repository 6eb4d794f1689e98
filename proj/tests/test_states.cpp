#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "bgc/states.hpp"
#include "support.hpp"

using namespace bgc;
using test_support::Rng;

namespace {

const double kLn2 = std::log(2.0);

GaussianState one_mode_thermal(double occupation) {
  GaussianState s = vacuum(1);
  s.corr(0, 0) = occupation + 0.5;
  return s;
}

// Brute-force spectrum oracle: enumerate occupation tuples up to a
// cutoff per mode and sort the product eigenvalues.
std::vector<double> spectrum_oracle(const std::vector<double>& nus,
                                    int per_mode_cutoff, int top_k) {
  std::vector<double> values{1.0};
  for (double nu : nus) {
    std::vector<double> levels;
    for (int n = 0; n <= per_mode_cutoff; ++n) {
      levels.push_back(std::pow(nu, n) / std::pow(nu + 1.0, n + 1));
    }
    std::vector<double> next;
    for (double v : values) {
      for (double l : levels) next.push_back(v * l);
    }
    values = std::move(next);
  }
  std::sort(values.begin(), values.end(), std::greater<double>());
  values.resize(static_cast<size_t>(top_k), 0.0);
  return values;
}

}  // namespace

TEST_CASE("vacuum and coherent constructors") {
  GaussianState v = vacuum(1);
  CHECK(v.mean.norm() == 0.0);
  CHECK(v.corr(0, 0).real() == doctest::Approx(0.5));
  CHECK(is_valid(v, 1e-9));
  CHECK(von_neumann_entropy(v) == doctest::Approx(0.0));

  GaussianState v2 = vacuum(2);
  CHECK((v2.corr - 0.5 * ComplexMatrix::Identity(2, 2)).norm() < 1e-15);

  ComplexVector w(1);
  w[0] = std::complex<double>(1.0, 2.0);
  GaussianState c = coherent(w);
  CHECK(c.mean[0] == w[0]);
  CHECK(c.corr(0, 0).real() == doctest::Approx(0.5));

  GaussianState c0 = coherent(ComplexVector::Zero(1));
  CHECK((c0.corr - vacuum(1).corr).norm() == 0.0);
}

TEST_CASE("validity") {
  CHECK(is_valid(vacuum(3), 1e-9));
  GaussianState bad = vacuum(1);
  bad.corr(0, 0) = 0.4;
  CHECK_FALSE(is_valid(bad, 1e-9));

  Rng rng(41);
  GaussianState ok = vacuum(3);
  ok.corr = hermitian_part(ok.corr + test_support::random_psd(3, rng));
  CHECK(is_valid(ok, 1e-9));
}

TEST_CASE("von Neumann entropy") {
  CHECK(von_neumann_entropy(one_mode_thermal(1.0)) ==
        doctest::Approx(2.0 * kLn2).epsilon(1e-12));

  // additivity over block-diagonal two-mode product states
  GaussianState two = vacuum(2);
  two.corr(0, 0) = 1.5;
  two.corr(1, 1) = 0.9;
  CHECK(von_neumann_entropy(two) ==
        doctest::Approx(g_bose(1.0) + g_bose(0.4)).epsilon(1e-12));

  GaussianState bad = vacuum(1);
  bad.corr(0, 0) = 0.3;
  CHECK_THROWS_AS(von_neumann_entropy(bad), Error);
}

TEST_CASE("Renyi entropy") {
  CHECK(renyi_entropy(vacuum(2), 2.0) == doctest::Approx(0.0));
  // nu = 1, p = 2: Tr rho^2 = 1/3
  CHECK(renyi_entropy(one_mode_thermal(1.0), 2.0) ==
        doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK_THROWS_AS(renyi_entropy(vacuum(1), 1.0), Error);
  CHECK_THROWS_AS(renyi_entropy(vacuum(1), 0.5), Error);
}

TEST_CASE("Renyi entropies increase to the entropy as p drops to 1") {
  GaussianState s = one_mode_thermal(1.0);
  const double h = von_neumann_entropy(s);
  double prev = 0.0;
  for (double p : {1.5, 1.1, 1.01, 1.001}) {
    const double r = renyi_entropy(s, p);
    CHECK(r <= h + 1e-12);
    CHECK(r >= prev - 1e-12);
    prev = r;
  }
  CHECK(std::abs(renyi_entropy(s, 1.001) - h) < 1e-3);
  // The p -> 1 gap scales with the spectral log-variance, so a tight
  // tolerance needs a near-pure state.
  GaussianState nearly_pure = one_mode_thermal(0.003);
  CHECK(std::abs(renyi_entropy(nearly_pure, 1.001) -
                 von_neumann_entropy(nearly_pure)) < 1e-4);
}

TEST_CASE("spectrum examples") {
  auto vac_spec = spectrum(vacuum(1), 3);
  CHECK(vac_spec[0] == doctest::Approx(1.0));
  CHECK(vac_spec[1] == doctest::Approx(0.0));
  CHECK(vac_spec[2] == doctest::Approx(0.0));

  auto thermal_spec = spectrum(one_mode_thermal(1.0), 3);
  CHECK(thermal_spec[0] == doctest::Approx(0.5));
  CHECK(thermal_spec[1] == doctest::Approx(0.25));
  CHECK(thermal_spec[2] == doctest::Approx(0.125));

  GaussianState two = vacuum(2);
  two.corr(0, 0) = 1.5;
  two.corr(1, 1) = 1.5;
  auto pair_spec = spectrum(two, 4);
  CHECK(pair_spec[0] == doctest::Approx(0.25));
  CHECK(pair_spec[1] == doctest::Approx(0.125));
  CHECK(pair_spec[2] == doctest::Approx(0.125));
  CHECK(pair_spec[3] == doctest::Approx(0.0625));
}

TEST_CASE("spectrum is mean-independent and matches the enumeration oracle") {
  Rng rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const int modes = 1 + static_cast<int>(rng() % 3);
    GaussianState s = vacuum(modes);
    s.corr = hermitian_part(s.corr +
                            test_support::random_psd(modes, rng, 1.0));
    s.mean = test_support::random_vector(modes, rng);

    std::vector<double> nus = occupations(s);
    auto heap_spec = spectrum(s, 24);
    auto oracle = spectrum_oracle(nus, 40, 24);
    for (size_t i = 0; i < heap_spec.size(); ++i) {
      CHECK(heap_spec[i] == doctest::Approx(oracle[i]).epsilon(1e-10));
    }
  }
}

TEST_CASE("spectrum mass approaches one") {
  GaussianState s = one_mode_thermal(0.8);
  auto spec = spectrum(s, 200);
  double mass = 0.0;
  for (double v : spec) mass += v;
  CHECK(mass <= 1.0 + 1e-12);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("Renyi p=2 agrees with the spectrum") {
  Rng rng(47);
  GaussianState s = vacuum(2);
  s.corr = hermitian_part(s.corr + test_support::random_psd(2, rng, 0.6));
  auto spec = spectrum(s, 4000);
  double purity = 0.0;
  for (double v : spec) purity += v * v;
  CHECK(renyi_entropy(s, 2.0) ==
        doctest::Approx(-std::log(purity)).epsilon(1e-8));
}

TEST_CASE("entropy is monotone in the Loewner order") {
  Rng rng(53);
  for (int trial = 0; trial < 25; ++trial) {
    const int modes = 1 + static_cast<int>(rng() % 3);
    GaussianState lo = vacuum(modes);
    lo.corr = hermitian_part(lo.corr +
                             test_support::random_psd(modes, rng, 0.8));
    GaussianState hi = lo;
    hi.corr = hermitian_part(hi.corr +
                             test_support::random_psd(modes, rng, 0.8));
    CHECK(von_neumann_entropy(hi) >= von_neumann_entropy(lo) - 1e-10);
  }
}
