#include "bgc/optimizers.hpp"

#include <algorithm>
#include <cmath>

namespace bgc {

namespace {

// Floor for occupation eigenvalues inside g' evaluations; g' diverges
// at 0, which only happens on the boundary of the feasible set.
constexpr double kOccupationFloor = 1e-13;

double g_prime_clamped(double x) {
  return g_bose_prime(std::max(x, kOccupationFloor));
}

std::vector<double> clamped_eigenvalues(const ComplexMatrix& m) {
  HermitianEig eig = eig_hermitian(m);
  std::vector<double> out(eig.values.size());
  for (Eigen::Index j = 0; j < eig.values.size(); ++j) {
    out[j] = std::max(eig.values[j], 0.0);
  }
  return out;
}

}  // namespace

ComplexMatrix vacuum_output_occupation(const GaussianChannel& c) {
  const int sb = c.modes_out();
  return hermitian_part(c.mu + 0.5 * (c.K.adjoint() * c.K -
                                      ComplexMatrix::Identity(sb, sb)));
}

double min_output_entropy(const GaussianChannel& c) {
  require_valid_channel(c);
  double h = 0.0;
  for (double nu : clamped_eigenvalues(vacuum_output_occupation(c))) {
    h += g_bose(nu);
  }
  return h;
}

double one_to_p_norm(const GaussianChannel& c, double p) {
  require_valid_channel(c);
  if (p <= 1.0) fail(ErrorCode::bad_order, "one_to_p_norm: requires p > 1");
  double log_norm = 0.0;
  for (double nu : clamped_eigenvalues(vacuum_output_occupation(c))) {
    log_norm -= std::log(std::pow(nu + 1.0, p) - std::pow(nu, p)) / p;
  }
  return std::exp(log_norm);
}

double min_renyi_entropy(const GaussianChannel& c, double p) {
  return p / (1.0 - p) * std::log(one_to_p_norm(c, p)) + 0.0;
}

double chi_of_gaussian_ensemble(const GaussianChannel& c,
                                const ComplexMatrix& nu) {
  require_valid_channel(c);
  require_hermitian(nu, 1e-9);
  if (nu.rows() != c.modes_in()) {
    fail(ErrorCode::dimension_mismatch, "chi: nu has wrong dimension");
  }
  {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
        hermitian_part(nu), Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -1e-9) {
      fail(ErrorCode::not_psd, "chi: nu must be PSD");
    }
  }
  ComplexMatrix nu_eff =
      c.variant == Variant::contravariant ? nu.conjugate() : nu;
  ComplexMatrix n_out = vacuum_output_occupation(c);
  ComplexMatrix ensemble_out =
      hermitian_part(c.K.adjoint() * nu_eff * c.K + n_out);
  double chi = 0.0;
  for (double x : clamped_eigenvalues(ensemble_out)) chi += g_bose(x);
  for (double x : clamped_eigenvalues(n_out)) chi -= g_bose(x);
  return chi;
}

void require_constraint(const EnergyConstraint& constraint) {
  require_hermitian(constraint.epsilon, 1e-9);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
      hermitian_part(constraint.epsilon), Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() <= 0.0) {
    fail(ErrorCode::not_psd, "energy form epsilon must be positive definite");
  }
  if (constraint.E < 0.0) {
    fail(ErrorCode::bad_argument, "energy budget must be nonnegative");
  }
}

namespace {

struct CommutingProblem {
  ComplexMatrix basis;  // joint eigenbasis columns
  std::vector<double> k2, n_out, eps;
};

bool pairwise_commute(const std::vector<ComplexMatrix>& mats) {
  for (size_t i = 0; i < mats.size(); ++i) {
    for (size_t j = i + 1; j < mats.size(); ++j) {
      double scale = std::max(1.0, mats[i].norm() * mats[j].norm());
      if ((mats[i] * mats[j] - mats[j] * mats[i]).norm() > 1e-10 * scale) {
        return false;
      }
    }
  }
  return true;
}

double water_allocation(double k2, double n, double eps, double lambda) {
  // Solve k2 * g'(k2 nu + n) = lambda * eps for nu >= 0.
  const double y = lambda * eps / k2;
  if (y <= 0.0) return 0.0;
  const double x = 1.0 / std::expm1(y);
  return std::max(0.0, (x - n) / k2);
}

// KKT residual of a candidate solution: dual feasibility of
// Z = lambda*eps - grad, complementary slackness and budget violation.
double kkt_residual_at(const GaussianChannel& c, const ComplexMatrix& eps,
                       double energy, const ComplexMatrix& nu,
                       double* lambda_out) {
  ComplexMatrix n_out = vacuum_output_occupation(c);
  ComplexMatrix arg = hermitian_part(c.K.adjoint() * nu * c.K + n_out);
  ComplexMatrix grad = hermitian_part(
      c.K * matrix_function(arg, g_prime_clamped) * c.K.adjoint());
  const double spend = (nu * eps).trace().real();
  double lambda = 0.0;
  if (spend > 1e-14 && spend >= energy - 1e-9 * std::max(1.0, energy)) {
    lambda = std::max(0.0, (grad * nu).trace().real() / spend);
  }
  if (lambda_out) *lambda_out = lambda;
  ComplexMatrix z = hermitian_part(lambda * eps - grad);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(z,
                                                      Eigen::EigenvaluesOnly);
  const double dual_violation = std::max(0.0, -solver.eigenvalues().minCoeff());
  const double slack = std::abs((z * nu).trace().real()) /
                       std::max(1.0, nu.norm());
  const double budget_violation = std::max(0.0, spend - energy);
  return std::max({dual_violation, slack, budget_violation});
}

// The separable case needs K itself (not just K^dag K) to commute with
// mu and eps and to be normal; a unitary K with K^dag K = I would
// otherwise slip a basis mismatch past the commutation test.
std::vector<ComplexMatrix> commuting_family(const GaussianChannel& c,
                                            const ComplexMatrix& eps) {
  const std::complex<double> minus_i(0.0, -1.0);
  ComplexMatrix re = hermitian_part(c.K);
  ComplexMatrix im = hermitian_part(minus_i * 0.5 * (c.K - c.K.adjoint()));
  return {re, im, hermitian_part(c.mu), hermitian_part(eps)};
}

CapacitySolution solve_water_filling(const GaussianChannel& c,
                                     const ComplexMatrix& eps, double energy) {
  const int sa = c.modes_in();
  ComplexMatrix ktk = hermitian_part(c.K.adjoint() * c.K);
  ComplexMatrix basis = joint_eigenbasis(commuting_family(c, eps));
  ComplexMatrix n_out_mat = vacuum_output_occupation(c);

  CommutingProblem prob;
  prob.basis = basis;
  prob.k2.resize(sa);
  prob.n_out.resize(sa);
  prob.eps.resize(sa);
  for (int j = 0; j < sa; ++j) {
    prob.k2[j] =
        std::max((basis.col(j).adjoint() * ktk * basis.col(j))(0, 0).real(),
                 0.0);
    prob.n_out[j] = std::max(
        (basis.col(j).adjoint() * n_out_mat * basis.col(j))(0, 0).real(), 0.0);
    prob.eps[j] =
        (basis.col(j).adjoint() * eps * basis.col(j))(0, 0).real();
  }

  CapacitySolution sol;
  sol.path = "water_filling";
  std::vector<double> alloc(sa, 0.0);

  const bool any_gain =
      std::any_of(prob.k2.begin(), prob.k2.end(),
                  [](double k2) { return k2 > 1e-14; });
  int iterations = 0;
  double lambda = 0.0;
  if (energy > 0.0 && any_gain) {
    auto spend = [&](double lam) {
      double total = 0.0;
      for (int j = 0; j < sa; ++j) {
        if (prob.k2[j] <= 1e-14) continue;
        total += prob.eps[j] *
                 water_allocation(prob.k2[j], prob.n_out[j], prob.eps[j], lam);
      }
      return total;
    };
    double lo = 1.0, hi = 1.0;
    while (spend(lo) <= energy && lo > 1e-300) lo *= 0.5;
    while (spend(hi) > energy && hi < 1e300) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      if (spend(mid) > energy) {
        lo = mid;
      } else {
        hi = mid;
      }
      ++iterations;
    }
    lambda = 0.5 * (lo + hi);
    for (int j = 0; j < sa; ++j) {
      if (prob.k2[j] <= 1e-14) continue;
      alloc[j] =
          water_allocation(prob.k2[j], prob.n_out[j], prob.eps[j], lambda);
    }
    // Land exactly on the budget: distribute the bisection remainder over
    // the active modes proportionally to their energy weights.
    double used = 0.0;
    for (int j = 0; j < sa; ++j) used += prob.eps[j] * alloc[j];
    if (used > 0.0) {
      double factor = energy / used;
      for (double& a : alloc) a *= factor;
    }
  }

  RealVector alloc_vec =
      Eigen::Map<const RealVector>(alloc.data(), static_cast<int>(sa));
  sol.nu = hermitian_part(prob.basis * alloc_vec.asDiagonal() *
                          prob.basis.adjoint());
  sol.allocations = alloc;
  sol.iterations = iterations;
  sol.lambda = lambda;
  sol.kkt_residual = kkt_residual_at(c, eps, energy, sol.nu, nullptr);
  return sol;
}

CapacitySolution solve_projected_ascent(const GaussianChannel& c,
                                        const ComplexMatrix& eps,
                                        double energy) {
  const int sa = c.modes_in();
  ComplexMatrix n_out = vacuum_output_occupation(c);

  auto chi = [&](const ComplexMatrix& nu) {
    ComplexMatrix arg = hermitian_part(c.K.adjoint() * nu * c.K + n_out);
    double value = 0.0;
    for (double x : clamped_eigenvalues(arg)) value += g_bose(x);
    return value;  // constant tr g(n_out) omitted: it cancels in ascent
  };
  auto gradient = [&](const ComplexMatrix& nu) {
    ComplexMatrix arg = hermitian_part(c.K.adjoint() * nu * c.K + n_out);
    return hermitian_part(c.K * matrix_function(arg, g_prime_clamped) *
                          c.K.adjoint());
  };
  // Euclidean projection onto {nu >= 0, tr(nu eps) <= E}: eigenvalue
  // clipping of nu - theta*eps with the multiplier theta bisected until
  // the budget holds. Rescaling the clipped point instead would move
  // the method's fixed points away from the KKT points.
  auto clip_psd = [](const ComplexMatrix& m) {
    HermitianEig eig = eig_hermitian(hermitian_part(m));
    RealVector clipped = eig.values.cwiseMax(0.0);
    return hermitian_part(eig.vectors * clipped.asDiagonal() *
                          eig.vectors.adjoint());
  };
  auto project = [&](const ComplexMatrix& nu) {
    ComplexMatrix clipped = clip_psd(nu);
    if ((clipped * eps).trace().real() <= energy) return clipped;
    auto spend_at = [&](double theta) {
      return (clip_psd(nu - theta * eps) * eps).trace().real();
    };
    double lo = 0.0, hi = 1.0;
    while (spend_at(hi) > energy && hi < 1e12) hi *= 2.0;
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (lo + hi);
      (spend_at(mid) > energy ? lo : hi) = mid;
    }
    return clip_psd(nu - hi * eps);
  };

  const double eps_trace = eps.trace().real();
  ComplexMatrix nu = (energy / std::max(eps_trace, 1e-300)) *
                     ComplexMatrix::Identity(sa, sa);
  nu = project(nu);

  CapacitySolution sol;
  sol.path = "projected_ascent";
  const int max_iters = 10000;
  double step = 1.0;
  ComplexMatrix prev_nu, prev_grad;
  double value = chi(nu);
  int it = 0;
  for (; it < max_iters; ++it) {
    ComplexMatrix grad = gradient(nu);
    double residual = kkt_residual_at(c, eps, energy, nu, &sol.lambda);
    sol.kkt_residual = residual;
    if (residual < 1e-8) break;
    if (it > 0) {
      ComplexMatrix s = nu - prev_nu;
      ComplexMatrix y = grad - prev_grad;
      double sy = std::abs((s.adjoint() * y).trace().real());
      double ss = (s.adjoint() * s).trace().real();
      step = sy > 1e-300 ? ss / sy : 1.0;
      step = std::clamp(step, 1e-12, 1e6);
    }
    prev_nu = nu;
    prev_grad = grad;
    double trial_step = step;
    bool moved = false;
    for (int bt = 0; bt < 60; ++bt) {
      ComplexMatrix candidate = project(nu + trial_step * grad);
      double candidate_value = chi(candidate);
      if (candidate_value >= value - 1e-15 &&
          (candidate - nu).norm() > 1e-15) {
        nu = candidate;
        value = candidate_value;
        moved = true;
        break;
      }
      trial_step *= 0.5;
    }
    if (!moved) break;  // no ascent left at floating-point resolution
  }
  sol.nu = nu;
  sol.iterations = it;
  return sol;
}

}  // namespace

namespace {

enum class SolverPath { automatic, water_filling, projected_ascent };

CapacitySolution capacity_impl(const GaussianChannel& c,
                               const EnergyConstraint& constraint,
                               SolverPath path) {
  require_valid_channel(c);
  require_constraint(constraint);
  if (constraint.epsilon.rows() != c.modes_in()) {
    fail(ErrorCode::dimension_mismatch,
         "capacity: epsilon dimension must equal modes_in");
  }

  // The contravariant problem is the covariant one with conjugated
  // epsilon; the optimal nu conjugates back.
  const bool contra = c.variant == Variant::contravariant;
  GaussianChannel cov = c;
  cov.variant = Variant::covariant;
  ComplexMatrix eps_eff =
      contra ? constraint.epsilon.conjugate() : constraint.epsilon;

  const bool commuting =
      c.modes_in() == c.modes_out() &&
      pairwise_commute(commuting_family(cov, eps_eff));
  CapacitySolution sol;
  if (path == SolverPath::water_filling ||
      (path == SolverPath::automatic && commuting)) {
    if (!commuting) {
      fail(ErrorCode::non_commuting,
           "water-filling requires K, mu, epsilon to commute");
    }
    sol = solve_water_filling(cov, eps_eff, constraint.E);
  } else {
    sol = solve_projected_ascent(cov, eps_eff, constraint.E);
  }
  if (contra) sol.nu = sol.nu.conjugate();
  sol.capacity_nats = chi_of_gaussian_ensemble(c, sol.nu);
  sol.chi_value = sol.capacity_nats;
  return sol;
}

}  // namespace

CapacitySolution capacity(const GaussianChannel& c,
                          const EnergyConstraint& constraint) {
  return capacity_impl(c, constraint, SolverPath::automatic);
}

CapacitySolution capacity_water_filling(const GaussianChannel& c,
                                        const EnergyConstraint& constraint) {
  return capacity_impl(c, constraint, SolverPath::water_filling);
}

CapacitySolution capacity_projected_ascent(const GaussianChannel& c,
                                           const EnergyConstraint& constraint) {
  return capacity_impl(c, constraint, SolverPath::projected_ascent);
}

}  // namespace bgc
