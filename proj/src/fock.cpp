#include "bgc/fock.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

namespace bgc::fock {

namespace {

using Complex = std::complex<double>;

// exp(scale * (L - L^T)) for the lower-shift L weighted by `weights`
// (size m-1). The generator is real skew-symmetric tridiagonal; a
// diagonal phase gauge turns i*G into a real symmetric tridiagonal
// matrix, whose spectral exponential is cheap and exactly unitary.
ComplexMatrix exp_skew_tridiag(const std::vector<double>& weights,
                               double scale) {
  const int m = static_cast<int>(weights.size()) + 1;
  if (m == 1) return ComplexMatrix::Ones(1, 1);
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd sub(m - 1);
  for (int t = 0; t < m - 1; ++t) sub[t] = scale * weights[t];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub);
  const Eigen::MatrixXd& v = solver.eigenvectors();
  const Eigen::VectorXd& lambda = solver.eigenvalues();

  Eigen::VectorXcd phase(m), exp_l(m);
  Complex i_pow(1.0, 0.0);
  const Complex i_unit(0.0, 1.0);
  for (int t = 0; t < m; ++t) {
    phase[t] = i_pow;
    i_pow *= i_unit;
  }
  for (int t = 0; t < m; ++t) {
    exp_l[t] = std::exp(Complex(0.0, -lambda[t]));
  }
  // U = D V exp(-i lambda) V^T D^dag
  ComplexMatrix u =
      phase.asDiagonal() *
      (v * exp_l.asDiagonal() * v.transpose()).cast<Complex>() *
      phase.conjugate().asDiagonal();
  return u;
}

// First column of exp(scale * (L - L^T)): action on the lowest basis
// vector, which is all the two-mode squeezer needs for |n, 0> inputs.
ComplexVector exp_skew_tridiag_column0(const std::vector<double>& weights,
                                       double scale) {
  const int m = static_cast<int>(weights.size()) + 1;
  if (m == 1) return ComplexVector::Ones(1);
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd sub(m - 1);
  for (int t = 0; t < m - 1; ++t) sub[t] = scale * weights[t];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub);
  const Eigen::MatrixXd& v = solver.eigenvectors();
  const Eigen::VectorXd& lambda = solver.eigenvalues();
  ComplexVector out = ComplexVector::Zero(m);
  for (int row = 0; row < m; ++row) {
    Complex acc(0.0, 0.0);
    for (int j = 0; j < m; ++j) {
      acc += v(row, j) * std::exp(Complex(0.0, -lambda[j])) * v(0, j);
    }
    out[row] = acc;
  }
  Complex i_pow(1.0, 0.0);
  const Complex i_unit(0.0, 1.0);
  for (int row = 0; row < m; ++row) {
    out[row] *= i_pow;
    i_pow *= i_unit;
  }
  return out;
}

// Beamsplitter columns: bs_col[N][j] = <j, N-j | U | N, 0> for the
// generator theta (a b^dag - a^dag b) with cos(theta) = k.
std::vector<ComplexVector> beamsplitter_columns(double k, int cutoff) {
  const double theta = std::acos(std::clamp(k, 0.0, 1.0));
  std::vector<ComplexVector> cols(static_cast<size_t>(cutoff) + 1);
  for (int total = 0; total <= cutoff; ++total) {
    const int m = total + 1;  // block basis |j, total - j>, j = 0..total
    std::vector<double> weights(static_cast<size_t>(m) - 1);
    for (int j = 0; j + 1 < m; ++j) {
      weights[static_cast<size_t>(j)] =
          std::sqrt(static_cast<double>(j + 1) *
                    static_cast<double>(total - j));
    }
    // G has subdiagonal -theta*w (see a b^dag matrix elements), and the
    // input |total, 0> is the top basis vector of the block.
    ComplexMatrix u = exp_skew_tridiag(weights, -theta);
    cols[static_cast<size_t>(total)] = u.col(m - 1);
  }
  return cols;
}

// Two-mode squeezer columns: sq_col[n][t] = <n+t, t | U | n, 0> for the
// generator r (a^dag b^dag - a b) with cosh(r) = kappa, truncated so
// n + t <= out_cutoff.
std::vector<ComplexVector> squeezer_columns(double kappa, int in_cutoff,
                                            int out_cutoff) {
  const double r = std::acosh(std::max(kappa, 1.0));
  std::vector<ComplexVector> cols(static_cast<size_t>(in_cutoff) + 1);
  for (int n = 0; n <= in_cutoff; ++n) {
    const int m = out_cutoff - n + 1;  // t = 0..out_cutoff-n
    std::vector<double> weights(static_cast<size_t>(std::max(m - 1, 0)));
    for (int t = 0; t + 1 < m; ++t) {
      weights[static_cast<size_t>(t)] =
          std::sqrt(static_cast<double>(n + t + 1) *
                    static_cast<double>(t + 1));
    }
    cols[static_cast<size_t>(n)] = exp_skew_tridiag_column0(weights, r);
  }
  return cols;
}

double top_band_mass(const ComplexVector& amplitudes) {
  const int m = static_cast<int>(amplitudes.size());
  const int guard = std::max(2, m / 20);
  double mass = 0.0;
  for (int t = std::max(0, m - guard); t < m; ++t) {
    mass += std::norm(amplitudes[t]);
  }
  return mass;
}

}  // namespace

int amplifier_output_cutoff(double gain_sq, int input_cutoff) {
  const double n = static_cast<double>(input_cutoff);
  return static_cast<int>(
      std::ceil(gain_sq * (n + 4.0 * std::sqrt(n) + 10.0)));
}

void require_density(const FockDensity& rho, double leak_tol) {
  if (rho.matrix.rows() != rho.matrix.cols() || rho.matrix.rows() < 1) {
    fail(ErrorCode::bad_argument, "density matrix must be square");
  }
  const double scale = std::max(1.0, rho.matrix.cwiseAbs().maxCoeff());
  if ((rho.matrix - rho.matrix.adjoint()).cwiseAbs().maxCoeff() >
      1e-12 * std::max(1.0, scale)) {
    fail(ErrorCode::non_hermitian_input, "density matrix is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
      hermitian_part(rho.matrix), Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -1e-10) {
    fail(ErrorCode::not_psd, "density matrix has a negative eigenvalue");
  }
  const double trace = rho.matrix.trace().real();
  if (trace <= 1.0 - leak_tol || trace > 1.0 + 1e-9) {
    fail(ErrorCode::cutoff_too_small,
         "density trace outside (1 - leak_tol, 1]");
  }
}

FockPure fock_basis(int n, int cutoff) {
  if (n < 0 || n > cutoff) {
    fail(ErrorCode::bad_argument, "fock_basis: level outside cutoff");
  }
  FockPure psi;
  psi.amplitudes = ComplexVector::Zero(cutoff + 1);
  psi.amplitudes[n] = 1.0;
  return psi;
}

namespace {

// Coherent amplitudes without the representability check; used by the
// Husimi quadratures where truncation is part of the integrand.
ComplexVector coherent_amplitudes_raw(Complex w, int cutoff) {
  ComplexVector amps(cutoff + 1);
  amps[0] = std::exp(-0.5 * std::norm(w));
  for (int n = 1; n <= cutoff; ++n) {
    amps[n] = amps[n - 1] * w / std::sqrt(static_cast<double>(n));
  }
  return amps;
}

}  // namespace

FockPure coherent_fock(Complex w, int cutoff) {
  if (cutoff < 0) fail(ErrorCode::bad_argument, "negative cutoff");
  FockPure psi;
  psi.amplitudes = coherent_amplitudes_raw(w, cutoff);
  const double captured = psi.amplitudes.squaredNorm();
  if (1.0 - captured > 1e-10) {
    fail(ErrorCode::cutoff_too_small,
         "coherent state leaks more than 1e-10 past the cutoff");
  }
  return psi;
}

FockPure haar_random_pure(int cutoff, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  FockPure psi;
  psi.amplitudes = ComplexVector(cutoff + 1);
  for (int n = 0; n <= cutoff; ++n) {
    psi.amplitudes[n] = Complex(gauss(rng), gauss(rng));
  }
  psi.amplitudes /= psi.amplitudes.norm();
  return psi;
}

FockDensity pure_to_density(const FockPure& psi) {
  return {psi.amplitudes * psi.amplitudes.adjoint()};
}

FockDensity gaussian_fock(double occupation, Complex mean, int cutoff) {
  if (occupation < 0.0) {
    fail(ErrorCode::bad_argument, "occupation must be nonnegative");
  }
  const int dim = cutoff + 1;
  Eigen::VectorXd p(dim);
  if (occupation == 0.0) {
    p.setZero();
    p[0] = 1.0;
  } else {
    const double ratio = occupation / (occupation + 1.0);
    double value = 1.0 / (occupation + 1.0);
    for (int n = 0; n < dim; ++n) {
      p[n] = value;
      value *= ratio;
    }
    if (1.0 - p.sum() > 1e-9) {
      fail(ErrorCode::cutoff_too_small,
           "thermal tail exceeds leak tolerance at this cutoff");
    }
  }
  ComplexMatrix rho = p.cast<Complex>().asDiagonal();
  if (std::abs(mean) > 0.0) {
    // Displacement D(mean) = exp(mean a^dag - conj(mean) a): skew
    // tridiagonal generator up to a diagonal phase gauge.
    const int m = dim;
    std::vector<double> weights(static_cast<size_t>(m) - 1);
    for (int n = 0; n + 1 < m; ++n) {
      weights[static_cast<size_t>(n)] =
          std::sqrt(static_cast<double>(n + 1));
    }
    ComplexMatrix d0 = exp_skew_tridiag(weights, std::abs(mean));
    const Complex phase = mean / std::abs(mean);
    ComplexVector gauge(m);
    Complex acc(1.0, 0.0);
    for (int n = 0; n < m; ++n) {
      gauge[n] = acc;
      acc *= phase;
    }
    ComplexMatrix d = gauge.asDiagonal() * d0 * gauge.conjugate().asDiagonal();
    rho = d * rho * d.adjoint();
    // Displacement pushes population toward the cutoff; refuse silently
    // contaminated results.
    double guard = 0.0;
    const int band = std::max(2, m / 20);
    for (int n = m - band; n < m; ++n) guard += rho(n, n).real();
    if (guard > 1e-9) {
      fail(ErrorCode::cutoff_too_small,
           "displaced state touches the truncation boundary");
    }
  }
  return {hermitian_part(rho)};
}

std::vector<double> spectrum_of(const FockDensity& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
      hermitian_part(rho.matrix), Eigen::EigenvaluesOnly);
  std::vector<double> out(static_cast<size_t>(solver.eigenvalues().size()));
  for (Eigen::Index j = 0; j < solver.eigenvalues().size(); ++j) {
    out[static_cast<size_t>(j)] = std::max(solver.eigenvalues()[j], 0.0);
  }
  std::sort(out.begin(), out.end(), std::greater<double>());
  return out;
}

namespace {

// Scalar attenuator-first split of a one-mode factor: gain k1 and
// a second-stage gain k2 (amplifier for covariant, contravariant else).
struct FactorSplit {
  double k1 = 1.0;  // attenuator amplitude, <= 1
  double k2 = 1.0;  // second-stage gain
  bool contra = false;
};

FactorSplit split_factor(const OneModeFactor& f) {
  if (f.role == FactorRole::traced_out) {
    fail(ErrorCode::invalid_factor, "traced-out factor has no channel action");
  }
  if (!factor_is_valid(f, 1e-9)) {
    fail(ErrorCode::invalid_factor, "one-mode factor violates validity");
  }
  FactorSplit s;
  s.contra = f.variant == Variant::contravariant;
  const double k2_sq = s.contra ? f.mu + 0.5 * (f.k * f.k - 1.0)
                                : f.mu + 0.5 * (f.k * f.k + 1.0);
  s.k2 = std::sqrt(std::max(k2_sq, 0.0));
  s.k1 = s.k2 > 1e-14 ? std::min(f.k / s.k2, 1.0) : 0.0;
  return s;
}

// Pure state pushed through the attenuator dilation: returns the
// two-mode coefficient matrix C with C(m, l) = <m, l | U (psi x vac)>.
ComplexMatrix attenuator_coefficients(const std::vector<ComplexVector>& cols,
                                      const ComplexVector& psi) {
  const int dim = static_cast<int>(psi.size());
  ComplexMatrix c = ComplexMatrix::Zero(dim, dim);
  for (int total = 0; total < dim; ++total) {
    if (std::abs(psi[total]) == 0.0) continue;
    const ComplexVector& col = cols[static_cast<size_t>(total)];
    for (int j = 0; j <= total; ++j) {
      c(j, total - j) += psi[total] * col[j];
    }
  }
  return c;
}

struct StagePlan {
  double k1 = 1.0;
  double kappa = 1.0;  // cosh r of the squeezing stage
  bool keep_environment = false;
  int in_cutoff = 0;
  int out_cutoff = 0;
  std::vector<ComplexVector> bs_cols;   // empty when k1 == 1
  std::vector<ComplexVector> sq_cols;   // empty when kappa == 1
};

StagePlan plan_stages(const OneModeFactor& f, int in_cutoff,
                      double leak_tol) {
  FactorSplit split = split_factor(f);
  StagePlan plan;
  plan.in_cutoff = in_cutoff;
  plan.k1 = split.k1;
  plan.keep_environment = split.contra;
  plan.kappa = split.contra ? std::sqrt(1.0 + split.k2 * split.k2) : split.k2;
  if (plan.k1 < 1.0 - 1e-14) {
    plan.bs_cols = beamsplitter_columns(plan.k1, in_cutoff);
  }
  const bool squeeze = plan.kappa > 1.0 + 1e-14 || plan.keep_environment;
  if (squeeze) {
    // The policy cutoff is the starting point; escalate until every
    // input column keeps its top band below the leak tolerance.
    plan.out_cutoff =
        amplifier_output_cutoff(plan.kappa * plan.kappa, in_cutoff);
    for (int attempt = 0; attempt < 5; ++attempt) {
      plan.sq_cols = squeezer_columns(plan.kappa, in_cutoff, plan.out_cutoff);
      double worst = 0.0;
      for (const auto& col : plan.sq_cols) {
        worst = std::max(worst, top_band_mass(col));
      }
      if (worst * (in_cutoff + 1.0) < 0.1 * leak_tol) return plan;
      plan.out_cutoff = plan.out_cutoff + plan.out_cutoff / 2 + 8;
    }
    fail(ErrorCode::cutoff_too_small,
         "squeezer cutoff escalation failed to bound the leak");
  } else {
    plan.out_cutoff = in_cutoff;
  }
  return plan;
}

// Output of the squeezing stage on a pure state: either the kept mode
// (amplifier) or the environment mode (contravariant), accumulated into
// `out` with weight `weight`.
void accumulate_squeezer_output(const StagePlan& plan,
                                const ComplexVector& psi, double weight,
                                ComplexMatrix& out) {
  const int din = static_cast<int>(psi.size());
  const int dout = plan.out_cutoff + 1;
  if (!plan.keep_environment) {
    // rho_out[n+t, n'+t] += w psi_n beta^n_t conj(psi_n' beta^n'_t);
    // fill n' <= n and mirror by Hermitian symmetry
    for (int n = 0; n < din; ++n) {
      if (std::abs(psi[n]) == 0.0) continue;
      const ComplexVector& bn = plan.sq_cols[static_cast<size_t>(n)];
      for (int np = 0; np <= n; ++np) {
        if (std::abs(psi[np]) == 0.0) continue;
        const ComplexVector& bnp = plan.sq_cols[static_cast<size_t>(np)];
        const int tmax = std::min(static_cast<int>(bn.size()),
                                  static_cast<int>(bnp.size()));
        const Complex outer = weight * psi[n] * std::conj(psi[np]);
        if (np == n) {
          for (int t = 0; t < tmax; ++t) {
            out(n + t, n + t) += outer * bn[t] * std::conj(bnp[t]);
          }
        } else {
          for (int t = 0; t < tmax; ++t) {
            const Complex value = outer * bn[t] * std::conj(bnp[t]);
            out(n + t, np + t) += value;
            out(np + t, n + t) += std::conj(value);
          }
        }
      }
    }
  } else {
    // rho_env[t, t'] += w sum_n psi_n beta^n_t conj(psi_{n+t-t'} beta_{t'})
    for (int n = 0; n < din; ++n) {
      if (std::abs(psi[n]) == 0.0) continue;
      const ComplexVector& bn = plan.sq_cols[static_cast<size_t>(n)];
      for (int np = 0; np < din; ++np) {
        if (std::abs(psi[np]) == 0.0) continue;
        const ComplexVector& bnp = plan.sq_cols[static_cast<size_t>(np)];
        // environment indices: t on bra side of n, t' of n'; kept mode
        // index must agree: n + t = n' + t'
        for (int t = 0; t < static_cast<int>(bn.size()); ++t) {
          const int tp = n + t - np;
          if (tp < 0 || tp >= static_cast<int>(bnp.size())) continue;
          if (t >= dout || tp >= dout) continue;
          out(t, tp) += weight * psi[n] * std::conj(psi[np]) * bn[t] *
                        std::conj(bnp[tp]);
        }
      }
    }
  }
}

FockDensity run_plan_on_density(const StagePlan& plan, const FockDensity& rho,
                                const FockOptions& opts) {
  // Stage 1: attenuator (keeps the system side of a beamsplitter).
  ComplexMatrix mid;
  const int din = plan.in_cutoff + 1;
  if (plan.bs_cols.empty()) {
    mid = rho.matrix;
  } else {
    mid = ComplexMatrix::Zero(din, din);
    HermitianEig eig = eig_hermitian(hermitian_part(rho.matrix));
    for (Eigen::Index comp = 0; comp < eig.values.size(); ++comp) {
      const double p = eig.values[comp];
      if (p < 1e-16) continue;
      ComplexMatrix c = attenuator_coefficients(plan.bs_cols,
                                                eig.vectors.col(comp));
      mid += p * (c * c.adjoint());
    }
  }

  // Stage 2: squeezer, keeping system or environment.
  if (plan.sq_cols.empty()) {
    return {hermitian_part(mid)};
  }
  const int dout = plan.out_cutoff + 1;
  ComplexMatrix out = ComplexMatrix::Zero(dout, dout);
  HermitianEig eig = eig_hermitian(hermitian_part(mid));
  // Components below a fraction of the leak budget shift the output by
  // less than the truncation error itself.
  const double component_floor = std::max(1e-16, 1e-3 * opts.leak_tol);
  for (Eigen::Index comp = 0; comp < eig.values.size(); ++comp) {
    const double p = eig.values[comp];
    if (p < component_floor) continue;
    accumulate_squeezer_output(plan, eig.vectors.col(comp), p, out);
  }

  // Guard band: the truncated squeezer dynamics must not touch the top
  // of the output space.
  double guard = 0.0;
  const int band = std::max(2, dout / 20);
  for (int n = dout - band; n < dout; ++n) guard += out(n, n).real();
  if (guard > opts.leak_tol) {
    fail(ErrorCode::cutoff_too_small,
         "squeezer output touches the truncation boundary");
  }
  return {hermitian_part(out)};
}

}  // namespace

FockDensity apply_one_mode(const OneModeFactor& factor, const FockDensity& rho,
                           const FockOptions& opts) {
  require_density(rho, opts.leak_tol);
  StagePlan plan = plan_stages(factor, rho.cutoff(), opts.leak_tol);
  return run_plan_on_density(plan, rho, opts);
}

FockDensity complementary_output(const OneModeFactor& factor,
                                 const FockPure& psi,
                                 const FockOptions& opts) {
  if (factor.variant != Variant::covariant) {
    fail(ErrorCode::invalid_factor,
         "complementary_output expects a covariant extreme factor");
  }
  if (!factor_is_valid(factor, 1e-9)) {
    fail(ErrorCode::invalid_factor, "invalid factor");
  }
  const double k2 = factor.k * factor.k;
  const double minimal = 0.5 * std::abs(1.0 - k2);
  if (std::abs(factor.mu - minimal) > 1e-9) {
    fail(ErrorCode::not_extremal,
         "complementary_output requires an extreme factor");
  }
  if (factor.k <= 1.0 + 1e-14) {
    // Attenuator: complementary output is the discarded beamsplitter arm,
    // rho_E[l, l'] = sum_m C[m, l] conj(C[m, l']).
    auto cols = beamsplitter_columns(std::min(factor.k, 1.0), psi.cutoff());
    ComplexMatrix c = attenuator_coefficients(cols, psi.amplitudes);
    return {hermitian_part(c.transpose() * c.conjugate())};
  }
  // Amplifier: complementary output is the squeezer environment.
  StagePlan plan;
  plan.in_cutoff = psi.cutoff();
  plan.kappa = factor.k;
  plan.keep_environment = true;
  plan.out_cutoff = amplifier_output_cutoff(k2, psi.cutoff());
  for (int attempt = 0; attempt < 5; ++attempt) {
    plan.sq_cols = squeezer_columns(plan.kappa, psi.cutoff(), plan.out_cutoff);
    double worst = 0.0;
    for (const auto& col : plan.sq_cols) {
      worst = std::max(worst, top_band_mass(col));
    }
    if (worst * (psi.cutoff() + 1.0) < 0.1 * opts.leak_tol) break;
    plan.out_cutoff = plan.out_cutoff + plan.out_cutoff / 2 + 8;
  }
  const int dout = plan.out_cutoff + 1;
  ComplexMatrix out = ComplexMatrix::Zero(dout, dout);
  accumulate_squeezer_output(plan, psi.amplitudes, 1.0, out);
  return {hermitian_part(out)};
}

double tr_f_output(const OneModeFactor& factor, const FockDensity& rho,
                   const std::function<double(double)>& f,
                   const FockOptions& opts) {
  FockDensity out = apply_one_mode(factor, rho, opts);
  double total = 0.0;
  for (double lambda : spectrum_of(out)) {
    if (lambda <= 0.0) continue;
    double value = f(lambda);
    if (!std::isfinite(value)) {
      fail(ErrorCode::domain_error, "tr_f_output: f undefined on spectrum");
    }
    total += value;
  }
  return total;
}

std::function<double(double)> named_function(const std::string& name) {
  if (name == "neg_x_log_x") {
    return [](double x) { return x > 0.0 ? -x * std::log(x) : 0.0; };
  }
  if (name == "neg_x_sq") {
    return [](double x) { return -x * x; };
  }
  if (name == "neg_x_p15") {
    return [](double x) { return x > 0.0 ? -std::pow(x, 1.5) : 0.0; };
  }
  if (name == "identity") {
    return [](double x) { return x; };
  }
  fail(ErrorCode::bad_argument, "unknown test function: " + name);
}

std::vector<WitnessReport> optimizer_witness_multi(
    const OneModeFactor& factor, const std::vector<std::string>& f_names,
    int trials, std::uint64_t seed, int cutoff, const FockOptions& opts) {
  if (factor.variant != Variant::covariant) {
    fail(ErrorCode::invalid_factor,
         "optimizer witness covers covariant factors");
  }
  if (trials < 1 || cutoff < 1) {
    fail(ErrorCode::bad_argument, "witness needs trials >= 1, cutoff >= 1");
  }
  std::vector<std::function<double(double)>> fs;
  fs.reserve(f_names.size());
  for (const auto& name : f_names) fs.push_back(named_function(name));

  StagePlan plan = plan_stages(factor, cutoff, opts.leak_tol);

  auto spectrum_for = [&](const ComplexVector& amplitudes) {
    FockDensity in{amplitudes * amplitudes.adjoint()};
    FockDensity out = run_plan_on_density(plan, in, opts);
    return spectrum_of(out);
  };
  auto values_for = [&](const std::vector<double>& spec) {
    std::vector<double> vals(fs.size(), 0.0);
    for (double lambda : spec) {
      if (lambda <= 0.0) continue;
      for (size_t i = 0; i < fs.size(); ++i) vals[i] += fs[i](lambda);
    }
    return vals;
  };

  FockPure vac = fock_basis(0, cutoff);
  std::vector<double> vacuum_values = values_for(spectrum_for(vac.amplitudes));

  std::vector<WitnessReport> reports(f_names.size());
  for (size_t i = 0; i < f_names.size(); ++i) {
    reports[i].factor = factor;
    reports[i].f_name = f_names[i];
    reports[i].trials = trials;
    reports[i].seed = seed;
    reports[i].cutoff = cutoff;
    reports[i].vacuum_value = vacuum_values[i];
    reports[i].sample_min = std::numeric_limits<double>::infinity();
  }

  // Trials are independent given their derived seeds; fan out across a
  // few threads and merge the minima deterministically (value first,
  // lower trial index on ties).
  struct ThreadBest {
    std::vector<double> min_value;
    std::vector<int> argmin_trial;
    std::vector<FockPure> argmin_state;
  };
  const int n_threads = std::max(
      1, std::min({static_cast<int>(std::thread::hardware_concurrency()), 4,
                   trials}));
  std::vector<ThreadBest> best(static_cast<size_t>(n_threads));
  auto worker = [&](int which) {
    ThreadBest& mine = best[static_cast<size_t>(which)];
    mine.min_value.assign(fs.size(), std::numeric_limits<double>::infinity());
    mine.argmin_trial.assign(fs.size(), -1);
    mine.argmin_state.resize(fs.size());
    for (int trial = which; trial < trials; trial += n_threads) {
      const std::uint64_t trial_seed =
          seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(trial + 1);
      FockPure psi = haar_random_pure(cutoff, trial_seed);
      std::vector<double> vals = values_for(spectrum_for(psi.amplitudes));
      for (size_t i = 0; i < fs.size(); ++i) {
        if (vals[i] < mine.min_value[i]) {
          mine.min_value[i] = vals[i];
          mine.argmin_trial[i] = trial;
          mine.argmin_state[i] = psi;
        }
      }
    }
  };
  if (n_threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }

  std::vector<FockPure> argmins(f_names.size());
  for (size_t i = 0; i < fs.size(); ++i) {
    for (const ThreadBest& mine : best) {
      if (mine.min_value.empty()) continue;
      const bool better =
          mine.min_value[i] < reports[i].sample_min ||
          (mine.min_value[i] == reports[i].sample_min &&
           mine.argmin_trial[i] >= 0 &&
           (reports[i].argmin_trial < 0 ||
            mine.argmin_trial[i] < reports[i].argmin_trial));
      if (better) {
        reports[i].sample_min = mine.min_value[i];
        reports[i].argmin_trial = mine.argmin_trial[i];
        argmins[i] = mine.argmin_state[i];
      }
    }
  }

  for (size_t i = 0; i < fs.size(); ++i) {
    reports[i].margin = reports[i].sample_min - reports[i].vacuum_value;
    reports[i].pass = reports[i].margin >= -1e-9;
    // Diagnostic: overlap of the minimizing sample with the coherent
    // state matching its first moment.
    const ComplexVector& a = argmins[i].amplitudes;
    Complex mean(0.0, 0.0);
    for (int n = 0; n + 1 <= argmins[i].cutoff(); ++n) {
      mean += std::conj(a[n]) * std::sqrt(static_cast<double>(n + 1)) *
              a[n + 1];
    }
    ComplexVector coh = coherent_amplitudes_raw(mean, argmins[i].cutoff());
    reports[i].argmin_coherent_fidelity = std::norm(coh.dot(a));
  }
  return reports;
}

WitnessReport optimizer_witness(const OneModeFactor& factor,
                                const std::string& f_name, int trials,
                                std::uint64_t seed, int cutoff,
                                const FockOptions& opts) {
  return optimizer_witness_multi(factor, {f_name}, trials, seed, cutoff,
                                 opts)[0];
}

bool majorizes(const FockDensity& rho, const FockDensity& sigma, double tol) {
  std::vector<double> a = spectrum_of(rho);
  std::vector<double> b = spectrum_of(sigma);
  const size_t n = std::max(a.size(), b.size());
  a.resize(n, 0.0);
  b.resize(n, 0.0);
  double sum_a = 0.0, sum_b = 0.0;
  for (size_t k = 0; k < n; ++k) {
    sum_a += a[k];
    sum_b += b[k];
    if (sum_a < sum_b - tol) return false;
  }
  return true;
}

double husimi(const FockDensity& rho, Complex z) {
  require_density(rho, 1e-6);
  // Representability check mirrors coherent_fock.
  FockPure coh = coherent_fock(z, rho.cutoff());
  const Complex value =
      coh.amplitudes.adjoint() * rho.matrix * coh.amplitudes;
  return std::clamp(value.real(), 0.0, 1.0);
}

namespace {

struct Quadrature {
  std::vector<double> nodes, weights;
};

// Golub-Welsch from the Jacobi recurrence coefficients.
Quadrature gauss_from_jacobi(const Eigen::VectorXd& alpha,
                             const Eigen::VectorXd& beta_sqrt,
                             double total_mass) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(alpha, beta_sqrt);
  Quadrature q;
  const int n = static_cast<int>(alpha.size());
  q.nodes.resize(n);
  q.weights.resize(n);
  for (int j = 0; j < n; ++j) {
    q.nodes[j] = solver.eigenvalues()[j];
    const double v0 = solver.eigenvectors()(0, j);
    q.weights[j] = total_mass * v0 * v0;
  }
  return q;
}

// Gauss-Laguerre nodes with pre-scaled weights w_j e^{t_j}, computed
// from the exponentially damped orthonormal Laguerre functions
// phi_k(t) = p_k(t) e^{-t/2}. The eigenvector route for the raw weights
// bottoms out at machine noise (~1e-30) for far-out nodes, and then
// multiplying by e^{t} turns the noise into garbage.
Quadrature gauss_laguerre_scaled(int n) {
  Eigen::VectorXd alpha(n), beta_sqrt(std::max(n - 1, 0));
  for (int i = 0; i < n; ++i) alpha[i] = 2.0 * i + 1.0;
  for (int i = 1; i < n; ++i) beta_sqrt[i - 1] = static_cast<double>(i);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(alpha, beta_sqrt, Eigen::EigenvaluesOnly);
  Quadrature q;
  q.nodes.resize(n);
  q.weights.resize(n);
  for (int j = 0; j < n; ++j) {
    const double t = solver.eigenvalues()[j];
    q.nodes[j] = t;
    double phi_prev = 0.0;
    double phi = std::exp(-0.5 * t);
    double sum = phi * phi;
    for (int k = 0; k + 1 < n; ++k) {
      const double next =
          ((t - alpha[k]) * phi - static_cast<double>(k) * phi_prev) /
          static_cast<double>(k + 1);
      phi_prev = phi;
      phi = next;
      sum += phi * phi;
    }
    q.weights[j] = sum > 0.0 ? 1.0 / sum : 0.0;
  }
  return q;
}

Quadrature gauss_legendre_0_2pi(int n) {
  Eigen::VectorXd alpha = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd beta_sqrt(std::max(n - 1, 0));
  for (int i = 1; i < n; ++i) {
    const double ii = static_cast<double>(i);
    beta_sqrt[i - 1] = ii / std::sqrt(4.0 * ii * ii - 1.0);
  }
  Quadrature q = gauss_from_jacobi(alpha, beta_sqrt, 2.0);
  for (int j = 0; j < n; ++j) {
    q.nodes[j] = M_PI * (q.nodes[j] + 1.0);
    q.weights[j] *= M_PI;
  }
  return q;
}

double wehrl_pass(const FockDensity& rho,
                  const std::function<double(double)>& f, int radial_nodes,
                  int angular_nodes) {
  Quadrature rad = gauss_laguerre_scaled(radial_nodes);
  Quadrature ang = gauss_legendre_0_2pi(angular_nodes);
  const int dim = rho.cutoff() + 1;

  // integral f(p(z)) d^2z/pi = (1/2pi) int_0^inf dt int_0^2pi dphi f(p)
  //                          = int e^{-t} [e^t f(p)] dt x (angle avg)
  //
  // p(t, phi) = sum_d s_d(t) e^{i d phi} with s_d the d-th diagonal sum
  // of rho against the coherent moduli: O(dim) work per angle.
  double total = 0.0;
  Eigen::VectorXd mod(dim);
  Eigen::VectorXcd diag_sums(dim);
  for (int rj = 0; rj < radial_nodes; ++rj) {
    const double t = rad.nodes[rj];
    double log_amp = -0.5 * t;
    mod[0] = std::exp(log_amp);
    for (int m = 1; m < dim; ++m) {
      log_amp += 0.5 * (std::log(t) - std::log(static_cast<double>(m)));
      mod[m] = std::exp(log_amp);
    }
    for (int d = 0; d < dim; ++d) {
      Complex acc(0.0, 0.0);
      for (int m = 0; m + d < dim; ++m) {
        acc += rho.matrix(m, m + d) * mod[m] * mod[m + d];
      }
      diag_sums[d] = acc;
    }
    double angular_sum = 0.0;
    for (int aj = 0; aj < angular_nodes; ++aj) {
      const Complex rot = std::exp(Complex(0.0, ang.nodes[aj]));
      Complex zpow = rot;
      double p = diag_sums[0].real();
      for (int d = 1; d < dim; ++d) {
        p += 2.0 * (diag_sums[d] * zpow).real();
        zpow *= rot;
      }
      p = std::max(p, 0.0);
      double fp = p > 0.0 ? f(p) : 0.0;
      if (!std::isfinite(fp)) {
        fail(ErrorCode::domain_error, "wehrl: f undefined at density value");
      }
      angular_sum += ang.weights[aj] * fp;
    }
    // weights already carry the e^{t} unscaling; (2 pi)^-1 is the
    // angle normalization
    total += rad.weights[rj] * angular_sum / (2.0 * M_PI);
  }
  return total;
}

}  // namespace

double wehrl_functional(const FockDensity& rho,
                        const std::function<double(double)>& f,
                        int radial_nodes, int angular_nodes) {
  require_density(rho, 1e-6);
  if (rho.matrix.rows() < 1 || radial_nodes < 4 || angular_nodes < 4) {
    fail(ErrorCode::bad_argument, "wehrl: need at least 4 nodes each way");
  }
  const double coarse = wehrl_pass(rho, f, radial_nodes, angular_nodes);
  const double fine = wehrl_pass(rho, f, 2 * radial_nodes, 2 * angular_nodes);
  if (std::abs(fine - coarse) >= 1e-5) {
    fail(ErrorCode::quadrature_not_converged,
         "wehrl quadrature did not converge under node doubling");
  }
  return fine;
}

}  // namespace bgc::fock
