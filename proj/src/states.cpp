#include "bgc/states.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace bgc {

GaussianState vacuum(int modes) {
  if (modes < 1) fail(ErrorCode::bad_argument, "vacuum: modes must be >= 1");
  GaussianState s;
  s.mean = ComplexVector::Zero(modes);
  s.corr = 0.5 * ComplexMatrix::Identity(modes, modes);
  return s;
}

GaussianState coherent(const ComplexVector& w) {
  if (w.size() < 1) fail(ErrorCode::bad_argument, "coherent: empty mean");
  GaussianState s;
  s.mean = w;
  s.corr = 0.5 * ComplexMatrix::Identity(w.size(), w.size());
  return s;
}

bool is_valid(const GaussianState& s, double tol) {
  if (s.corr.rows() != s.corr.cols() || s.mean.size() != s.corr.rows()) {
    return false;
  }
  if (!is_hermitian(s.corr, 1e-9)) return false;
  const int n = s.modes();
  return loewner_geq(s.corr, 0.5 * ComplexMatrix::Identity(n, n), tol);
}

void require_valid_state(const GaussianState& s, double tol) {
  if (!is_valid(s, tol)) {
    fail(ErrorCode::invalid_state, "state violates corr >= I/2");
  }
}

std::vector<double> occupations(const GaussianState& s) {
  const int n = s.modes();
  HermitianEig eig = eig_hermitian(
      hermitian_part(s.corr - 0.5 * ComplexMatrix::Identity(n, n)));
  std::vector<double> nu(eig.values.size());
  for (Eigen::Index j = 0; j < eig.values.size(); ++j) {
    nu[j] = std::max(eig.values[j], 0.0);
  }
  return nu;
}

double von_neumann_entropy(const GaussianState& s) {
  require_valid_state(s);
  double h = 0.0;
  for (double nu : occupations(s)) h += g_bose(nu);
  return h;
}

double renyi_entropy(const GaussianState& s, double p) {
  require_valid_state(s);
  if (p <= 1.0) fail(ErrorCode::bad_order, "renyi_entropy: requires p > 1");
  // Tr rho^p = prod_j [(nu_j+1)^p - nu_j^p]^{-1}, evaluated in log space.
  double log_trace = 0.0;
  for (double nu : occupations(s)) {
    log_trace -= std::log(std::pow(nu + 1.0, p) - std::pow(nu, p));
  }
  return log_trace / (1.0 - p) + 0.0;  // normalize -0.0 for pure states
}

namespace {

struct HeapEntry {
  double value;
  std::vector<int> tuple;
  bool operator<(const HeapEntry& other) const { return value < other.value; }
};

}  // namespace

std::vector<double> spectrum(const GaussianState& s, int top_k) {
  require_valid_state(s);
  if (top_k < 1) fail(ErrorCode::bad_argument, "spectrum: top_k must be >= 1");

  std::vector<double> nu = occupations(s);
  const int m = static_cast<int>(nu.size());
  double peak = 1.0;
  std::vector<double> ratio(m);
  for (int j = 0; j < m; ++j) {
    peak /= nu[j] + 1.0;
    ratio[j] = nu[j] / (nu[j] + 1.0);
  }

  // Best-first enumeration over occupation tuples. Each tuple is reached
  // exactly once: incrementing coordinate j is allowed only when all
  // coordinates before j are zero, which makes "decrement the first
  // nonzero coordinate" a unique parent map.
  std::vector<double> out;
  out.reserve(top_k);
  std::priority_queue<HeapEntry> heap;
  heap.push({peak, std::vector<int>(m, 0)});
  while (!heap.empty() && static_cast<int>(out.size()) < top_k) {
    HeapEntry top = heap.top();
    heap.pop();
    out.push_back(top.value);
    int first_nonzero = m;
    for (int j = 0; j < m; ++j) {
      if (top.tuple[j] != 0) {
        first_nonzero = j;
        break;
      }
    }
    for (int j = 0; j <= first_nonzero && j < m; ++j) {
      double child = top.value * ratio[j];
      if (child <= 0.0) continue;
      HeapEntry next{child, top.tuple};
      ++next.tuple[j];
      heap.push(std::move(next));
    }
  }
  out.resize(top_k, 0.0);
  return out;
}

}  // namespace bgc
