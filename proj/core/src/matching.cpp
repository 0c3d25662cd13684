#include "eigencurve/matching.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "eigencurve/errors.hpp"
#include "eigencurve/linalg.hpp"

namespace eigencurve::matching {

namespace {

struct DistanceTable {
  int n = 0;
  std::vector<double> d;  // row-major n x n
  double at(int i, int j) const { return d[static_cast<size_t>(i) * n + j]; }
};

DistanceTable distances(const Vector& lambda, const Vector& mu) {
  DistanceTable t;
  t.n = static_cast<int>(lambda.size());
  t.d.resize(static_cast<size_t>(t.n) * t.n);
  for (int i = 0; i < t.n; ++i)
    for (int j = 0; j < t.n; ++j)
      t.d[static_cast<size_t>(i) * t.n + j] = std::abs(lambda[i] - mu[j]);
  return t;
}

// Kuhn augmenting path over the <= threshold graph. match_col[j] is the row
// currently holding column j, or -1. `banned_col` masks fixed columns.
bool augment(const DistanceTable& t, double thr, int row, std::vector<int>& match_col,
             std::vector<char>& visited, const std::vector<char>& banned_col) {
  for (int j = 0; j < t.n; ++j) {
    if (banned_col[j] || visited[j] || t.at(row, j) > thr) continue;
    visited[j] = 1;
    if (match_col[j] < 0 ||
        augment(t, thr, match_col[j], match_col, visited, banned_col)) {
      match_col[j] = row;
      return true;
    }
  }
  return false;
}

bool feasible(const DistanceTable& t, double thr) {
  std::vector<int> match_col(t.n, -1);
  std::vector<char> banned(t.n, 0);
  for (int r = 0; r < t.n; ++r) {
    std::vector<char> visited(t.n, 0);
    if (!augment(t, thr, r, match_col, visited, banned)) return false;
  }
  return true;
}

double bottleneck_threshold(const DistanceTable& t) {
  std::vector<double> cand = t.d;
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  size_t lo = 0, hi = cand.size() - 1;
  while (lo < hi) {
    const size_t mid = lo + (hi - lo) / 2;
    if (feasible(t, cand[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return cand[lo];
}

void require_pair(const Vector& lambda, const Vector& mu, const Tolerances& tol) {
  if (lambda.size() != mu.size()) {
    std::ostringstream os;
    os << "matching: tuple lengths " << lambda.size() << " and " << mu.size()
       << " differ";
    throw LengthMismatch(os.str());
  }
  if (static_cast<int>(lambda.size()) > tol.matching_cap) {
    std::ostringstream os;
    os << "matching: length " << lambda.size() << " exceeds the cap "
       << tol.matching_cap;
    throw LengthMismatch(os.str());
  }
}

}  // namespace

double matching_distance(const Vector& lambda, const Vector& mu,
                         const Tolerances& tol) {
  require_pair(lambda, mu, tol);
  if (lambda.empty()) return 0.0;
  return bottleneck_threshold(distances(lambda, mu));
}

std::vector<int> optimal_permutation(const Vector& lambda, const Vector& mu,
                                     const Tolerances& tol) {
  require_pair(lambda, mu, tol);
  const int n = static_cast<int>(lambda.size());
  if (n == 0) return {};
  const DistanceTable t = distances(lambda, mu);
  const double thr = bottleneck_threshold(t);

  // Lexicographically smallest optimum: walk the rows in order and commit the
  // smallest column for which the remaining rows still match perfectly.
  std::vector<char> banned(n, 0);
  std::vector<int> sigma(n, -1);
  const auto rest_feasible = [&](int first_row, int taken_col) {
    std::vector<int> match_col(n, -1);
    for (int r = first_row; r < n; ++r) {
      std::vector<char> visited(n, 0);
      visited[taken_col] = 1;
      if (!augment(t, thr, r, match_col, visited, banned)) return false;
    }
    return true;
  };
  for (int r = 0; r < n; ++r) {
    for (int j = 0; j < n; ++j) {
      if (banned[j] || t.at(r, j) > thr) continue;
      if (rest_feasible(r + 1, j)) {
        sigma[r] = j;
        banned[j] = 1;
        break;
      }
    }
    if (sigma[r] < 0)
      throw Error("Internal", "optimal_permutation: no feasible column for a row");
  }
  return sigma;
}

NormalBoundReport check_normal_bound(const Matrix& a, const Matrix& b,
                                     const Tolerances& tol) {
  if (!a.square() || !b.square() || a.rows() != b.rows())
    throw LengthMismatch("check_normal_bound: size mismatch");
  const double na = a.frobenius_norm();
  const double nb = b.frobenius_norm();
  if (normality_defect(a) > tol.normality_check * na * na && na > 0.0)
    throw NotNormal("check_normal_bound: first argument is not normal");
  if (normality_defect(b) > tol.normality_check * nb * nb && nb > 0.0)
    throw NotNormal("check_normal_bound: second argument is not normal");

  const SpectralDecomposition da = normal_eigen(a, tol);
  const SpectralDecomposition db = normal_eigen(b, tol);

  NormalBoundReport r;
  r.d = matching_distance(da.values, db.values, tol);
  r.norm = operator_norm(a - b, tol);
  r.ratio = r.norm > 0.0 ? r.d / r.norm : 0.0;
  if (r.ratio > 3.0) {
    std::ostringstream os;
    os << "check_normal_bound: ratio " << r.ratio << " exceeds 3";
    throw BoundViolated(os.str());
  }
  return r;
}

}  // namespace eigencurve::matching
