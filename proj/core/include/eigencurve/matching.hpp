#pragma once

#include <vector>

#include "eigencurve/matrix.hpp"
#include "eigencurve/tolerances.hpp"

namespace eigencurve::matching {

/// min over permutations sigma of max_i |lambda_i - mu_sigma(i)|, computed
/// exactly: binary search over the sorted pairwise distances with bipartite
/// matching feasibility tests. Both tuples are treated as multisets.
double matching_distance(const Vector& lambda, const Vector& mu,
                         const Tolerances& tol = {});

/// A permutation attaining the matching distance; among the optima, the
/// lexicographically smallest one. sigma[i] is the index in mu paired with
/// lambda[i].
std::vector<int> optimal_permutation(const Vector& lambda, const Vector& mu,
                                     const Tolerances& tol = {});

struct NormalBoundReport {
  double d = 0.0;      // matching distance of the spectra
  double norm = 0.0;   // operator norm of A - B
  double ratio = 0.0;  // d / norm, 0 when norm == 0
};

/// Spectral matching distance of two normal matrices against the operator
/// norm of their difference. Throws BoundViolated if the ratio exceeds 3,
/// which would indicate an implementation bug.
NormalBoundReport check_normal_bound(const Matrix& a, const Matrix& b,
                                     const Tolerances& tol = {});

}  // namespace eigencurve::matching
