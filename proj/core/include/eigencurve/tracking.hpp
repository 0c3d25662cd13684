#pragma once

#include <string>
#include <vector>

#include "eigencurve/family.hpp"
#include "eigencurve/matrix.hpp"
#include "eigencurve/tolerances.hpp"

namespace eigencurve::tracking {

struct Event {
  std::string kind;  // refine | refinement_exhausted | frame_restart | crossing
  double t_lo = 0.0;
  double t_hi = 0.0;
  std::string detail;
};

/// Labeled eigenvalue trajectories over a grid. curves[i][k] is curve i at
/// grid[k]. At every grid point the curve values form the same multiset as
/// the eigensolver output for A(grid[k]). frames, when present, hold one
/// gauge-aligned eigenvector block per grid point (column i belongs to curve
/// i); gauge_defect logs the per-step alignment angle.
struct CurveBundle {
  std::vector<double> grid;
  std::vector<std::vector<Complex>> curves;
  std::vector<Matrix> frames;
  std::vector<double> gauge_defect;
  std::vector<Event> events;
  double scale = 0.0;  // max ||A(t_k)||_F seen while tracking

  int curve_count() const { return static_cast<int>(curves.size()); }
  int point_count() const { return static_cast<int>(grid.size()); }
};

struct CrossingReport {
  double t_lo = 0.0;
  double t_hi = 0.0;
  double t_star = 0.0;
  int i = 0;
  int j = 0;
  double gap_min = 0.0;
  int order_estimate = 0;  // 0 = unresolved
  bool infinite_order_suspect = false;
};

/// Continuation labeling: step-to-step assignment between predicted curve
/// values (quadratic extrapolation from up to three previous points) and the
/// fresh eigenvalues. With refine, steps whose assignment distance exceeds
/// refine_gap_factor times the local minimal gap trigger grid bisection up to
/// refine_depth; exhaustion is recorded as an event, not an error.
CurveBundle track_eigenvalues(const family::MatrixFamily& fam,
                              const std::vector<double>& grid, bool refine = true,
                              const Tolerances& tol = {});

/// Adds gauge-fixed eigenvector frames to a tracked bundle. Within each
/// cluster block the new frame minimizes the Frobenius distance to the
/// previous one over right-unitary transformations (orthogonal Procrustes).
/// Throws ClusterMismatch when the bundle's values cannot be matched to the
/// fresh decomposition.
CurveBundle track_eigenvectors(const family::MatrixFamily& fam, CurveBundle bundle,
                               const Tolerances& tol = {});

/// Scans curve pairs whose gap dips below gap_tol * scale, brackets each
/// minimum, and estimates the contact order from normalized centered divided
/// differences of the curve difference. The infinite-order flag is advisory:
/// it fires when no order k <= crossing_kmax shows signal and the minimal gap
/// is consistent with zero.
std::vector<CrossingReport> crossing_detect(const family::MatrixFamily& fam,
                                            const CurveBundle& bundle, double gap_tol,
                                            const Tolerances& tol = {});

/// |lambda'(t+s) - lambda'(t)| / s^alpha for the curve with the given sorted
/// index, derivatives by central differences with step holder_step_factor*s.
/// Offsets are evaluated anchor-relative so segment families keep full
/// precision even when s is below the ulp of t.
double hoelder_quotient(const family::MatrixFamily& fam, int curve_index, double t,
                        double s, double alpha, const Tolerances& tol = {});

/// Ascending-sorted curves next to the tracked ones, with first divided
/// difference jumps of both labelings at every interior grid point.
struct SortedComparison {
  std::vector<std::vector<Complex>> sorted_curves;
  // jumps[k][i]: |forward DD - backward DD| of curve i at interior point k
  // (k = 1 .. point_count-2).
  std::vector<std::vector<double>> tracked_jumps;
  std::vector<std::vector<double>> sorted_jumps;
};

SortedComparison sorted_vs_smooth(const CurveBundle& bundle);

/// Eigenvalues of one family member under the declared structure; the shared
/// entry point for tracking and validation.
Vector structured_eigenvalues(const Matrix& a, family::Structure structure,
                              const Tolerances& tol = {});

/// Assignment of fresh values to predictions: monotone pairing when both
/// tuples are real (exact for the min-max metric on the line), bottleneck
/// assignment otherwise. Returns sigma with fresh[sigma[i]] assigned to
/// prediction i, the max pairing distance, and the minimal gap among fresh.
struct Assignment {
  std::vector<int> sigma;
  double distance = 0.0;
  double min_gap = 0.0;
};

Assignment continuation_assignment(const Vector& predicted, const Vector& fresh,
                                   const Tolerances& tol = {});

}  // namespace eigencurve::tracking
