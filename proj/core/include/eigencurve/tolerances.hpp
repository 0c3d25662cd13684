#pragma once

#include <string>
#include <utility>
#include <vector>

namespace eigencurve {

/// Every numerical threshold used by the library, with its default value.
/// All entries can be overridden by key (the CLI exposes them as
/// `--tol key=value`); reports echo the effective values.
struct Tolerances {
  // core dense kernels
  double hermitian_check = 1e-12;   // relative ||A - A*||_F gate
  double normality_check = 1e-10;   // relative (to ||A||_F^2) defect gate
  double eigen_residual = 1e-10;    // relative ||AV - V diag|| acceptance
  double orthonormality = 1e-10;    // ||V*V - I||_F <= orthonormality * n
  double cluster_gap = 1e-8;        // H-eigenvalue cluster split, times ||A||_F
  double gs_independence = 1e-8;    // smallest/largest singular value ratio
  double gs_orthonormality = 1e-12; // output frame Gram defect
  double lu_pivot = 1e-14;          // pivot floor, times ||A||_F
  double opnorm_rel = 1e-10;        // power iteration stop
  double family_structure = 1e-10;  // per-point structural defect gate

  // resolvents and projectors
  double resolvent_margin = 1e-10;  // min pivot health near spectrum
  double contour_margin = 1e-8;     // eigenvalue-to-contour distance, times scale
  double quad_delta = 1e-10;        // node-doubling stop on ||dP||_F
  double projector_idem = 1e-8;
  double projector_herm = 1e-8;
  double projector_commute = 1e-8;
  double trace_rank = 1e-6;
  double frame_restart = 1e-6;      // seed-independence restart threshold
  double invariance = 1e-8;         // ||(I-FF*)AF|| gate for compression

  // tracking and diagnostics
  double bundle_fidelity = 1e-9;    // curve multiset vs eigensolver, times scale
  double refine_gap_factor = 0.5;   // refine when match dist > factor * min gap
  double degenerate_gap = 1e-12;    // below this * scale, gaps count as zero
  double crossing_threshold = 1e-4; // normalized divided-difference signal
  double crossing_flat_gap = 1e-12; // gap_min gate for infinite-order flag
  double holder_step_factor = 1e-2; // derivative step, times s

  // polynomial machinery
  double exponent_residual = 1e-2;  // log10 regression residual gate
  double root_cluster = 1e-6;       // root grouping radius, times scale

  // integer knobs
  int jacobi_sweep_cap = 30;
  int quad_node_cap = 4096;
  int matching_cap = 64;
  int refine_depth = 12;
  int crossing_kmax = 8;
  int exponent_kmax = 12;

  /// Set a tolerance by key; returns false for unknown keys.
  bool set(const std::string& key, double value);

  /// Effective values as (key, value) pairs, in a fixed order.
  std::vector<std::pair<std::string, double>> entries() const;
};

}  // namespace eigencurve
