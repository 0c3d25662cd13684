#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eigencurve/family.hpp"
#include "eigencurve/matrix.hpp"
#include "eigencurve/tolerances.hpp"

namespace eigencurve::riesz {

/// Closed integration contour in the complex plane: a circle or a simple
/// closed polygon. node_count is the base quadrature resolution (a power of
/// two, at least 16); refinement doubles it.
class Contour {
 public:
  enum class Kind { circle, polygon };

  static Contour circle(Complex center, double radius, int node_count = 16);
  static Contour polygon(std::vector<Complex> vertices, int node_count = 16);

  Kind kind() const { return kind_; }
  Complex center() const { return center_; }
  double radius() const { return radius_; }
  const std::vector<Complex>& vertices() const { return vertices_; }
  int node_count() const { return node_count_; }

  /// Total nodes at refinement level l (level 0 = node_count).
  int nodes_at(int level) const;
  /// Quadrature rule for a contour integral of f dz at the given level:
  /// integral ~ sum w_j f(z_j), traversed counterclockwise.
  void rule(int level, std::vector<Complex>& nodes, std::vector<Complex>& weights) const;

  double distance(Complex z) const;
  bool encloses(Complex z) const;

 private:
  Kind kind_ = Kind::circle;
  Complex center_;
  double radius_ = 0.0;
  std::vector<Complex> vertices_;
  int node_count_ = 16;
};

struct Projector {
  Matrix p;
  int rank = 0;
  double idempotency_defect = 0.0;
  double hermitian_defect = 0.0;
  int nodes_used = 0;
  double last_delta = 0.0;  // ||P_(2M) - P_M||_F at acceptance
  double prev_delta = 0.0;  // the doubling step before that
};

/// (A - zI)^{-1} by LU column solves. Throws SpectrumHit (carrying z) when
/// pivot health signals z is effectively on the spectrum.
Matrix resolvent(const Matrix& a, Complex z, const Tolerances& tol = {});

/// Riesz spectral projector -(1/2 pi i) contour integral of the resolvent,
/// by trapezoidal quadrature (circles) or per-edge Gauss-Legendre panels
/// (polygons), with node doubling until ||dP||_F < quad_delta.
Projector riesz_projector(const family::MatrixFamily& fam, double t,
                          const Contour& contour, const Tolerances& tol = {});

/// Default contour around a cluster of eigenvalues of A(t0): a circle at the
/// cluster mean with radius half the distance to the nearest external
/// eigenvalue. The cluster is the index range [first, first + count) in the
/// (re, im)-sorted spectrum.
Contour cluster_contour(const family::MatrixFamily& fam, double t0, int first,
                        int count, const Tolerances& tol = {});

struct RankScan {
  std::vector<double> grid;
  std::vector<int> ranks;
  std::vector<Projector> projectors;
};

/// Projector ranks across a grid. A rank change means the contour stopped
/// isolating the cluster and raises ContourBreach with the interval.
RankScan rank_constancy_scan(const family::MatrixFamily& fam,
                             const std::vector<double>& grid, const Contour& contour,
                             const Tolerances& tol = {});

struct FrameEvent {
  double t = 0.0;
  std::string detail;
};

struct FrameBundle {
  std::vector<double> grid;
  std::vector<Matrix> frames;  // n x N orthonormal columns per grid point
  std::vector<FrameEvent> restarts;
  int rank = 0;
};

/// Orthonormal frames for the projector range along the grid, built by
/// Gram-Schmidt on P(t_k) applied to fixed seed vectors. Seeds default to the
/// dominant right singular vectors of P(t_0) and are re-chosen (with a logged
/// restart) when their images degrade below the independence threshold.
FrameBundle local_frame(const family::MatrixFamily& fam, const std::vector<double>& grid,
                        const Contour& contour,
                        const std::optional<std::vector<Vector>>& seeds = std::nullopt,
                        const Tolerances& tol = {});

/// F* A(t) F for an orthonormal frame spanning an A(t)-invariant subspace.
/// Throws NotInvariant when ||(I - FF*) A F|| exceeds the gate.
Matrix compressed_matrix(const family::MatrixFamily& fam, double t, const Matrix& frame,
                         const Tolerances& tol = {});

}  // namespace eigencurve::riesz
