#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "eigencurve/matrix.hpp"
#include "eigencurve/poly.hpp"
#include "eigencurve/tolerances.hpp"

namespace eigencurve::family {

enum class Structure { hermitian, normal, general };

std::string to_string(Structure s);
std::optional<Structure> structure_from_string(const std::string& s);

/// Declared smoothness of a family. Metadata only: nothing computational
/// depends on it, diagnostics merely report it back.
enum class SmoothnessClass {
  analytic,
  quasianalytic,
  denjoy_carleman,
  smooth,
  hoelder,
  unspecified,
};

std::string to_string(SmoothnessClass c);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double t) const { return t >= lo && t <= hi; }
  double width() const { return hi - lo; }
};

/// One exact segment of a glued family: A(anchor + s) = a + s*b for
/// |s| <= half_width.
struct SegmentSpec {
  int index = 0;
  double anchor = 0.0;
  double half_width = 0.0;
  Matrix a;
  Matrix b;
};

/// A one-parameter matrix family t -> A(t) on a real interval. Immutable
/// after construction; evaluation is deterministic and side-effect free.
class MatrixFamily {
 public:
  using Evaluator = std::function<Matrix(double)>;
  /// Evaluates A(anchor + offset) without forming anchor + offset when the
  /// generator can do better; used where offsets fall below the ulp of the
  /// anchor (the glued segment generators are exact in the offset).
  using LocalEvaluator = std::function<Matrix(double, double)>;

  MatrixFamily(int size, Interval domain, Structure structure, Evaluator evaluator);

  Matrix operator()(double t) const;
  Matrix at_offset(double anchor, double offset) const;

  int size() const { return size_; }
  const Interval& domain() const { return domain_; }
  Structure structure() const { return structure_; }

  SmoothnessClass claimed_class() const { return claimed_; }
  double hoelder_alpha() const { return alpha_; }
  MatrixFamily& set_claimed_class(SmoothnessClass c, double alpha = 0.0);

  const std::map<std::string, std::string>& metadata() const { return metadata_; }
  MatrixFamily& add_metadata(std::string key, std::string value);

  /// Segment list for glued families, nullptr otherwise.
  const std::vector<SegmentSpec>* segments() const {
    return segments_ ? segments_.get() : nullptr;
  }

  /// Checks the declared structural invariant of a single matrix; returns the
  /// measured defect and whether it passes.
  static bool structure_holds(const Matrix& m, Structure s, const Tolerances& tol,
                              double* defect = nullptr);

 private:
  friend MatrixFamily glued_family(std::vector<SegmentSpec> segments,
                                   double blend_margin, Structure structure,
                                   const Tolerances& tol);
  int size_;
  Interval domain_;
  Structure structure_;
  Evaluator evaluator_;
  LocalEvaluator local_;
  SmoothnessClass claimed_ = SmoothnessClass::unspecified;
  double alpha_ = 0.0;
  std::map<std::string, std::string> metadata_;
  std::shared_ptr<const std::vector<SegmentSpec>> segments_;
};

/// Glues exact affine segments with C^2 quintic blends between them and
/// constant extension outside. Segments must be pairwise disjoint after
/// inflation by blend_margin; anchors strictly increasing.
MatrixFamily glued_family(std::vector<SegmentSpec> segments, double blend_margin,
                          Structure structure = Structure::hermitian,
                          const Tolerances& tol = {});

/// The glued cascade of shrinking 2x2 real-symmetric segments
///   A_n = 2^(-n^2) diag(1,-1),  B_n = (2^(-n^2)/s_n) offdiag(1,1),
///   s_n = 2^(n-n^2),
/// anchored at t_n = 3 - 3/n with the full curve-lemma half-width 1/n^2.
/// Its eigenvalue curves on segment n are +-2^(-n^2) sqrt(1+(s/s_n)^2); the
/// Hoelder quotients of their derivatives diverge along the anchor sequence
/// and the eigenvector field admits no continuous selection.
MatrixFamily cascade_family(int n_max);

/// Anchor t_n and inner scale s_n of the cascade segments.
double cascade_anchor(int n);
double cascade_scale(int n);

/// Dirichlet discretization of -d^2/dx^2 + V(t,x) on (a,b): second-order
/// central differences on grid_points interior points, mesh
/// h = (b-a)/(grid_points+1).
MatrixFamily schrodinger_family(std::function<double(double, double)> potential,
                                int grid_points, Interval space,
                                Interval t_domain = {0.0, 1.0});

/// Entries are polynomials in t, evaluated by Horner.
MatrixFamily polynomial_entry_family(std::vector<std::vector<Poly>> entries,
                                     Structure structure, Interval domain);

/// Evaluates the family on a strictly increasing grid, validating the
/// declared structure at every point. Throws StructureViolation with the
/// offending t.
std::vector<Matrix> sample(const MatrixFamily& fam, const std::vector<double>& grid,
                           const Tolerances& tol = {});

}  // namespace eigencurve::family
