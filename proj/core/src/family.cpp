#include "eigencurve/family.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "eigencurve/errors.hpp"
#include "eigencurve/linalg.hpp"

namespace eigencurve::family {

std::string to_string(Structure s) {
  switch (s) {
    case Structure::hermitian: return "hermitian";
    case Structure::normal: return "normal";
    case Structure::general: return "general";
  }
  return "general";
}

std::optional<Structure> structure_from_string(const std::string& s) {
  if (s == "hermitian") return Structure::hermitian;
  if (s == "normal") return Structure::normal;
  if (s == "general") return Structure::general;
  return std::nullopt;
}

std::string to_string(SmoothnessClass c) {
  switch (c) {
    case SmoothnessClass::analytic: return "analytic";
    case SmoothnessClass::quasianalytic: return "quasianalytic";
    case SmoothnessClass::denjoy_carleman: return "denjoy_carleman";
    case SmoothnessClass::smooth: return "smooth";
    case SmoothnessClass::hoelder: return "hoelder";
    case SmoothnessClass::unspecified: return "unspecified";
  }
  return "unspecified";
}

MatrixFamily::MatrixFamily(int size, Interval domain, Structure structure,
                           Evaluator evaluator)
    : size_(size),
      domain_(domain),
      structure_(structure),
      evaluator_(std::move(evaluator)) {
  if (size <= 0) throw std::invalid_argument("family size must be positive");
  if (!(domain.lo < domain.hi))
    throw std::invalid_argument("family domain must be a nonempty interval");
  if (!evaluator_) throw std::invalid_argument("family needs an evaluator");
}

Matrix MatrixFamily::operator()(double t) const {
  Matrix m = evaluator_(t);
  if (m.rows() != size_ || m.cols() != size_) {
    std::ostringstream os;
    os << "family evaluator returned " << m.rows() << "x" << m.cols()
       << " instead of " << size_ << "x" << size_ << " at t = " << t;
    throw std::logic_error(os.str());
  }
  m.require_finite("family evaluation");
  return m;
}

Matrix MatrixFamily::at_offset(double anchor, double offset) const {
  if (local_) {
    Matrix m = local_(anchor, offset);
    m.require_finite("family local evaluation");
    return m;
  }
  return (*this)(anchor + offset);
}

MatrixFamily& MatrixFamily::set_claimed_class(SmoothnessClass c, double alpha) {
  claimed_ = c;
  alpha_ = alpha;
  return *this;
}

MatrixFamily& MatrixFamily::add_metadata(std::string key, std::string value) {
  metadata_.emplace(std::move(key), std::move(value));
  return *this;
}

bool MatrixFamily::structure_holds(const Matrix& m, Structure s, const Tolerances& tol,
                                   double* defect_out) {
  double defect = 0.0;
  double gate = 0.0;
  switch (s) {
    case Structure::hermitian:
      defect = (m - m.adjoint()).frobenius_norm();
      gate = tol.family_structure * m.frobenius_norm();
      break;
    case Structure::normal: {
      defect = normality_defect(m);
      const double f = m.frobenius_norm();
      gate = tol.family_structure * f * f;
      break;
    }
    case Structure::general:
      if (defect_out) *defect_out = 0.0;
      return true;
  }
  if (defect_out) *defect_out = defect;
  return defect <= gate || m.frobenius_norm() == 0.0;
}

namespace {

// Quintic Hermite basis on [0,1] with zero second derivatives at both ends.
double h00(double u) { return 1.0 + u * u * u * (-10.0 + u * (15.0 - 6.0 * u)); }
double h01(double u) { return u * u * u * (10.0 + u * (-15.0 + 6.0 * u)); }
double h10(double u) { return u + u * u * u * (-6.0 + u * (8.0 - 3.0 * u)); }
double h11(double u) { return u * u * u * (-4.0 + u * (7.0 - 3.0 * u)); }

Matrix segment_value(const SegmentSpec& s, double offset) {
  return s.a + offset * s.b;
}

struct GluedData {
  std::vector<SegmentSpec> segments;  // sorted by anchor
  int size = 0;
};

// Index of the segment whose exact window contains t, or -1.
int containing_segment(const GluedData& g, double t) {
  int lo = 0, hi = static_cast<int>(g.segments.size()) - 1;
  while (lo <= hi) {
    const int mid = lo + (hi - lo) / 2;
    const SegmentSpec& s = g.segments[mid];
    if (t < s.anchor - s.half_width)
      hi = mid - 1;
    else if (t > s.anchor + s.half_width)
      lo = mid + 1;
    else
      return mid;
  }
  return -1;
}

Matrix glued_eval(const GluedData& g, double t) {
  const int idx = containing_segment(g, t);
  if (idx >= 0) {
    const SegmentSpec& s = g.segments[idx];
    return segment_value(s, t - s.anchor);
  }
  const SegmentSpec& first = g.segments.front();
  const SegmentSpec& last = g.segments.back();
  if (t < first.anchor - first.half_width) return segment_value(first, -first.half_width);
  if (t > last.anchor + last.half_width) return segment_value(last, last.half_width);

  // Strictly between two segments: C^2 quintic blend of the endpoint values
  // and slopes (segment second derivatives are zero).
  auto it = std::upper_bound(
      g.segments.begin(), g.segments.end(), t,
      [](double v, const SegmentSpec& s) { return v < s.anchor; });
  const SegmentSpec& right = *it;
  const SegmentSpec& left = *(it - 1);
  const double t0 = left.anchor + left.half_width;
  const double t1 = right.anchor - right.half_width;
  const double span = t1 - t0;
  const double u = (t - t0) / span;
  const Matrix p0 = segment_value(left, left.half_width);
  const Matrix p1 = segment_value(right, -right.half_width);
  return h00(u) * p0 + h01(u) * p1 + (span * h10(u)) * left.b +
         (span * h11(u)) * right.b;
}

}  // namespace

MatrixFamily glued_family(std::vector<SegmentSpec> segments, double blend_margin,
                          Structure structure, const Tolerances& tol) {
  if (segments.empty()) throw std::invalid_argument("glued_family: no segments");
  if (blend_margin < 0.0) throw std::invalid_argument("glued_family: negative margin");
  std::sort(segments.begin(), segments.end(),
            [](const SegmentSpec& x, const SegmentSpec& y) { return x.anchor < y.anchor; });
  const int n = segments.front().a.rows();
  for (const auto& s : segments) {
    if (s.half_width <= 0.0)
      throw std::invalid_argument("glued_family: nonpositive half width");
    if (!s.a.square() || !s.b.square() || s.a.rows() != n || s.b.rows() != n)
      throw std::invalid_argument("glued_family: segment matrices must be same-size square");
    s.a.require_finite("glued_family");
    s.b.require_finite("glued_family");
  }
  for (size_t i = 0; i + 1 < segments.size(); ++i) {
    const auto& a = segments[i];
    const auto& b = segments[i + 1];
    if (!(a.anchor < b.anchor))
      throw OverlappingSegments("glued_family: anchors not strictly increasing");
    if (a.anchor + a.half_width + blend_margin >= b.anchor - b.half_width - blend_margin) {
      std::ostringstream os;
      os << "glued_family: segments at anchors " << a.anchor << " and " << b.anchor
         << " overlap after margin inflation";
      throw OverlappingSegments(os.str());
    }
  }

  auto data = std::make_shared<GluedData>();
  data->segments = std::move(segments);
  data->size = n;

  const Interval domain{data->segments.front().anchor - data->segments.front().half_width,
                        data->segments.back().anchor + data->segments.back().half_width};
  MatrixFamily fam(n, domain, structure,
                   [data](double t) { return glued_eval(*data, t); });
  fam.local_ = [data](double anchor, double offset) {
    const int idx = containing_segment(*data, anchor);
    if (idx >= 0) {
      const SegmentSpec& s = data->segments[idx];
      const double local = (anchor - s.anchor) + offset;
      if (std::fabs(local) <= s.half_width) return segment_value(s, local);
    }
    return glued_eval(*data, anchor + offset);
  };
  fam.segments_ = std::shared_ptr<const std::vector<SegmentSpec>>(data, &data->segments);
  (void)tol;
  return fam;
}

double cascade_anchor(int n) { return 3.0 - 3.0 / static_cast<double>(n); }

double cascade_scale(int n) { return std::ldexp(1.0, n - n * n); }

MatrixFamily cascade_family(int n_max) {
  if (n_max < 1 || n_max > 30)
    throw std::invalid_argument("cascade_family: n_max must be in [1, 30]");
  std::vector<SegmentSpec> segments;
  segments.reserve(n_max);
  for (int n = 1; n <= n_max; ++n) {
    const double an = std::ldexp(1.0, -n * n);
    const double bn = std::ldexp(1.0, -n);  // = 2^(-n^2) / s_n
    SegmentSpec s;
    s.index = n;
    s.anchor = cascade_anchor(n);
    s.half_width = 1.0 / (static_cast<double>(n) * n);
    s.a = Matrix{{Complex(an, 0.0), Complex(0.0, 0.0)},
                 {Complex(0.0, 0.0), Complex(-an, 0.0)}};
    s.b = Matrix{{Complex(0.0, 0.0), Complex(bn, 0.0)},
                 {Complex(bn, 0.0), Complex(0.0, 0.0)}};
    segments.push_back(std::move(s));
  }
  MatrixFamily fam = glued_family(std::move(segments), 0.0, Structure::hermitian);
  fam.set_claimed_class(SmoothnessClass::denjoy_carleman);
  fam.add_metadata("generator", "cascade");
  fam.add_metadata("n_max", std::to_string(n_max));
  return fam;
}

MatrixFamily schrodinger_family(std::function<double(double, double)> potential,
                                int grid_points, Interval space, Interval t_domain) {
  if (grid_points < 3)
    throw std::invalid_argument("schrodinger_family: need at least 3 grid points");
  if (!(space.lo < space.hi))
    throw std::invalid_argument("schrodinger_family: empty space interval");
  if (!potential) potential = [](double, double) { return 0.0; };
  const int m = grid_points;
  const double h = space.width() / (m + 1);
  const double off = -1.0 / (h * h);
  const double diag = 2.0 / (h * h);
  const double a = space.lo;
  auto eval = [=](double t) {
    Matrix mat(m, m);
    for (int j = 0; j < m; ++j) {
      const double x = a + (j + 1) * h;
      mat(j, j) = Complex(diag + potential(t, x), 0.0);
      if (j + 1 < m) {
        mat(j, j + 1) = Complex(off, 0.0);
        mat(j + 1, j) = Complex(off, 0.0);
      }
    }
    return mat;
  };
  MatrixFamily fam(m, t_domain, Structure::hermitian, eval);
  fam.add_metadata("generator", "schrodinger");
  fam.add_metadata("mesh", std::to_string(h));
  return fam;
}

MatrixFamily polynomial_entry_family(std::vector<std::vector<Poly>> entries,
                                     Structure structure, Interval domain) {
  const int n = static_cast<int>(entries.size());
  if (n == 0) throw std::invalid_argument("polynomial_entry_family: empty entries");
  for (const auto& row : entries)
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("polynomial_entry_family: entries must be square");
  auto data = std::make_shared<const std::vector<std::vector<Poly>>>(std::move(entries));
  auto eval = [data, n](double t) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = (*data)[i][j](t);
    return m;
  };
  MatrixFamily fam(n, domain, structure, eval);
  fam.add_metadata("generator", "polynomial_entries");
  return fam;
}

std::vector<Matrix> sample(const MatrixFamily& fam, const std::vector<double>& grid,
                           const Tolerances& tol) {
  for (size_t i = 0; i + 1 < grid.size(); ++i)
    if (!(grid[i] < grid[i + 1]))
      throw std::invalid_argument("sample: grid must be strictly increasing");
  std::vector<Matrix> out;
  out.reserve(grid.size());
  for (double t : grid) {
    Matrix m = fam(t);
    double defect = 0.0;
    if (!MatrixFamily::structure_holds(m, fam.structure(), tol, &defect)) {
      std::ostringstream os;
      os << "structure " << to_string(fam.structure()) << " violated at t = " << t
         << " (defect " << defect << ")";
      throw StructureViolation(t, os.str());
    }
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace eigencurve::family
