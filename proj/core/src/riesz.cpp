#include "eigencurve/riesz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "eigencurve/errors.hpp"
#include "eigencurve/linalg.hpp"

namespace eigencurve::riesz {

namespace {

constexpr double kPi = std::numbers::pi;

// 8-point Gauss-Legendre rule on [-1, 1].
constexpr double kGlx[8] = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
    -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
    0.7966664774136267,  0.9602898564975363};
constexpr double kGlw[8] = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
    0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
    0.2223810344533745, 0.1012285362903763};

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

double point_segment_distance(Complex z, Complex a, Complex b) {
  const Complex ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(z - a);
  double u = ((z - a).real() * ab.real() + (z - a).imag() * ab.imag()) / len2;
  u = std::clamp(u, 0.0, 1.0);
  return std::abs(z - (a + u * ab));
}

// Proper segment crossing test for the polygon simplicity check.
int orientation(Complex a, Complex b, Complex c) {
  const double v = (b.real() - a.real()) * (c.imag() - a.imag()) -
                   (b.imag() - a.imag()) * (c.real() - a.real());
  if (v > 0) return 1;
  if (v < 0) return -1;
  return 0;
}

bool segments_cross(Complex a, Complex b, Complex c, Complex d) {
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  return o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0;
}

}  // namespace

Contour Contour::circle(Complex center, double radius, int node_count) {
  if (!(radius > 0.0)) throw std::invalid_argument("contour: radius must be positive");
  if (node_count < 16 || !is_power_of_two(node_count))
    throw std::invalid_argument("contour: node_count must be a power of two >= 16");
  Contour c;
  c.kind_ = Kind::circle;
  c.center_ = center;
  c.radius_ = radius;
  c.node_count_ = node_count;
  return c;
}

Contour Contour::polygon(std::vector<Complex> vertices, int node_count) {
  if (vertices.size() < 3) throw std::invalid_argument("contour: polygon needs >= 3 vertices");
  if (node_count < 16 || !is_power_of_two(node_count))
    throw std::invalid_argument("contour: node_count must be a power of two >= 16");
  const int e = static_cast<int>(vertices.size());
  for (int i = 0; i < e; ++i) {
    for (int j = i + 1; j < e; ++j) {
      // adjacent edges share a vertex and may touch there
      if (j == i || (j + 1) % e == i || (i + 1) % e == j) continue;
      if (segments_cross(vertices[i], vertices[(i + 1) % e], vertices[j],
                         vertices[(j + 1) % e]))
        throw std::invalid_argument("contour: polygon is not simple");
    }
  }
  Contour c;
  c.kind_ = Kind::polygon;
  c.vertices_ = std::move(vertices);
  c.node_count_ = node_count;
  Complex mean = 0.0;
  for (const auto& v : c.vertices_) mean += v;
  c.center_ = mean / static_cast<double>(c.vertices_.size());
  return c;
}

int Contour::nodes_at(int level) const {
  if (kind_ == Kind::circle) return node_count_ << level;
  return static_cast<int>(vertices_.size()) * 8 * (1 << level);
}

void Contour::rule(int level, std::vector<Complex>& nodes,
                   std::vector<Complex>& weights) const {
  nodes.clear();
  weights.clear();
  if (kind_ == Kind::circle) {
    const int m = nodes_at(level);
    nodes.reserve(m);
    weights.reserve(m);
    for (int j = 0; j < m; ++j) {
      const double theta = 2.0 * kPi * j / m;
      const Complex e(std::cos(theta), std::sin(theta));
      nodes.push_back(center_ + radius_ * e);
      // dz = i r e^(i theta) d theta, d theta = 2 pi / m
      weights.push_back(Complex(0.0, 1.0) * radius_ * e * (2.0 * kPi / m));
    }
    return;
  }
  const int panels = 1 << level;
  const int e = static_cast<int>(vertices_.size());
  nodes.reserve(static_cast<size_t>(e) * panels * 8);
  weights.reserve(static_cast<size_t>(e) * panels * 8);
  for (int k = 0; k < e; ++k) {
    const Complex a = vertices_[k];
    const Complex b = vertices_[(k + 1) % e];
    const Complex step = (b - a) / static_cast<double>(panels);
    for (int p = 0; p < panels; ++p) {
      const Complex lo = a + static_cast<double>(p) * step;
      const Complex half = 0.5 * step;
      const Complex mid = lo + half;
      for (int g = 0; g < 8; ++g) {
        nodes.push_back(mid + kGlx[g] * half);
        weights.push_back(kGlw[g] * half);
      }
    }
  }
}

double Contour::distance(Complex z) const {
  if (kind_ == Kind::circle) return std::fabs(std::abs(z - center_) - radius_);
  double d = std::numeric_limits<double>::infinity();
  const int e = static_cast<int>(vertices_.size());
  for (int k = 0; k < e; ++k)
    d = std::min(d, point_segment_distance(z, vertices_[k], vertices_[(k + 1) % e]));
  return d;
}

bool Contour::encloses(Complex z) const {
  if (kind_ == Kind::circle) return std::abs(z - center_) < radius_;
  // even-odd ray crossing, horizontal ray to +infinity
  bool inside = false;
  const int e = static_cast<int>(vertices_.size());
  for (int k = 0; k < e; ++k) {
    const Complex a = vertices_[k];
    const Complex b = vertices_[(k + 1) % e];
    if ((a.imag() > z.imag()) != (b.imag() > z.imag())) {
      const double x =
          a.real() + (z.imag() - a.imag()) * (b.real() - a.real()) / (b.imag() - a.imag());
      if (x > z.real()) inside = !inside;
    }
  }
  return inside;
}

Matrix resolvent(const Matrix& a, Complex z, const Tolerances& tol) {
  if (!a.square()) throw std::invalid_argument("resolvent: matrix must be square");
  const int n = a.rows();
  Matrix shifted = a;
  for (int i = 0; i < n; ++i) shifted(i, i) -= z;
  LuFactorization lu(shifted, tol);
  const double scale = std::max(a.frobenius_norm(), shifted.frobenius_norm());
  if (lu.singular() || lu.min_pivot() <= tol.resolvent_margin * scale) {
    std::ostringstream os;
    os << "resolvent: z = (" << z.real() << ", " << z.imag()
       << ") is numerically on the spectrum (min pivot " << lu.min_pivot() << ")";
    throw SpectrumHit(z, os.str());
  }
  return lu.inverse();
}

namespace {

// Eigenvalues of A for the contour-separation gate. Only Hermitian or normal
// families get the exact eigenvalue check; general ones rely on pivot health.
std::optional<Vector> spectrum_if_structured(const Matrix& a,
                                             family::Structure structure,
                                             const Tolerances& tol) {
  switch (structure) {
    case family::Structure::hermitian:
      return hermitian_eigen(a, tol).values;
    case family::Structure::normal:
      return normal_eigen(a, tol).values;
    case family::Structure::general:
      return std::nullopt;
  }
  return std::nullopt;
}

Matrix quadrature_sum(const Matrix& a, const std::vector<Complex>& nodes,
                      const std::vector<Complex>& weights, const Tolerances& tol) {
  const int n = a.rows();
  Matrix sum(n, n);
  for (size_t j = 0; j < nodes.size(); ++j) {
    const Matrix r = resolvent(a, nodes[j], tol);
    const Complex f = weights[j] * Complex(0.0, 1.0) / (2.0 * kPi);  // -1/(2 pi i) w
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) sum(p, q) += f * r(p, q);
  }
  return sum;
}

int projector_rank(const Matrix& p, const Tolerances& tol) {
  // Eigenvalues of a converged projector sit near {0, 1}; count the ones
  // within 1/2 of 1. The Hermitian part shifts them by at most the
  // quadrature-level asymmetry, which is far below the 1/2 threshold.
  const Matrix sym = (p + p.adjoint()) * 0.5;
  const SpectralDecomposition d = hermitian_eigen(sym, tol);
  int rank = 0;
  for (const auto& v : d.values)
    if (std::fabs(v.real() - 1.0) < 0.5) ++rank;
  return rank;
}

}  // namespace

Projector riesz_projector(const family::MatrixFamily& fam, double t,
                          const Contour& contour, const Tolerances& tol) {
  const Matrix a = fam(t);
  const double scale = a.frobenius_norm();

  if (auto spec = spectrum_if_structured(a, fam.structure(), tol)) {
    for (const auto& ev : *spec) {
      if (contour.distance(ev) < tol.contour_margin * std::max(scale, 1e-300)) {
        std::ostringstream os;
        os << "riesz_projector: eigenvalue (" << ev.real() << ", " << ev.imag()
           << ") within " << tol.contour_margin << " * scale of the contour at t = " << t;
        throw EigenvalueOnContour(t, os.str());
      }
    }
  }

  std::vector<Complex> nodes, weights;
  Projector out;
  Matrix prev;
  double prev_delta = 0.0;
  int level = 0;
  try {
    contour.rule(level, nodes, weights);
    prev = quadrature_sum(a, nodes, weights, tol);
    for (;;) {
      ++level;
      if (contour.nodes_at(level) > tol.quad_node_cap) {
        std::ostringstream os;
        os << "riesz_projector: no convergence below " << tol.quad_delta << " with "
           << contour.nodes_at(level - 1) << " nodes at t = " << t;
        throw QuadratureStall(os.str());
      }
      contour.rule(level, nodes, weights);
      Matrix cur = quadrature_sum(a, nodes, weights, tol);
      const double delta = (cur - prev).frobenius_norm();
      if (delta < tol.quad_delta) {
        out.p = std::move(cur);
        out.nodes_used = contour.nodes_at(level);
        out.last_delta = delta;
        out.prev_delta = prev_delta;
        break;
      }
      prev = std::move(cur);
      prev_delta = delta;
    }
  } catch (const SpectrumHit& hit) {
    std::ostringstream os;
    os << "riesz_projector: quadrature node hit the spectrum at t = " << t << ": "
       << hit.what();
    throw EigenvalueOnContour(t, os.str());
  }

  out.idempotency_defect = (out.p * out.p - out.p).frobenius_norm();
  out.hermitian_defect = (out.p - out.p.adjoint()).frobenius_norm();
  if (out.idempotency_defect > tol.projector_idem) {
    std::ostringstream os;
    os << "riesz_projector: idempotency defect " << out.idempotency_defect
       << " exceeds " << tol.projector_idem << " at t = " << t;
    throw QuadratureStall(os.str());
  }
  out.rank = projector_rank(out.p, tol);
  return out;
}

Contour cluster_contour(const family::MatrixFamily& fam, double t0, int first,
                        int count, const Tolerances& tol) {
  const Matrix a = fam(t0);
  const auto spec = spectrum_if_structured(a, fam.structure(), tol);
  if (!spec)
    throw std::invalid_argument("cluster_contour: family must be hermitian or normal");
  const int n = static_cast<int>(spec->size());
  if (first < 0 || count < 1 || first + count > n)
    throw std::invalid_argument("cluster_contour: cluster range out of bounds");
  if (count == n)
    throw std::invalid_argument("cluster_contour: cluster must leave an exterior");
  Complex center = 0.0;
  for (int i = first; i < first + count; ++i) center += (*spec)[i];
  center /= static_cast<double>(count);
  double min_ext = std::numeric_limits<double>::infinity();
  double max_int = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = std::abs((*spec)[i] - center);
    if (i >= first && i < first + count)
      max_int = std::max(max_int, d);
    else
      min_ext = std::min(min_ext, d);
  }
  const double radius = 0.5 * min_ext;
  if (!(radius > max_int)) {
    std::ostringstream os;
    os << "cluster_contour: cluster at t0 = " << t0
       << " is not isolated (spread " << max_int << ", radius " << radius << ")";
    throw EigenvalueOnContour(t0, os.str());
  }
  return Contour::circle(center, radius);
}

RankScan rank_constancy_scan(const family::MatrixFamily& fam,
                             const std::vector<double>& grid, const Contour& contour,
                             const Tolerances& tol) {
  if (grid.empty()) throw std::invalid_argument("rank_constancy_scan: empty grid");
  RankScan scan;
  scan.grid = grid;
  scan.ranks.reserve(grid.size());
  scan.projectors.reserve(grid.size());
  for (size_t k = 0; k < grid.size(); ++k) {
    scan.projectors.push_back(riesz_projector(fam, grid[k], contour, tol));
    scan.ranks.push_back(scan.projectors.back().rank);
    if (k > 0 && scan.ranks[k] != scan.ranks[k - 1]) {
      std::ostringstream os;
      os << "rank changed from " << scan.ranks[k - 1] << " to " << scan.ranks[k]
         << " on (" << grid[k - 1] << ", " << grid[k]
         << "): the contour stopped isolating the cluster";
      throw ContourBreach(grid[k - 1], grid[k], os.str());
    }
  }
  return scan;
}

namespace {

std::vector<Vector> dominant_right_singular_vectors(const Matrix& p, int count,
                                                    const Tolerances& tol) {
  const SpectralDecomposition d = hermitian_eigen(p.adjoint() * p, tol);
  std::vector<Vector> seeds;
  seeds.reserve(count);
  const int n = p.cols();
  for (int j = 0; j < count; ++j) seeds.push_back(d.vectors.col(n - 1 - j));
  return seeds;
}

// sigma_min / sigma_max of the column set, via the Gram matrix.
double independence_ratio(const std::vector<Vector>& w, const Tolerances& tol) {
  const int m = static_cast<int>(w.size());
  Matrix gram(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) gram(i, j) = dot(w[i], w[j]);
  gram = (gram + gram.adjoint()) * 0.5;
  const SpectralDecomposition d = hermitian_eigen(gram, tol);
  const double hi = std::max(d.values.back().real(), 0.0);
  const double lo = std::max(d.values.front().real(), 0.0);
  if (hi == 0.0) return 0.0;
  return std::sqrt(lo / hi);
}

}  // namespace

FrameBundle local_frame(const family::MatrixFamily& fam, const std::vector<double>& grid,
                        const Contour& contour,
                        const std::optional<std::vector<Vector>>& seeds_in,
                        const Tolerances& tol) {
  const RankScan scan = rank_constancy_scan(fam, grid, contour, tol);
  const int rank = scan.ranks.front();
  if (rank == 0)
    throw std::invalid_argument("local_frame: contour encloses no eigenvalue");

  FrameBundle bundle;
  bundle.grid = grid;
  bundle.rank = rank;
  bundle.frames.reserve(grid.size());

  std::vector<Vector> seeds;
  if (seeds_in) {
    if (static_cast<int>(seeds_in->size()) != rank)
      throw std::invalid_argument("local_frame: seed count must equal the rank");
    seeds = *seeds_in;
  } else {
    seeds = dominant_right_singular_vectors(scan.projectors.front().p, rank, tol);
  }

  for (size_t k = 0; k < grid.size(); ++k) {
    const Matrix& p = scan.projectors[k].p;
    std::vector<Vector> images(rank);
    for (int i = 0; i < rank; ++i) images[i] = p * seeds[i];
    if (independence_ratio(images, tol) < tol.frame_restart) {
      seeds = dominant_right_singular_vectors(p, rank, tol);
      for (int i = 0; i < rank; ++i) images[i] = p * seeds[i];
      std::ostringstream os;
      os << "seed independence below " << tol.frame_restart << ", seeds re-chosen";
      bundle.restarts.push_back({grid[k], os.str()});
    }
    std::vector<Vector> frame;
    try {
      frame = gram_schmidt(images, tol);
    } catch (const RankDeficient& e) {
      std::ostringstream os;
      os << "local_frame at t = " << grid[k] << ": " << e.what();
      throw RankDeficient(e.first_dependent_index, os.str());
    }
    Matrix f(fam.size(), rank);
    for (int j = 0; j < rank; ++j) f.set_col(j, frame[j]);
    bundle.frames.push_back(std::move(f));
  }
  return bundle;
}

Matrix compressed_matrix(const family::MatrixFamily& fam, double t, const Matrix& frame,
                         const Tolerances& tol) {
  const Matrix a = fam(t);
  if (frame.rows() != a.rows())
    throw std::invalid_argument("compressed_matrix: frame/family size mismatch");
  const int nc = frame.cols();
  const Matrix gram_defect = frame.adjoint() * frame - Matrix::identity(nc);
  if (gram_defect.frobenius_norm() > tol.orthonormality * std::max(1, nc)) {
    std::ostringstream os;
    os << "compressed_matrix: frame is not orthonormal (defect "
       << gram_defect.frobenius_norm() << ")";
    throw NotInvariant(os.str());
  }
  const Matrix af = a * frame;
  const Matrix compressed = frame.adjoint() * af;
  const Matrix defect = af - frame * compressed;  // (I - FF*) A F
  const double gate = tol.invariance * std::max(a.frobenius_norm(), 1e-300);
  if (defect.frobenius_norm() > gate) {
    std::ostringstream os;
    os << "compressed_matrix: ||(I-FF*)AF|| = " << defect.frobenius_norm()
       << " exceeds " << tol.invariance << " * ||A|| at t = " << t;
    throw NotInvariant(os.str());
  }
  return compressed;
}

}  // namespace eigencurve::riesz
