#include "eigencurve/tracking.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "eigencurve/errors.hpp"
#include "eigencurve/linalg.hpp"
#include "eigencurve/matching.hpp"

namespace eigencurve::tracking {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool all_real(const Vector& v) {
  for (const auto& z : v)
    if (z.imag() != 0.0) return false;
  return true;
}

// Lagrange extrapolation through the last min(3, size) samples. One sample
// degenerates to nearest-neighbor prediction.
Complex extrapolate(const std::vector<double>& ts, const std::vector<Complex>& vals,
                    double t) {
  const int m = static_cast<int>(ts.size());
  const int k = std::min(3, m);
  Complex acc = 0.0;
  for (int i = m - k; i < m; ++i) {
    Complex term = vals[i];
    for (int j = m - k; j < m; ++j) {
      if (j == i) continue;
      term *= (t - ts[j]) / (ts[i] - ts[j]);
    }
    acc += term;
  }
  return acc;
}

double min_pairwise_gap(const Vector& v) {
  double g = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = i + 1; j < v.size(); ++j) g = std::min(g, std::abs(v[i] - v[j]));
  return g;
}

}  // namespace

Vector structured_eigenvalues(const Matrix& a, family::Structure structure,
                              const Tolerances& tol) {
  switch (structure) {
    case family::Structure::hermitian:
      return hermitian_eigen(a, tol).values;
    case family::Structure::normal:
      return normal_eigen(a, tol).values;
    case family::Structure::general:
      break;
  }
  throw std::invalid_argument("structured_eigenvalues: general families have no structured solver");
}

Assignment continuation_assignment(const Vector& predicted, const Vector& fresh,
                                   const Tolerances& tol) {
  if (predicted.size() != fresh.size())
    throw LengthMismatch("continuation_assignment: tuple sizes differ");
  const int n = static_cast<int>(predicted.size());
  Assignment out;
  out.sigma.resize(n);
  out.min_gap = min_pairwise_gap(fresh);
  if (n == 0) return out;

  if (all_real(predicted) && all_real(fresh)) {
    // Monotone pairing is an exact bottleneck optimum for real tuples.
    std::vector<int> po(n), fo(n);
    std::iota(po.begin(), po.end(), 0);
    std::iota(fo.begin(), fo.end(), 0);
    std::stable_sort(po.begin(), po.end(), [&](int a, int b) {
      return predicted[a].real() < predicted[b].real();
    });
    std::stable_sort(fo.begin(), fo.end(),
                     [&](int a, int b) { return fresh[a].real() < fresh[b].real(); });
    for (int r = 0; r < n; ++r) out.sigma[po[r]] = fo[r];
  } else {
    out.sigma = matching::optimal_permutation(predicted, fresh, tol);
  }
  for (int i = 0; i < n; ++i)
    out.distance = std::max(out.distance, std::abs(predicted[i] - fresh[out.sigma[i]]));
  return out;
}

CurveBundle track_eigenvalues(const family::MatrixFamily& fam,
                              const std::vector<double>& grid, bool refine,
                              const Tolerances& tol) {
  if (grid.empty()) throw std::invalid_argument("track_eigenvalues: empty grid");
  for (size_t i = 0; i + 1 < grid.size(); ++i)
    if (!(grid[i] < grid[i + 1]))
      throw std::invalid_argument("track_eigenvalues: grid must be strictly increasing");
  const double slack = 1e-12 * std::max(1.0, fam.domain().width());
  if (grid.front() < fam.domain().lo - slack || grid.back() > fam.domain().hi + slack)
    throw std::invalid_argument("track_eigenvalues: grid leaves the family domain");
  if (fam.structure() == family::Structure::general)
    throw StructureViolation(grid.front(),
                             "track_eigenvalues: family must be hermitian or normal");

  CurveBundle b;
  const int n = fam.size();
  std::map<double, Vector> cache;
  auto values_at = [&](double t) -> const Vector& {
    auto it = cache.find(t);
    if (it != cache.end()) return it->second;
    Matrix a = fam(t);
    double defect = 0.0;
    if (!family::MatrixFamily::structure_holds(a, fam.structure(), tol, &defect)) {
      std::ostringstream os;
      os << "track_eigenvalues: declared structure violated at t = " << t
         << " (defect " << defect << ")";
      throw StructureViolation(t, os.str());
    }
    b.scale = std::max(b.scale, a.frobenius_norm());
    return cache.emplace(t, structured_eigenvalues(a, fam.structure(), tol)).first->second;
  };

  const Vector& v0 = values_at(grid.front());
  b.grid.push_back(grid.front());
  b.curves.assign(n, {});
  for (int i = 0; i < n; ++i) b.curves[i].push_back(v0[i]);

  std::function<void(double, int)> advance = [&](double t, int depth) {
    const Vector fresh = values_at(t);
    Vector predicted(n);
    for (int i = 0; i < n; ++i) predicted[i] = extrapolate(b.grid, b.curves[i], t);
    const Assignment asg = continuation_assignment(predicted, fresh, tol);
    const double gate = std::max(tol.refine_gap_factor * asg.min_gap,
                                 tol.degenerate_gap * std::max(b.scale, kEps));
    if (asg.distance > gate && refine) {
      const double prev = b.grid.back();
      const double mid = 0.5 * (prev + t);
      if (depth < tol.refine_depth && mid > prev && mid < t) {
        b.events.push_back({"refine", prev, t, ""});
        advance(mid, depth + 1);
        advance(t, depth + 1);
        return;
      }
      b.events.push_back(
          {"refinement_exhausted", prev, t, "labels still ambiguous at the depth cap"});
    }
    b.grid.push_back(t);
    for (int i = 0; i < n; ++i) b.curves[i].push_back(fresh[asg.sigma[i]]);
  };
  for (size_t k = 1; k < grid.size(); ++k) advance(grid[k], 0);
  return b;
}

namespace {

// Connected grouping of curve indices whose values at one grid point sit
// within the cluster gap of each other.
std::vector<std::vector<int>> cluster_blocks(const Vector& vals, double gap) {
  const int n = static_cast<int>(vals.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(vals[i] - vals[j]) <= gap) parent[find(i)] = find(j);
  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < n; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<int>> out;
  out.reserve(groups.size());
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

// Unitary factor of the polar decomposition of M, plus the smallest singular
// value (cosine of the largest principal angle). Returns false when M is
// numerically rank deficient.
bool unitary_polar_factor(const Matrix& m, const Tolerances& tol, Matrix& u,
                          double& sigma_min) {
  const SpectralDecomposition d = hermitian_eigen(m.adjoint() * m, tol);
  const int k = m.cols();
  Vector inv_sigma(k);
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (int i = 0; i < k; ++i) {
    const double s = std::sqrt(std::max(d.values[i].real(), 0.0));
    lo = std::min(lo, s);
    hi = std::max(hi, s);
    inv_sigma[i] = s > 0.0 ? Complex(1.0 / s, 0.0) : Complex(0.0, 0.0);
  }
  sigma_min = lo;
  if (hi == 0.0 || lo <= 1e-12 * hi) return false;
  Matrix w = m * d.vectors;
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < k; ++i) w(i, j) *= inv_sigma[j];
  u = w * d.vectors.adjoint();
  return true;
}

}  // namespace

CurveBundle track_eigenvectors(const family::MatrixFamily& fam, CurveBundle bundle,
                               const Tolerances& tol) {
  const int kpts = bundle.point_count();
  const int ncur = bundle.curve_count();
  if (kpts == 0 || ncur == 0)
    throw std::invalid_argument("track_eigenvectors: empty bundle");
  bundle.frames.clear();
  bundle.frames.reserve(kpts);
  bundle.gauge_defect.assign(kpts, 0.0);
  const double scale = std::max(bundle.scale, kEps);

  Matrix prev;
  for (int k = 0; k < kpts; ++k) {
    const double t = bundle.grid[k];
    const Matrix a = fam(t);
    SpectralDecomposition d;
    if (fam.structure() == family::Structure::hermitian)
      d = hermitian_eigen(a, tol);
    else if (fam.structure() == family::Structure::normal)
      d = normal_eigen(a, tol);
    else
      throw StructureViolation(t, "track_eigenvectors: family must be hermitian or normal");

    Vector curve_vals(ncur);
    for (int i = 0; i < ncur; ++i) curve_vals[i] = bundle.curves[i][k];
    const Assignment asg = continuation_assignment(curve_vals, d.values, tol);
    if (asg.distance > tol.bundle_fidelity * scale) {
      std::ostringstream os;
      os << "track_eigenvectors: bundle values at t = " << t
         << " mismatch the decomposition by " << asg.distance
         << " (missed crossing or stale bundle)";
      throw ClusterMismatch(t, os.str());
    }
    Matrix frame(fam.size(), ncur);
    for (int i = 0; i < ncur; ++i) frame.set_col(i, d.vectors.col(asg.sigma[i]));

    if (k > 0) {
      const auto blocks = cluster_blocks(curve_vals, tol.cluster_gap * scale);
      double worst = 0.0;
      for (const auto& block : blocks) {
        const int m = static_cast<int>(block.size());
        Matrix fnew(fam.size(), m), fold(fam.size(), m);
        for (int c = 0; c < m; ++c) {
          fnew.set_col(c, frame.col(block[c]));
          fold.set_col(c, prev.col(block[c]));
        }
        Matrix u;
        double sigma_min = 0.0;
        if (unitary_polar_factor(fnew.adjoint() * fold, tol, u, sigma_min)) {
          const Matrix aligned = fnew * u;
          for (int c = 0; c < m; ++c) frame.set_col(block[c], aligned.col(c));
          worst = std::max(worst, std::acos(std::clamp(sigma_min, 0.0, 1.0)));
        } else {
          bundle.events.push_back({"gauge_reset", t, t,
                                   "frame block nearly orthogonal to its predecessor"});
          worst = std::max(worst, std::acos(0.0));
        }
      }
      bundle.gauge_defect[k] = worst;
    }
    bundle.frames.push_back(frame);
    prev = std::move(frame);
  }
  return bundle;
}

namespace {

double binomial(int n, int k) {
  double v = 1.0;
  for (int r = 1; r <= k; ++r) v = v * (n - r + 1) / r;
  return v;
}

}  // namespace

std::vector<CrossingReport> crossing_detect(const family::MatrixFamily& fam,
                                            const CurveBundle& bundle, double gap_tol,
                                            const Tolerances& tol) {
  std::vector<CrossingReport> reports;
  const int kpts = bundle.point_count();
  const int ncur = bundle.curve_count();
  if (kpts < 2) return reports;
  const double scale = std::max(bundle.scale, kEps);
  const double threshold = gap_tol * scale;

  for (int i = 0; i < ncur; ++i) {
    for (int j = i + 1; j < ncur; ++j) {
      int k = 0;
      while (k < kpts) {
        if (std::abs(bundle.curves[i][k] - bundle.curves[j][k]) >= threshold) {
          ++k;
          continue;
        }
        int run_lo = k;
        int kmin = k;
        double gmin = std::abs(bundle.curves[i][k] - bundle.curves[j][k]);
        while (k < kpts && std::abs(bundle.curves[i][k] - bundle.curves[j][k]) < threshold) {
          const double g = std::abs(bundle.curves[i][k] - bundle.curves[j][k]);
          if (g < gmin) {
            gmin = g;
            kmin = k;
          }
          ++k;
        }
        const int run_hi = k - 1;
        CrossingReport rep;
        rep.i = i;
        rep.j = j;
        rep.t_lo = bundle.grid[std::max(run_lo - 1, 0)];
        rep.t_hi = bundle.grid[std::min(run_hi + 1, kpts - 1)];
        (void)kmin;

        // Pair gap magnitude at an off-grid parameter: the pair is selected
        // from the fresh spectrum by proximity to the bundle curves.
        auto gap_at = [&](double t) -> double {
          const Vector fresh = structured_eigenvalues(fam(t), fam.structure(), tol);
          const auto& g = bundle.grid;
          const auto it = std::lower_bound(g.begin(), g.end(), t);
          size_t hi_idx = std::min<size_t>(g.size() - 1, it - g.begin());
          size_t lo_idx = hi_idx > 0 ? hi_idx - 1 : 0;
          if (hi_idx == lo_idx) hi_idx = std::min(g.size() - 1, lo_idx + 1);
          const double tlo = g[lo_idx], thi = g[hi_idx];
          const double u = thi > tlo ? (t - tlo) / (thi - tlo) : 0.0;
          const Complex pi = (1.0 - u) * bundle.curves[i][lo_idx] + u * bundle.curves[i][hi_idx];
          const Complex pj = (1.0 - u) * bundle.curves[j][lo_idx] + u * bundle.curves[j][hi_idx];
          int bi = -1, bj = -1;
          double best = std::numeric_limits<double>::infinity();
          for (size_t a = 0; a < fresh.size(); ++a)
            for (size_t b = 0; b < fresh.size(); ++b) {
              if (a == b) continue;
              const double cost =
                  std::max(std::abs(fresh[a] - pi), std::abs(fresh[b] - pj));
              if (cost < best) {
                best = cost;
                bi = static_cast<int>(a);
                bj = static_cast<int>(b);
              }
            }
          return std::abs(fresh[bi] - fresh[bj]);
        };

        // Golden-section refinement of the gap minimum inside the bracket.
        const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
        double a = rep.t_lo, b = rep.t_hi;
        double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
        double f1 = gap_at(x1), f2 = gap_at(x2);
        for (int it = 0; it < 48 && (b - a) > 1e-14 * std::max(1.0, std::fabs(b)); ++it) {
          if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = gap_at(x1);
          } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = gap_at(x2);
          }
        }
        rep.t_star = 0.5 * (a + b);
        rep.gap_min = std::min(f1, f2);

        const double w = 0.5 * (rep.t_hi - rep.t_lo);
        double gnorm = 0.0;
        for (int sidx = 0; sidx <= 32; ++sidx)
          gnorm = std::max(gnorm, gap_at(rep.t_star - w + (2.0 * w) * sidx / 32.0));

        if (gnorm > 0.0 && w > 0.0) {
          // The labels of two branches below grid resolution are not
          // observable, so the signed difference is reconstructed from the
          // magnitudes: the vanishing order's parity is read off the dyadic
          // magnitude ratios next to t_star, and odd orders flip the sign of
          // the left half-stencil.
          const double hp = w / 256.0;
          const double q1p = gap_at(rep.t_star + hp), q2p = gap_at(rep.t_star + 2.0 * hp);
          const double q1m = gap_at(rep.t_star - hp), q2m = gap_at(rep.t_star - 2.0 * hp);
          bool flip_left = false;
          const double probe_max = std::max({q1p, q2p, q1m, q2m});
          if (rep.gap_min < 0.5 * probe_max) {
            double r = 0.0;
            int cnt = 0;
            if (q1p > 0.0 && q2p > 0.0) {
              r += std::log2(q2p / q1p);
              ++cnt;
            }
            if (q1m > 0.0 && q2m > 0.0) {
              r += std::log2(q2m / q1m);
              ++cnt;
            }
            if (cnt > 0) {
              const long m_mag = std::lround(r / cnt);
              flip_left = m_mag >= 1 && (m_mag % 2 == 1);
            }
          }
          auto signed_gap = [&](double offset) {
            const double v = gap_at(rep.t_star + offset);
            return (offset < 0.0 && flip_left) ? -v : v;
          };
          for (int order = 1; order <= tol.crossing_kmax && rep.order_estimate == 0;
               ++order) {
            double tau = std::numeric_limits<double>::infinity();
            for (const double h : {w / 256.0, w / 512.0}) {
              double dk = 0.0;
              for (int m = 0; m <= order; ++m) {
                const double c = binomial(order, m);
                const double gv = signed_gap((2.0 * m - order) * h);
                dk += (((order - m) % 2 == 0) ? c : -c) * gv;
              }
              const double noise_gate = std::ldexp(100.0, order) * kEps * scale;
              if (std::fabs(dk) < noise_gate) {
                tau = 0.0;
                break;
              }
              const double dd = std::fabs(dk) / std::pow(2.0 * h, order);
              double fact = 1.0;
              for (int r = 2; r <= order; ++r) fact *= r;
              tau = std::min(tau, dd * std::pow(w, order) / (fact * gnorm));
            }
            if (tau >= tol.crossing_threshold) rep.order_estimate = order;
          }
        }
        if (rep.order_estimate == 0 && rep.gap_min <= tol.crossing_flat_gap * scale)
          rep.infinite_order_suspect = true;
        reports.push_back(rep);
      }
    }
  }
  return reports;
}

double hoelder_quotient(const family::MatrixFamily& fam, int curve_index, double t,
                        double s, double alpha, const Tolerances& tol) {
  if (!(s > 0.0)) throw std::invalid_argument("hoelder_quotient: s must be positive");
  if (curve_index < 0 || curve_index >= fam.size())
    throw std::invalid_argument("hoelder_quotient: curve index out of range");
  const double h = tol.holder_step_factor * s;
  auto lambda = [&](double offset) {
    const Vector v =
        structured_eigenvalues(fam.at_offset(t, offset), fam.structure(), tol);
    return v[curve_index];
  };
  const Complex d_at_t = (lambda(h) - lambda(-h)) / (2.0 * h);
  const Complex d_at_ts = (lambda(s + h) - lambda(s - h)) / (2.0 * h);
  return std::abs(d_at_ts - d_at_t) / std::pow(s, alpha);
}

SortedComparison sorted_vs_smooth(const CurveBundle& bundle) {
  const int kpts = bundle.point_count();
  const int ncur = bundle.curve_count();
  SortedComparison cmp;
  cmp.sorted_curves.assign(ncur, std::vector<Complex>(kpts));
  for (int k = 0; k < kpts; ++k) {
    Vector column(ncur);
    for (int i = 0; i < ncur; ++i) column[i] = bundle.curves[i][k];
    std::sort(column.begin(), column.end(), [](const Complex& x, const Complex& y) {
      if (x.real() != y.real()) return x.real() < y.real();
      return x.imag() < y.imag();
    });
    for (int i = 0; i < ncur; ++i) cmp.sorted_curves[i][k] = column[i];
  }

  auto jumps_of = [&](const std::vector<std::vector<Complex>>& curves) {
    std::vector<std::vector<double>> jumps(kpts, std::vector<double>(ncur, 0.0));
    for (int k = 1; k + 1 < kpts; ++k) {
      const double hfwd = bundle.grid[k + 1] - bundle.grid[k];
      const double hbwd = bundle.grid[k] - bundle.grid[k - 1];
      for (int i = 0; i < ncur; ++i) {
        const Complex fwd = (curves[i][k + 1] - curves[i][k]) / hfwd;
        const Complex bwd = (curves[i][k] - curves[i][k - 1]) / hbwd;
        jumps[k][i] = std::abs(fwd - bwd);
      }
    }
    return jumps;
  };
  cmp.tracked_jumps = jumps_of(bundle.curves);
  cmp.sorted_jumps = jumps_of(cmp.sorted_curves);
  return cmp;
}

}  // namespace eigencurve::tracking
