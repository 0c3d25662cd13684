#include "eigencurve/polyroots.hpp"

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

namespace eigencurve::polyroots {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool value_less(const Complex& x, const Complex& y) {
  if (x.real() != y.real()) return x.real() < y.real();
  return x.imag() < y.imag();
}

// ---------------------------------------------------------------------------
// real polynomial helpers (ascending coefficients) for the Sturm machinery
// ---------------------------------------------------------------------------

using RPoly = std::vector<double>;

int rdeg(const RPoly& p) { return static_cast<int>(p.size()) - 1; }

void rtrim(RPoly& p, double floor) {
  while (!p.empty() && std::fabs(p.back()) <= floor) p.pop_back();
}

double rmax(const RPoly& p) {
  double m = 0.0;
  for (double c : p) m = std::max(m, std::fabs(c));
  return m;
}

double reval(const RPoly& p, double x) {
  double acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

RPoly rderiv(const RPoly& p) {
  if (p.size() <= 1) return {};
  RPoly d(p.size() - 1);
  for (size_t k = 1; k < p.size(); ++k) d[k - 1] = static_cast<double>(k) * p[k];
  return d;
}

// Remainder of num / den with relative coefficient truncation.
RPoly rrem(RPoly num, const RPoly& den) {
  const double scale = std::max(rmax(num), rmax(den));
  const double floor = 1e-12 * scale;
  while (rdeg(num) >= rdeg(den) && !num.empty()) {
    const double f = num.back() / den.back();
    const int shift = rdeg(num) - rdeg(den);
    for (size_t k = 0; k < den.size(); ++k)
      num[k + shift] -= f * den[k];
    num.pop_back();
    rtrim(num, floor);
  }
  return num;
}

// Quotient of num / den, remainder discarded (used for the squarefree part).
RPoly rquot(RPoly num, const RPoly& den) {
  RPoly q(std::max(0, rdeg(num) - rdeg(den) + 1), 0.0);
  const double floor = 1e-12 * std::max(rmax(num), rmax(den));
  while (rdeg(num) >= rdeg(den) && !num.empty()) {
    const double f = num.back() / den.back();
    const int shift = rdeg(num) - rdeg(den);
    q[shift] = f;
    for (size_t k = 0; k < den.size(); ++k)
      num[k + shift] -= f * den[k];
    num.pop_back();
    rtrim(num, floor);
  }
  return q;
}

void rnormalize(RPoly& p) {
  const double m = rmax(p);
  if (m > 0.0)
    for (double& c : p) c /= m;
}

std::vector<RPoly> sturm_chain(const RPoly& p) {
  std::vector<RPoly> chain;
  RPoly p0 = p;
  rnormalize(p0);
  chain.push_back(p0);
  RPoly p1 = rderiv(p0);
  rnormalize(p1);
  if (!p1.empty()) chain.push_back(p1);
  while (chain.size() >= 2 && rdeg(chain.back()) > 0) {
    RPoly r = rrem(chain[chain.size() - 2], chain.back());
    for (double& c : r) c = -c;
    rnormalize(r);
    if (r.empty()) break;
    chain.push_back(std::move(r));
  }
  return chain;
}

int sign_variations(const std::vector<RPoly>& chain, double x) {
  int v = 0;
  int prev = 0;
  for (const auto& p : chain) {
    const double val = reval(p, x);
    const int s = val > 0.0 ? 1 : (val < 0.0 ? -1 : 0);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

int distinct_roots_in(const std::vector<RPoly>& chain, double a, double b) {
  return sign_variations(chain, a) - sign_variations(chain, b);
}

double cauchy_bound(const RPoly& p) {
  const double lead = std::fabs(p.back());
  double m = 0.0;
  for (size_t k = 0; k + 1 < p.size(); ++k) m = std::max(m, std::fabs(p[k]));
  return lead > 0.0 ? 1.0 + m / lead : 1.0;
}

double newton_polish_real(const RPoly& p, const RPoly& dp, double x, int steps) {
  double fx = std::fabs(reval(p, x));
  for (int s = 0; s < steps; ++s) {
    const double d = reval(dp, x);
    if (d == 0.0) break;
    const double x2 = x - reval(p, x) / d;
    const double fx2 = std::fabs(reval(p, x2));
    if (!(fx2 < fx) || !std::isfinite(x2)) break;
    x = x2;
    fx = fx2;
  }
  return x;
}

// Distinct real roots of a squarefree polynomial by Sturm bisection.
std::vector<double> isolate_real_roots(const RPoly& p) {
  std::vector<double> out;
  if (rdeg(p) <= 0) return out;
  const auto chain = sturm_chain(p);
  const double bound = cauchy_bound(p);
  const RPoly dp = rderiv(p);

  struct Span {
    double a, b;
    int count;
  };
  std::vector<Span> work;
  const int total = distinct_roots_in(chain, -bound - 1.0, bound + 1.0);
  if (total > 0) work.push_back({-bound - 1.0, bound + 1.0, total});
  while (!work.empty()) {
    Span s = work.back();
    work.pop_back();
    if (s.count == 1) {
      double a = s.a, b = s.b;
      const int va = sign_variations(chain, a);
      for (int it = 0; it < 200 && (b - a) > 1e-14 * std::max(1.0, std::fabs(a) + std::fabs(b)); ++it) {
        const double m = 0.5 * (a + b);
        if (sign_variations(chain, m) == va)
          a = m;
        else
          b = m;
      }
      out.push_back(newton_polish_real(p, dp, 0.5 * (a + b), 3));
      continue;
    }
    const double m = 0.5 * (s.a + s.b);
    if (m <= s.a || m >= s.b) {
      // interval at floating resolution holding a tight cluster of distinct
      // roots: report the midpoint that many times
      for (int c = 0; c < s.count; ++c) out.push_back(m);
      continue;
    }
    const int left = distinct_roots_in(chain, s.a, m);
    if (left > 0) work.push_back({s.a, m, left});
    if (s.count - left > 0) work.push_back({m, s.b, s.count - left});
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Real roots with multiplicity via the gcd recursion: an m-fold root of p is
// an (m-1)-fold root of gcd(p, p').
std::vector<std::pair<double, int>> real_roots_mult(const RPoly& p_in) {
  RPoly p = p_in;
  rnormalize(p);
  std::vector<std::pair<double, int>> out;
  if (rdeg(p) <= 0) return out;
  const auto chain = sturm_chain(p);
  const RPoly& g = chain.back();
  if (rdeg(g) <= 0) {
    for (double r : isolate_real_roots(p)) out.emplace_back(r, 1);
    return out;
  }
  const RPoly q = rquot(p, g);
  const auto sub = real_roots_mult(g);
  const double match_radius = 1e-6 * std::max(1.0, cauchy_bound(p));
  for (double r : isolate_real_roots(q)) {
    int mult = 1;
    for (const auto& [rs, ms] : sub)
      if (std::fabs(rs - r) <= match_radius) {
        mult = 1 + ms;
        break;
      }
    out.emplace_back(r, mult);
  }
  return out;
}

// ---------------------------------------------------------------------------
// complex companion-matrix eigensolve with Wilkinson shifts
// ---------------------------------------------------------------------------

void horner2(const Vector& monic, Complex x, Complex& p, Complex& dp) {
  // monic[k] is the coefficient of x^k, leading coefficient 1 implicit
  const int n = static_cast<int>(monic.size());
  p = 1.0;
  dp = 0.0;
  for (int k = n - 1; k >= 0; --k) {
    dp = dp * x + p;
    p = p * x + monic[k];
  }
}

Complex newton_polish(const Vector& monic, Complex r, int steps) {
  Complex p, dp;
  horner2(monic, r, p, dp);
  double best = std::abs(p);
  for (int s = 0; s < steps; ++s) {
    if (dp == Complex(0.0, 0.0)) break;
    const Complex r2 = r - p / dp;
    Complex p2, dp2;
    horner2(monic, r2, p2, dp2);
    if (!(std::abs(p2) < best)) break;
    r = r2;
    p = p2;
    dp = dp2;
    best = std::abs(p2);
  }
  return r;
}

Vector companion_roots(const Vector& monic) {
  const int n = static_cast<int>(monic.size());
  Vector out;
  if (n == 0) return out;
  if (n == 1) return {-monic[0]};

  Matrix h(n, n);
  for (int i = 0; i + 1 < n; ++i) h(i + 1, i) = 1.0;
  for (int i = 0; i < n; ++i) h(i, n - 1) = -monic[i];

  out.reserve(n);
  int hi = n - 1;
  int iters_at_hi = 0;
  const int iter_cap = 80;
  while (hi >= 0) {
    // deflation scan
    bool deflated = true;
    while (hi > 0 && deflated) {
      const double sub = std::abs(h(hi, hi - 1));
      if (sub <= kEps * (std::abs(h(hi, hi)) + std::abs(h(hi - 1, hi - 1)))) {
        out.push_back(h(hi, hi));
        --hi;
        iters_at_hi = 0;
      } else {
        deflated = false;
      }
    }
    if (hi == 0) {
      out.push_back(h(0, 0));
      break;
    }
    int lo = hi;
    while (lo > 0 &&
           std::abs(h(lo, lo - 1)) >
               kEps * (std::abs(h(lo, lo)) + std::abs(h(lo - 1, lo - 1))))
      --lo;

    Complex mu;
    if (++iters_at_hi % 12 == 0) {
      // exceptional shift to break limit cycles (multiple roots)
      mu = h(hi, hi) + Complex(0.75, 0.43) * std::abs(h(hi, hi - 1));
    } else {
      const Complex a = h(hi - 1, hi - 1), b = h(hi - 1, hi);
      const Complex c = h(hi, hi - 1), d = h(hi, hi);
      const Complex tr = a + d;
      const Complex disc = std::sqrt(tr * tr - 4.0 * (a * d - b * c));
      const Complex m1 = 0.5 * (tr + disc), m2 = 0.5 * (tr - disc);
      mu = std::abs(m1 - d) < std::abs(m2 - d) ? m1 : m2;
    }
    if (iters_at_hi > iter_cap)
      throw NoConvergence("companion_roots: QR iteration stalled");

    // explicit QR step on the active window: H <- RQ + mu I
    const int m = hi - lo + 1;
    Matrix x(m, m);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) x(r, c) = h(lo + r, lo + c);
    for (int r = 0; r < m; ++r) x(r, r) -= mu;
    // Givens chain zeroing the subdiagonal of x
    std::vector<std::pair<Complex, Complex>> rot(m - 1);  // (c, s)
    for (int k = 0; k + 1 < m; ++k) {
      const Complex f = x(k, k), g = x(k + 1, k);
      const double r = std::hypot(std::abs(f), std::abs(g));
      Complex cs = 1.0, sn = 0.0;
      if (r > 0.0) {
        cs = std::conj(f) / r;
        sn = std::conj(g) / r;
      }
      rot[k] = {cs, sn};
      for (int c = k; c < m; ++c) {
        const Complex xk = x(k, c), xk1 = x(k + 1, c);
        x(k, c) = cs * xk + sn * xk1;
        x(k + 1, c) = -std::conj(sn) * xk + std::conj(cs) * xk1;
      }
    }
    // x is now R; apply the adjoint rotations on the right: R Q
    for (int k = 0; k + 1 < m; ++k) {
      const auto [cs, sn] = rot[k];
      for (int r = 0; r <= std::min(k + 1, m - 1); ++r) {
        const Complex xk = x(r, k), xk1 = x(r, k + 1);
        x(r, k) = xk * std::conj(cs) + xk1 * std::conj(sn);
        x(r, k + 1) = -xk * sn + xk1 * cs;
      }
    }
    for (int r = 0; r < m; ++r) x(r, r) += mu;
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) h(lo + r, lo + c) = x(r, c);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// PolynomialFamily
// ---------------------------------------------------------------------------

PolynomialFamily PolynomialFamily::from_polys(std::vector<Poly> coeffs,
                                              family::Interval domain) {
  if (coeffs.empty()) throw std::invalid_argument("polynomial family of degree zero");
  PolynomialFamily p;
  p.degree_ = static_cast<int>(coeffs.size());
  p.domain_ = domain;
  p.exact_ = std::move(coeffs);
  for (const auto& c : *p.exact_)
    p.fns_.push_back([c](double t) { return c(t); });
  return p;
}

PolynomialFamily PolynomialFamily::from_evaluators(std::vector<CoefficientFn> coeffs,
                                                   family::Interval domain) {
  if (coeffs.empty()) throw std::invalid_argument("polynomial family of degree zero");
  PolynomialFamily p;
  p.degree_ = static_cast<int>(coeffs.size());
  p.domain_ = domain;
  p.fns_ = std::move(coeffs);
  return p;
}

Vector PolynomialFamily::coefficients(double t) const {
  Vector a(degree_);
  for (int k = 0; k < degree_; ++k) a[k] = fns_[k](t);
  return a;
}

Vector PolynomialFamily::monic_coefficients(double t) const {
  const Vector a = coefficients(t);
  const int n = degree_;
  Vector c(n);
  for (int j = 0; j < n; ++j) {
    const int k = n - j;
    c[j] = (k % 2 == 0 ? 1.0 : -1.0) * a[k - 1];
  }
  return c;
}

// ---------------------------------------------------------------------------

namespace {

// Real coefficient extraction; fails when imaginary parts are material.
bool real_monic(const PolynomialFamily& p, double t, RPoly& out) {
  const Vector c = p.monic_coefficients(t);
  double scale = 1.0;
  for (const auto& z : c) scale = std::max(scale, std::abs(z));
  out.clear();
  out.reserve(c.size() + 1);
  for (const auto& z : c) {
    if (std::fabs(z.imag()) > 1e-9 * scale) return false;
    out.push_back(z.real());
  }
  out.push_back(1.0);  // monic lead
  return true;
}

}  // namespace

bool hyperbolicity_check(const PolynomialFamily& p, double t, const Tolerances& tol) {
  (void)tol;
  RPoly rp;
  if (!real_monic(p, t, rp)) return false;
  if (rdeg(rp) <= 1) return true;
  const auto chain = sturm_chain(rp);
  const double bound = cauchy_bound(rp);
  const int distinct = distinct_roots_in(chain, -bound - 1.0, bound + 1.0);
  const int squarefree_degree = rdeg(rp) - std::max(0, rdeg(chain.back()));
  return distinct == squarefree_degree;
}

Vector roots_at(const PolynomialFamily& p, double t, bool real_rooted,
                const Tolerances& tol) {
  if (real_rooted) {
    RPoly rp;
    if (!real_monic(p, t, rp) || !hyperbolicity_check(p, t, tol)) {
      std::ostringstream os;
      os << "roots_at: polynomial not hyperbolic at t = " << t;
      throw NotHyperbolic(t, os.str());
    }
    Vector out;
    for (const auto& [r, mult] : real_roots_mult(rp))
      for (int c = 0; c < mult; ++c) out.push_back(Complex(r, 0.0));
    if (static_cast<int>(out.size()) != p.degree()) {
      std::ostringstream os;
      os << "roots_at: recovered " << out.size() << " real roots of a degree-"
         << p.degree() << " hyperbolic polynomial at t = " << t;
      throw NoConvergence(os.str());
    }
    std::sort(out.begin(), out.end(), value_less);
    return out;
  }
  const Vector monic = p.monic_coefficients(t);
  Vector roots = companion_roots(monic);
  for (auto& r : roots) r = newton_polish(monic, r, 3);
  std::sort(roots.begin(), roots.end(), value_less);
  return roots;
}

tracking::CurveBundle track_roots(const PolynomialFamily& p,
                                  const std::vector<double>& grid, bool real_rooted,
                                  const Tolerances& tol) {
  if (grid.empty()) throw std::invalid_argument("track_roots: empty grid");
  for (size_t i = 0; i + 1 < grid.size(); ++i)
    if (!(grid[i] < grid[i + 1]))
      throw std::invalid_argument("track_roots: grid must be strictly increasing");

  tracking::CurveBundle b;
  const int n = p.degree();
  const Vector v0 = roots_at(p, grid.front(), real_rooted, tol);
  b.grid.push_back(grid.front());
  b.curves.assign(n, {});
  for (int i = 0; i < n; ++i) {
    b.curves[i].push_back(v0[i]);
    b.scale = std::max(b.scale, std::abs(v0[i]));
  }
  for (size_t k = 1; k < grid.size(); ++k) {
    const double t = grid[k];
    const Vector fresh = roots_at(p, t, real_rooted, tol);
    Vector predicted(n);
    for (int i = 0; i < n; ++i) {
      const auto& ts = b.grid;
      const auto& vals = b.curves[i];
      const int m = static_cast<int>(ts.size());
      const int kk = std::min(3, m);
      Complex acc = 0.0;
      for (int a = m - kk; a < m; ++a) {
        Complex term = vals[a];
        for (int c = m - kk; c < m; ++c) {
          if (c == a) continue;
          term *= (t - ts[c]) / (ts[a] - ts[c]);
        }
        acc += term;
      }
      predicted[i] = acc;
    }
    const tracking::Assignment asg = tracking::continuation_assignment(predicted, fresh, tol);
    b.grid.push_back(t);
    for (int i = 0; i < n; ++i) {
      b.curves[i].push_back(fresh[asg.sigma[i]]);
      b.scale = std::max(b.scale, std::abs(fresh[asg.sigma[i]]));
    }
  }
  return b;
}

namespace {

std::vector<std::vector<int>> root_clusters(const Vector& roots, double radius) {
  const int n = static_cast<int>(roots.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(roots[i] - roots[j]) <= radius) parent[find(i)] = find(j);
  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < n; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<int>> out;
  for (auto& [r, members] : groups) out.push_back(std::move(members));
  return out;
}

int lcm_int(int a, int b) { return a / std::gcd(a, b) * b; }

}  // namespace

PowerSubstitution estimate_substitution_order(const PolynomialFamily& p, double t0,
                                              int k_max, OrderDiagnostics* diagnostics,
                                              const Tolerances& tol) {
  if (k_max < 1) throw std::invalid_argument("estimate_substitution_order: k_max < 1");
  const Vector base = roots_at(p, t0, false, tol);
  double scale = 1.0;
  for (const auto& r : base) scale = std::max(scale, std::abs(r));
  const auto clusters = root_clusters(base, tol.root_cluster * scale);

  std::vector<Complex> centers;
  centers.reserve(clusters.size());
  for (const auto& c : clusters) {
    Complex mean = 0.0;
    for (int idx : c) mean += base[idx];
    centers.push_back(mean / static_cast<double>(c.size()));
  }

  if (diagnostics) {
    diagnostics->plus.clear();
    diagnostics->minus.clear();
  }

  const double steps[3] = {1e-2, 1e-3, 1e-4};
  // splitting of a numerically multiple root sits near sqrt(eps); diameters
  // below this floor mean "did not branch"
  const double noise_floor = 1e-7 * scale;
  int order = 1;

  for (int branch = 0; branch < 2; ++branch) {
    const double sign = branch == 0 ? 1.0 : -1.0;
    for (size_t ci = 0; ci < clusters.size(); ++ci) {
      if (clusters[ci].size() < 2) continue;
      BranchDiagnostics bd;
      std::vector<double> xs, ys;
      for (const double h : steps) {
        const Vector probe = roots_at(p, t0 + sign * h, false, tol);
        double diam = 0.0;
        std::vector<const Complex*> assigned;
        for (const auto& r : probe) {
          size_t nearest = 0;
          double best = std::numeric_limits<double>::infinity();
          for (size_t cj = 0; cj < centers.size(); ++cj) {
            const double d = std::abs(r - centers[cj]);
            if (d < best) {
              best = d;
              nearest = cj;
            }
          }
          if (nearest == ci) assigned.push_back(&r);
        }
        for (size_t a = 0; a < assigned.size(); ++a)
          for (size_t b = a + 1; b < assigned.size(); ++b)
            diam = std::max(diam, std::abs(*assigned[a] - *assigned[b]));
        if (diam > noise_floor) {
          xs.push_back(std::log10(h));
          ys.push_back(std::log10(diam));
        }
      }
      if (xs.size() < 2) {
        bd.branching = false;
        if (diagnostics) (branch == 0 ? diagnostics->plus : diagnostics->minus).push_back(bd);
        continue;
      }
      bd.branching = true;
      // least-squares slope in log-log scale
      double mx = 0.0, my = 0.0;
      for (size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
      }
      mx /= xs.size();
      my /= ys.size();
      double sxx = 0.0, sxy = 0.0;
      for (size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
      }
      bd.slope = sxy / sxx;

      // nearest rational p/q with q <= k_max; ties prefer the smaller q
      double best_err = std::numeric_limits<double>::infinity();
      for (int q = 1; q <= k_max; ++q) {
        const int num = static_cast<int>(std::lround(bd.slope * q));
        const double err = std::fabs(bd.slope - static_cast<double>(num) / q);
        if (err < best_err - 1e-15) {
          best_err = err;
          bd.numerator = num;
          bd.denominator = q;
        }
      }
      // residual against the rational slope with a refitted intercept
      const double rational = static_cast<double>(bd.numerator) / bd.denominator;
      double intercept = 0.0;
      for (size_t i = 0; i < xs.size(); ++i) intercept += ys[i] - rational * xs[i];
      intercept /= xs.size();
      for (size_t i = 0; i < xs.size(); ++i)
        bd.residual = std::max(bd.residual,
                               std::fabs(ys[i] - (rational * xs[i] + intercept)));
      if (diagnostics) (branch == 0 ? diagnostics->plus : diagnostics->minus).push_back(bd);
      if (bd.residual > tol.exponent_residual || bd.numerator < 1) {
        std::ostringstream os;
        os << "estimate_substitution_order: cluster exponent fit residual " << bd.residual
           << " (slope " << bd.slope << ") at t0 = " << t0
           << (branch == 0 ? " (+ branch)" : " (- branch)");
        throw ExponentUnresolved(os.str());
      }
      order = lcm_int(order, bd.denominator);
    }
  }
  return {t0, order, 0};
}

PolynomialFamily substitute_power(const PolynomialFamily& p, const PowerSubstitution& sub) {
  const auto* exact = p.exact();
  if (!exact)
    throw std::invalid_argument(
        "substitute_power: closed-form coefficient polynomials required");
  if (sub.order < 1) throw std::invalid_argument("substitute_power: order must be >= 1");

  // inner(s) = t0 + (-1)^eps s^N
  Vector inner_coeffs(static_cast<size_t>(sub.order) + 1, Complex(0.0, 0.0));
  inner_coeffs[0] = sub.t0;
  inner_coeffs[static_cast<size_t>(sub.order)] = sub.sign_branch == 0 ? 1.0 : -1.0;
  const Poly inner(std::move(inner_coeffs));

  std::vector<Poly> composed;
  composed.reserve(exact->size());
  for (const auto& a : *exact) composed.push_back(a.compose(inner));

  // mapped s-domain: the largest symmetric interval staying inside the original
  const auto dom = p.domain();
  const double sigma = sub.sign_branch == 0 ? 1.0 : -1.0;
  double reach = 0.0;
  if (sub.order % 2 == 0) {
    reach = sigma > 0.0 ? dom.hi - sub.t0 : sub.t0 - dom.lo;
  } else {
    reach = std::min(dom.hi - sub.t0, sub.t0 - dom.lo);
    if (reach <= 0.0) reach = std::max(dom.hi - sub.t0, sub.t0 - dom.lo);
  }
  if (reach <= 0.0)
    throw std::invalid_argument("substitute_power: t0 has no reach into the domain");
  const double r = std::pow(reach, 1.0 / sub.order);
  return PolynomialFamily::from_polys(std::move(composed), {-r, r});
}

Vector charpoly(const Matrix& a) {
  if (!a.square()) throw std::invalid_argument("charpoly: matrix must be square");
  const int n = a.rows();
  // Faddeev-LeVerrier: det(xI - A) = x^n - q1 x^(n-1) - q2 x^(n-2) - ...;
  // the elementary symmetric coefficients are a_k = (-1)^(k+1) q_k.
  Vector q(n);
  Matrix m = a;
  q[0] = m.trace();
  for (int k = 2; k <= n; ++k) {
    Matrix shifted = m;
    for (int i = 0; i < n; ++i) shifted(i, i) -= q[k - 2];
    m = a * shifted;
    q[k - 1] = m.trace() / static_cast<double>(k);
  }
  Vector coeffs(n);
  for (int k = 1; k <= n; ++k) coeffs[k - 1] = (k % 2 == 1 ? 1.0 : -1.0) * q[k - 1];
  return coeffs;
}

PolynomialFamily charpoly_family(const family::MatrixFamily& fam) {
  const int n = fam.size();
  std::vector<PolynomialFamily::CoefficientFn> fns;
  fns.reserve(n);
  for (int k = 0; k < n; ++k)
    fns.push_back([fam, k](double t) { return charpoly(fam(t))[k]; });
  return PolynomialFamily::from_evaluators(std::move(fns), fam.domain());
}

}  // namespace eigencurve::polyroots
