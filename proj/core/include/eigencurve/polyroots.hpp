#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "eigencurve/family.hpp"
#include "eigencurve/matrix.hpp"
#include "eigencurve/poly.hpp"
#include "eigencurve/tolerances.hpp"
#include "eigencurve/tracking.hpp"

namespace eigencurve::polyroots {

/// Monic parameterized polynomial
///   P(t)(x) = x^n - a1(t) x^(n-1) + a2(t) x^(n-2) - ... + (-1)^n an(t),
/// so ak(t) is the k-th elementary symmetric function of the roots.
/// Coefficients are either closed-form polynomials in t or plain evaluators.
class PolynomialFamily {
 public:
  using CoefficientFn = std::function<Complex(double)>;

  static PolynomialFamily from_polys(std::vector<Poly> coeffs, family::Interval domain);
  static PolynomialFamily from_evaluators(std::vector<CoefficientFn> coeffs,
                                          family::Interval domain);

  int degree() const { return degree_; }
  const family::Interval& domain() const { return domain_; }
  /// Values a1(t) .. an(t).
  Vector coefficients(double t) const;
  /// Standard monic coefficients c0 .. c(n-1) of x^n + c(n-1)x^(n-1) + ... + c0.
  Vector monic_coefficients(double t) const;
  /// Closed-form coefficient polynomials, or nullptr for evaluator-based
  /// families.
  const std::vector<Poly>* exact() const {
    return exact_ ? &*exact_ : nullptr;
  }

 private:
  int degree_ = 0;
  family::Interval domain_;
  std::vector<CoefficientFn> fns_;
  std::optional<std::vector<Poly>> exact_;
};

/// Reparameterization t = t0 + (-1)^sign_branch * s^order.
struct PowerSubstitution {
  double t0 = 0.0;
  int order = 1;
  int sign_branch = 0;  // 0: t0 + s^N, 1: t0 - s^N
};

/// All roots real at t, decided by Sturm sign-variation counts on a Cauchy
/// bound interval (multiple roots handled through the squarefree part).
bool hyperbolicity_check(const PolynomialFamily& p, double t, const Tolerances& tol = {});

/// Roots of one polynomial, multiset with multiplicity. Companion-matrix
/// eigenvalues polished by Newton steps; real_rooted requests the Sturm
/// bisection path and throws NotHyperbolic if the polynomial is not.
Vector roots_at(const PolynomialFamily& p, double t, bool real_rooted = false,
                const Tolerances& tol = {});

/// Root curves over the grid, labeled by the same prediction/assignment
/// continuation as eigenvalue tracking.
tracking::CurveBundle track_roots(const PolynomialFamily& p,
                                  const std::vector<double>& grid,
                                  bool real_rooted = false, const Tolerances& tol = {});

/// Per-branch diagnostics behind a substitution-order estimate.
struct BranchDiagnostics {
  double slope = 0.0;      // fitted log-log exponent of cluster diameter vs h
  int numerator = 0;       // rational approximation slope ~ numerator/denominator
  int denominator = 1;
  double residual = 0.0;   // max |log10 diam - fit| over the probe steps
  bool branching = false;  // false when every cluster stays at noise level
};

struct OrderDiagnostics {
  std::vector<BranchDiagnostics> plus;   // one entry per multiple-root cluster
  std::vector<BranchDiagnostics> minus;
};

/// Estimates the power-substitution order at t0: root clusters are probed at
/// t0 +- h for h in {1e-2, 1e-3, 1e-4}, the leading exponent p/q of cluster
/// diameter vs h is fitted by log-log regression with denominators up to
/// exponent_kmax, and the result is the least common multiple of the detected
/// denominators over both branch signs. Returns order 1 when nothing
/// branches. Throws ExponentUnresolved when the regression residual exceeds
/// exponent_residual in log10 scale.
PowerSubstitution estimate_substitution_order(const PolynomialFamily& p, double t0,
                                              int k_max = 12,
                                              OrderDiagnostics* diagnostics = nullptr,
                                              const Tolerances& tol = {});

/// Exact coefficient recomposition s -> P(t0 + (-1)^eps s^N). Requires
/// closed-form coefficients.
PolynomialFamily substitute_power(const PolynomialFamily& p, const PowerSubstitution& sub);

/// Characteristic polynomial coefficients a1 .. an (Faddeev-LeVerrier), in
/// the sign convention above: a1 = trace.
Vector charpoly(const Matrix& a);

/// Polynomial family whose value at t is the characteristic polynomial of
/// A(t); the bridge from matrix families to root machinery.
PolynomialFamily charpoly_family(const family::MatrixFamily& fam);

}  // namespace eigencurve::polyroots
