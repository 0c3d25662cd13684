#pragma once

#include <vector>

#include "eigencurve/matrix.hpp"

namespace eigencurve {

/// Polynomial in one real variable with complex coefficients, ascending
/// degree. Evaluation is Horner's scheme.
class Poly {
 public:
  Poly() = default;
  explicit Poly(Vector coeffs) : c_(std::move(coeffs)) { trim(); }
  static Poly constant(Complex v) { return Poly(Vector{v}); }
  /// c0 + c1 t.
  static Poly linear(Complex c0, Complex c1) { return Poly(Vector{c0, c1}); }
  /// t^k.
  static Poly monomial(int k);

  int degree() const { return c_.empty() ? -1 : static_cast<int>(c_.size()) - 1; }
  const Vector& coeffs() const { return c_; }
  bool zero() const { return c_.empty(); }

  Complex operator()(double t) const;
  Complex operator()(Complex t) const;

  Poly derivative() const;
  /// Substitution p(q(t)).
  Poly compose(const Poly& inner) const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Complex s, const Poly& p);

 private:
  void trim();
  Vector c_;
};

}  // namespace eigencurve
