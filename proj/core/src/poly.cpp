#include "eigencurve/poly.hpp"

namespace eigencurve {

Poly Poly::monomial(int k) {
  Vector c(static_cast<size_t>(k) + 1, Complex(0.0, 0.0));
  c.back() = 1.0;
  return Poly(std::move(c));
}

Complex Poly::operator()(double t) const { return (*this)(Complex(t, 0.0)); }

Complex Poly::operator()(Complex t) const {
  Complex acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  Vector d(c_.size() - 1);
  for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
  return Poly(std::move(d));
}

Poly Poly::compose(const Poly& inner) const {
  Poly acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it)
    acc = acc * inner + Poly::constant(*it);
  return acc;
}

Poly operator+(const Poly& a, const Poly& b) {
  Vector c(std::max(a.c_.size(), b.c_.size()), Complex(0.0, 0.0));
  for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) {
  Vector c(std::max(a.c_.size(), b.c_.size()), Complex(0.0, 0.0));
  for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
  return Poly(std::move(c));
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.zero() || b.zero()) return Poly();
  Vector c(a.c_.size() + b.c_.size() - 1, Complex(0.0, 0.0));
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return Poly(std::move(c));
}

Poly operator*(Complex s, const Poly& p) {
  Vector c = p.c_;
  for (auto& z : c) z *= s;
  return Poly(std::move(c));
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == Complex(0.0, 0.0)) c_.pop_back();
}

}  // namespace eigencurve
