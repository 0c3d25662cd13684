#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "eigencurve/errors.hpp"
#include "eigencurve/linalg.hpp"
#include "eigencurve/matching.hpp"
#include "test_helpers.hpp"

using namespace eigencurve;
using testutil::random_hermitian;
using testutil::random_matrix;
using testutil::random_normal;
using testutil::random_unitary;

namespace {

// ---------------------------------------------------------------------------
// Independent oracle for Hermitian spectra: characteristic polynomial by the
// trace recurrence, then all real roots by Sturm bisection. Deliberately
// self-contained so it shares nothing with the library's solver path.
// ---------------------------------------------------------------------------

// det(xI - A) = x^n + c[n-1] x^(n-1) + ... + c[0], real for Hermitian A.
// The trace recurrence yields det(xI - A) = x^n - q1 x^(n-1) - q2 x^(n-2) - ...
std::vector<double> oracle_charpoly(const Matrix& a) {
  const int n = a.rows();
  Vector q(n);
  Matrix m = a;
  q[0] = m.trace();
  for (int k = 2; k <= n; ++k) {
    Matrix shifted = m;
    for (int i = 0; i < n; ++i) shifted(i, i) -= q[k - 2];
    m = a * shifted;
    q[k - 1] = m.trace() / static_cast<double>(k);
  }
  std::vector<double> c(n + 1, 0.0);
  c[n] = 1.0;
  for (int k = 1; k <= n; ++k) c[n - k] = -q[k - 1].real();
  return c;
}

double oracle_eval(const std::vector<double>& p, double x) {
  double acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<double> oracle_deriv(const std::vector<double>& p) {
  std::vector<double> d(p.size() - 1);
  for (size_t k = 1; k < p.size(); ++k) d[k - 1] = k * p[k];
  return d;
}

std::vector<std::vector<double>> oracle_sturm(const std::vector<double>& p) {
  auto normalize = [](std::vector<double> q) {
    double m = 0.0;
    for (double v : q) m = std::max(m, std::fabs(v));
    if (m > 0.0)
      for (double& v : q) v /= m;
    return q;
  };
  std::vector<std::vector<double>> chain{normalize(p), normalize(oracle_deriv(p))};
  for (;;) {
    const auto& num = chain[chain.size() - 2];
    const auto& den = chain.back();
    if (den.size() <= 1) break;
    std::vector<double> r = num;
    while (r.size() >= den.size()) {
      const double f = r.back() / den.back();
      const size_t shift = r.size() - den.size();
      for (size_t k = 0; k < den.size(); ++k) r[k + shift] -= f * den[k];
      r.pop_back();
      while (!r.empty() && std::fabs(r.back()) < 1e-13) r.pop_back();
    }
    if (r.empty()) break;
    for (double& v : r) v = -v;
    chain.push_back(normalize(r));
  }
  return chain;
}

int oracle_variations(const std::vector<std::vector<double>>& chain, double x) {
  int v = 0, prev = 0;
  for (const auto& p : chain) {
    const double val = oracle_eval(p, x);
    const int s = val > 0.0 ? 1 : (val < 0.0 ? -1 : 0);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

// All eigenvalues of a Hermitian matrix with distinct spectrum, ascending.
std::vector<double> oracle_hermitian_spectrum(const Matrix& a) {
  const auto p = oracle_charpoly(a);
  const auto chain = oracle_sturm(p);
  double bound = 0.0;
  for (size_t k = 0; k + 1 < p.size(); ++k) bound = std::max(bound, std::fabs(p[k]));
  bound = bound + 1.0;
  const int total = oracle_variations(chain, -bound) - oracle_variations(chain, bound);
  REQUIRE(total == a.rows());

  std::vector<double> roots;
  std::vector<std::pair<double, double>> work{{-bound, bound}};
  while (!work.empty()) {
    auto [lo, hi] = work.back();
    work.pop_back();
    const int count = oracle_variations(chain, lo) - oracle_variations(chain, hi);
    if (count == 0) continue;
    if (count == 1) {
      double a_ = lo, b_ = hi;
      const int va = oracle_variations(chain, a_);
      while (b_ - a_ > 1e-12) {
        const double m = 0.5 * (a_ + b_);
        if (oracle_variations(chain, m) == va)
          a_ = m;
        else
          b_ = m;
      }
      roots.push_back(0.5 * (a_ + b_));
      continue;
    }
    const double m = 0.5 * (lo + hi);
    work.push_back({lo, m});
    work.push_back({m, hi});
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace

TEST_CASE("hermitian_eigen on a diagonal matrix") {
  const Matrix a{{1.0, 0.0}, {0.0, -1.0}};
  const auto d = hermitian_eigen(a);
  CHECK(d.values[0] == Complex(-1.0, 0.0));
  CHECK(d.values[1] == Complex(1.0, 0.0));
  CHECK(std::abs(d.vectors(1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(d.vectors(0, 1)) == doctest::Approx(1.0));
}

TEST_CASE("hermitian_eigen on the scaled rotation seed") {
  const double s = 1.0 / 16.0;  // 2^(-n^2) at n = 2
  const Matrix a{{s, s}, {s, -s}};
  const auto d = hermitian_eigen(a);
  const double expected = std::sqrt(2.0) / 16.0;
  CHECK(d.values[0].real() == doctest::Approx(-expected).epsilon(1e-14));
  CHECK(d.values[1].real() == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("hermitian_eigen matches the Sturm bisection oracle") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix a = random_hermitian(rng, 6);
    const auto d = hermitian_eigen(a);
    const auto expected = oracle_hermitian_spectrum(a);
    for (int i = 0; i < 6; ++i) {
      CHECK(std::fabs(d.values[i].real() - expected[i]) < 1e-8);
      CHECK(d.values[i].imag() == 0.0);
    }
  }
}

TEST_CASE("hermitian_eigen rejects non-hermitian input") {
  const Matrix a{{0.0, 1.0}, {2.0, 0.0}};
  CHECK_THROWS_AS(hermitian_eigen(a), NotHermitian);
}

TEST_CASE("spectral decompositions satisfy the residual and orthonormality gates") {
  std::mt19937_64 rng(11);
  for (int n : {2, 3, 8, 24}) {
    const Matrix a = random_hermitian(rng, n);
    const auto d = hermitian_eigen(a);
    CHECK(d.residual <= 1e-10 * a.frobenius_norm());
    const Matrix gram = d.vectors.adjoint() * d.vectors - Matrix::identity(n);
    CHECK(gram.frobenius_norm() <= 1e-10 * n);
    // sorted ascending
    for (int i = 0; i + 1 < n; ++i)
      CHECK(d.values[i].real() <= d.values[i + 1].real());
  }
}

TEST_CASE("normal_eigen on a diagonal imaginary pair") {
  const Matrix a{{Complex(0.0, 1.0), 0.0}, {0.0, Complex(0.0, -1.0)}};
  const auto d = normal_eigen(a);
  CHECK(std::abs(d.values[0] - Complex(0.0, -1.0)) < 1e-14);
  CHECK(std::abs(d.values[1] - Complex(0.0, 1.0)) < 1e-14);
}

TEST_CASE("normal_eigen on an off-diagonal complex pair") {
  // quadratic-formula oracle: eigenvalues of [[0, c], [c, 0]] are +-c
  const Complex c(1.0, 2.0);
  const Matrix a{{0.0, c}, {c, 0.0}};
  const auto d = normal_eigen(a);
  CHECK(std::abs(d.values[0] - (-c)) < 1e-12);
  CHECK(std::abs(d.values[1] - c) < 1e-12);
  CHECK(d.residual <= 1e-10 * a.frobenius_norm());
}

TEST_CASE("normal_eigen on a product of Givens rotations") {
  // unitarity of the construction forces |lambda| = 1
  auto givens = [](int n, int p, int q, double theta) {
    Matrix g = Matrix::identity(n);
    g(p, p) = std::cos(theta);
    g(q, q) = std::cos(theta);
    g(p, q) = -std::sin(theta);
    g(q, p) = std::sin(theta);
    return g;
  };
  const Matrix u = givens(4, 0, 1, 0.3) * givens(4, 1, 2, 1.1) * givens(4, 2, 3, -0.7) *
                   givens(4, 0, 3, 0.9);
  const auto d = normal_eigen(u);
  for (const auto& v : d.values) CHECK(std::fabs(std::abs(v) - 1.0) < 1e-10);
}

TEST_CASE("normal_eigen rejects a non-normal matrix") {
  const Matrix a{{0.0, 1.0}, {2.0, 0.0}};
  CHECK_THROWS_AS(normal_eigen(a), NotNormal);
}

TEST_CASE("normality defect values") {
  std::mt19937_64 rng(3);
  const Matrix h = random_hermitian(rng, 5);
  CHECK(normality_defect(h) <= 1e-13 * h.frobenius_norm() * h.frobenius_norm() + 1e-14);

  const Matrix a{{0.0, 1.0}, {2.0, 0.0}};
  CHECK(normality_defect(a) == doctest::Approx(3.0 * std::sqrt(2.0)));

  const Matrix u = random_unitary(rng, 4);
  CHECK(normality_defect(u) < 1e-12);
}

TEST_CASE("normality defect is unitarily invariant") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix a = random_matrix(rng, 5);
    const Matrix u = random_unitary(rng, 5);
    const double base = normality_defect(a);
    const double rotated = normality_defect(u * a * u.adjoint());
    CHECK(std::fabs(base - rotated) < 1e-10 * (1.0 + base));
  }
}

TEST_CASE("hermitian and normal solvers agree on hermitian input") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix a = random_hermitian(rng, 6);
    const auto dh = hermitian_eigen(a);
    const auto dn = normal_eigen(a);
    CHECK(matching::matching_distance(dh.values, dn.values) <= 1e-9);
  }
}

TEST_CASE("gram_schmidt basics") {
  const Vector e0{1.0, 0.0};
  const Vector e1{0.0, 1.0};
  SUBCASE("standard basis is fixed") {
    const auto q = gram_schmidt({e0, e1});
    CHECK(norm(q[0] - e0) == 0.0);
    CHECK(norm(q[1] - e1) == 0.0);
  }
  SUBCASE("hand-computed orthonormalization") {
    const auto q = gram_schmidt({Vector{1.0, 0.0}, Vector{1.0, 1.0}});
    CHECK(std::abs(q[0][0] - Complex(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(q[1][1] - Complex(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(q[1][0]) < 1e-15);
  }
  SUBCASE("near-dependent pair is rejected") {
    const Vector v0{1.0, 0.0};
    const Vector v1{1.0, 1e-9};
    CHECK_THROWS_AS(gram_schmidt({v0, v1}), RankDeficient);
  }
}

TEST_CASE("gram_schmidt output is orthonormal and deterministic") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 6;
    std::vector<Vector> vs;
    for (int i = 0; i < n; ++i) {
      const Matrix m = random_matrix(rng, n);
      vs.push_back(m.col(0));
    }
    std::vector<Vector> q1, q2;
    try {
      q1 = gram_schmidt(vs);
    } catch (const RankDeficient&) {
      continue;
    }
    q2 = gram_schmidt(vs);
    for (int i = 0; i < n; ++i)
      for (int r = 0; r < n; ++r) CHECK(q1[i][r] == q2[i][r]);  // bit-identical
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Complex g = dot(q1[i], q1[j]);
        CHECK(std::abs(g - (i == j ? 1.0 : 0.0)) < 1e-12);
      }
  }
}

TEST_CASE("operator norm") {
  CHECK(operator_norm(Matrix{{3.0, 0.0}, {0.0, -4.0}}) == doctest::Approx(4.0));
  CHECK(operator_norm(Matrix{{0.0, -0.5}, {-0.5, 0.0}}) == doctest::Approx(0.5));

  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix a = random_matrix(rng, 6);
    const double pow_norm = operator_norm(a);
    const auto d = hermitian_eigen(a.adjoint() * a);
    const double exact = std::sqrt(std::max(0.0, d.values.back().real()));
    CHECK(pow_norm == doctest::Approx(exact).epsilon(1e-8));
  }
}

TEST_CASE("lu solve") {
  const Vector b{1.0, Complex(2.0, 1.0), -3.0};
  const Matrix id = Matrix::identity(3);
  const Vector x = lu_solve(id, b);
  for (int i = 0; i < 3; ++i) CHECK(x[i] == b[i]);

  std::mt19937_64 rng(43);
  const Matrix a = random_matrix(rng, 6);
  const Vector rhs = random_matrix(rng, 6).col(0);
  const Vector sol = lu_solve(a, rhs);
  CHECK(norm(a * sol - rhs) < 1e-10 * a.frobenius_norm() * norm(sol));

  Matrix singular(2, 2);
  singular(0, 0) = 1.0;  // second row zero
  CHECK_THROWS_AS(lu_solve(singular, Vector{1.0, 1.0}), Singular);
}
