#pragma once

#include <complex>
#include <random>
#include <vector>

#include "eigencurve/linalg.hpp"
#include "eigencurve/matrix.hpp"

namespace testutil {

using eigencurve::Complex;
using eigencurve::Matrix;
using eigencurve::Vector;

inline Matrix random_matrix(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(uni(rng), uni(rng));
  return m;
}

inline Matrix random_hermitian(std::mt19937_64& rng, int n) {
  Matrix m = random_matrix(rng, n);
  return (m + m.adjoint()) * 0.5;
}

inline Matrix random_real_symmetric(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double v = uni(rng);
      m(i, j) = v;
      m(j, i) = v;
    }
  return m;
}

// Unitary matrix from Gram-Schmidt on a random complex matrix.
inline Matrix random_unitary(std::mt19937_64& rng, int n) {
  for (;;) {
    try {
      return eigencurve::gram_schmidt_columns(random_matrix(rng, n));
    } catch (const eigencurve::RankDeficient&) {
      // essentially impossible; retry
    }
  }
}

// Random normal matrix U diag(d) U*.
inline Matrix random_normal(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const Matrix u = random_unitary(rng, n);
  Vector d(n);
  for (auto& z : d) z = Complex(uni(rng), uni(rng));
  return u * Matrix::diagonal(d) * u.adjoint();
}

}  // namespace testutil
