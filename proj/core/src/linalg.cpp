#include "eigencurve/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "eigencurve/errors.hpp"

namespace eigencurve {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

template <class S>
double abs2(const S& x) {
  if constexpr (std::is_same_v<S, double>) {
    return x * x;
  } else {
    return std::norm(x);
  }
}

template <class S>
S conj_of(const S& x) {
  if constexpr (std::is_same_v<S, double>) {
    return x;
  } else {
    return std::conj(x);
  }
}

template <class S>
double real_of(const S& x) {
  if constexpr (std::is_same_v<S, double>) {
    return x;
  } else {
    return x.real();
  }
}

// One cyclic-by-rows Jacobi pass over the strict upper triangle. Pivots whose
// modulus is below eps*sqrt(|a_pp a_qq|) are already negligible relative to
// the eigenvalues they couple and are skipped. Returns the rotation count.
template <class S>
int jacobi_sweep(std::vector<S>& a, std::vector<S>& w, int n) {
  int rotations = 0;
  for (int p = 0; p < n - 1; ++p) {
    for (int q = p + 1; q < n; ++q) {
      const S apq = a[static_cast<size_t>(p) * n + q];
      const double mag = std::sqrt(abs2(apq));
      if (mag == 0.0) continue;
      const double app = real_of(a[static_cast<size_t>(p) * n + p]);
      const double aqq = real_of(a[static_cast<size_t>(q) * n + q]);
      if (mag <= kEps * std::sqrt(std::fabs(app * aqq))) continue;

      const double tau = (aqq - app) / (2.0 * mag);
      const double sign = tau >= 0.0 ? 1.0 : -1.0;
      const double t = sign / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
      const double c = 1.0 / std::sqrt(1.0 + t * t);
      const double sigma = t * c;
      // s carries the phase of the pivot so the rotated pivot is exactly zero.
      S s;
      if constexpr (std::is_same_v<S, double>) {
        s = sigma * (apq >= 0.0 ? 1.0 : -1.0);
      } else {
        s = (sigma / mag) * apq;
      }
      const S sbar = conj_of(s);

      S* row_p = a.data() + static_cast<size_t>(p) * n;
      S* row_q = a.data() + static_cast<size_t>(q) * n;
      for (int k = 0; k < n; ++k) {
        const S rp = row_p[k];
        const S rq = row_q[k];
        row_p[k] = c * rp - s * rq;
        row_q[k] = sbar * rp + c * rq;
      }
      // Restore Hermitian symmetry: mirror the updated rows into the columns
      // and write the rotated 2x2 block directly.
      for (int k = 0; k < n; ++k) {
        if (k == p || k == q) continue;
        a[static_cast<size_t>(k) * n + p] = conj_of(row_p[k]);
        a[static_cast<size_t>(k) * n + q] = conj_of(row_q[k]);
      }
      row_p[p] = S(app - t * mag);
      row_q[q] = S(aqq + t * mag);
      row_p[q] = S(0.0);
      row_q[p] = S(0.0);

      // w rows are the columns of the accumulated V; V <- V U gives
      // col_p <- c col_p - conj(s) col_q, col_q <- s col_p + c col_q.
      S* wp = w.data() + static_cast<size_t>(p) * n;
      S* wq = w.data() + static_cast<size_t>(q) * n;
      for (int k = 0; k < n; ++k) {
        const S vp = wp[k];
        const S vq = wq[k];
        wp[k] = c * vp - sbar * vq;
        wq[k] = s * vp + c * vq;
      }
      ++rotations;
    }
  }
  return rotations;
}

template <class S>
double off_norm(const std::vector<S>& a, int n) {
  double s = 0.0;
  for (int p = 0; p < n - 1; ++p)
    for (int q = p + 1; q < n; ++q) s += abs2(a[static_cast<size_t>(p) * n + q]);
  return std::sqrt(2.0 * s);
}

// Runs sweeps until a full pass performs no rotation or the cap is reached.
// `w` accumulates the transposed eigenvector matrix (row j = eigenvector j).
template <class S>
void jacobi_eigen(std::vector<S>& a, std::vector<S>& w, int n, int sweep_cap) {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w[static_cast<size_t>(i) * n + j] = S(i == j ? 1.0 : 0.0);
  const double scale = [&] {
    double s = 0.0;
    for (const auto& z : a) s += abs2(z);
    return std::sqrt(s);
  }();
  if (scale == 0.0) return;
  double prev_off = std::numeric_limits<double>::infinity();
  for (int sweep = 0; sweep < sweep_cap; ++sweep) {
    const int rotations = jacobi_sweep(a, w, n);
    if (rotations == 0) break;
    const double off = off_norm(a, n);
    if (off <= 1e-15 * scale) break;
    if (off >= prev_off) break;  // rounding floor reached
    prev_off = off;
  }
}

struct EigenRaw {
  std::vector<double> values;
  Matrix vectors;  // unit columns, unsorted
};

EigenRaw jacobi_dispatch(const Matrix& a, const Tolerances& tol) {
  const int n = a.rows();
  bool real_input = true;
  for (int i = 0; i < n && real_input; ++i)
    for (int j = 0; j < n; ++j)
      if (a(i, j).imag() != 0.0) {
        real_input = false;
        break;
      }

  EigenRaw out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  if (real_input) {
    std::vector<double> m(static_cast<size_t>(n) * n), w(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m[static_cast<size_t>(i) * n + j] = a(i, j).real();
    jacobi_eigen(m, w, n, tol.jacobi_sweep_cap);
    for (int j = 0; j < n; ++j) {
      out.values[j] = m[static_cast<size_t>(j) * n + j];
      for (int i = 0; i < n; ++i) out.vectors(i, j) = w[static_cast<size_t>(j) * n + i];
    }
  } else {
    std::vector<Complex> m(static_cast<size_t>(n) * n), w(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m[static_cast<size_t>(i) * n + j] = a(i, j);
    jacobi_eigen(m, w, n, tol.jacobi_sweep_cap);
    for (int j = 0; j < n; ++j) {
      out.values[j] = m[static_cast<size_t>(j) * n + j].real();
      for (int i = 0; i < n; ++i) out.vectors(i, j) = w[static_cast<size_t>(j) * n + i];
    }
  }
  return out;
}

bool value_less(const Complex& x, const Complex& y) {
  if (x.real() != y.real()) return x.real() < y.real();
  return x.imag() < y.imag();
}

// Sort columns by eigenvalue (re, im), then rotate each column's phase so its
// largest-modulus component (lowest index on ties) is real positive.
void canonicalize(SpectralDecomposition& d) {
  const int n = d.vectors.rows();
  const int m = static_cast<int>(d.values.size());
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return value_less(d.values[i], d.values[j]); });
  Vector values(m);
  Matrix vectors(n, m);
  for (int j = 0; j < m; ++j) {
    values[j] = d.values[order[j]];
    for (int i = 0; i < n; ++i) vectors(i, j) = d.vectors(i, order[j]);
  }
  for (int j = 0; j < m; ++j) {
    int arg = 0;
    double best = -1.0;
    for (int i = 0; i < n; ++i) {
      const double v = std::abs(vectors(i, j));
      if (v > best) {
        best = v;
        arg = i;
      }
    }
    if (best > 0.0) {
      const Complex phase = std::conj(vectors(arg, j)) / best;
      for (int i = 0; i < n; ++i) vectors(i, j) *= phase;
      vectors(arg, j) = Complex(std::abs(vectors(arg, j)), 0.0);
    }
  }
  d.values = std::move(values);
  d.vectors = std::move(vectors);
}

double eigen_residual_norm(const Matrix& a, const SpectralDecomposition& d) {
  Matrix av = a * d.vectors;
  const int n = a.rows();
  for (int j = 0; j < static_cast<int>(d.values.size()); ++j)
    for (int i = 0; i < n; ++i) av(i, j) -= d.values[j] * d.vectors(i, j);
  return av.frobenius_norm();
}

}  // namespace

double normality_defect(const Matrix& a) {
  const Matrix ah = a.adjoint();
  return (a * ah - ah * a).frobenius_norm();
}

SpectralDecomposition hermitian_eigen(const Matrix& a, const Tolerances& tol) {
  if (!a.square()) throw NotHermitian("hermitian_eigen: matrix is not square");
  a.require_finite("hermitian_eigen");
  const double scale = a.frobenius_norm();
  const double herm_defect = (a - a.adjoint()).frobenius_norm();
  if (herm_defect > tol.hermitian_check * scale) {
    std::ostringstream os;
    os << "hermitian_eigen: ||A - A*||_F = " << herm_defect << " exceeds "
       << tol.hermitian_check << " * ||A||_F";
    throw NotHermitian(os.str());
  }

  EigenRaw raw = jacobi_dispatch(a, tol);
  SpectralDecomposition d;
  d.values.assign(raw.values.begin(), raw.values.end());
  d.vectors = std::move(raw.vectors);
  canonicalize(d);
  d.residual = eigen_residual_norm(a, d);
  if (d.residual > tol.eigen_residual * scale && scale > 0.0) {
    std::ostringstream os;
    os << "hermitian_eigen: residual " << d.residual << " exceeds "
       << tol.eigen_residual << " * ||A||_F after " << tol.jacobi_sweep_cap
       << " sweeps";
    throw NoConvergence(os.str());
  }
  return d;
}

SpectralDecomposition normal_eigen(const Matrix& a, const Tolerances& tol) {
  if (!a.square()) throw NotNormal("normal_eigen: matrix is not square");
  a.require_finite("normal_eigen");
  const int n = a.rows();
  const double scale = a.frobenius_norm();
  const double defect = normality_defect(a);
  if (defect > tol.normality_check * scale * scale && scale > 0.0) {
    std::ostringstream os;
    os << "normal_eigen: ||AA* - A*A||_F = " << defect << " exceeds "
       << tol.normality_check << " * ||A||_F^2";
    throw NotNormal(os.str());
  }

  const Matrix ah = a.adjoint();
  const Matrix h = (a + ah) * 0.5;
  const Matrix k = (a - ah) * Complex(0.0, -0.5);

  SpectralDecomposition hd = hermitian_eigen(h, tol);

  // Re-diagonalize the skew part inside each cluster of H-eigenvalues. For a
  // normal matrix the two parts commute, so K is block-diagonal in this basis
  // up to the cluster tolerance.
  Matrix vectors(n, n);
  const double gap = tol.cluster_gap * scale;
  int lo = 0;
  while (lo < n) {
    int hi = lo + 1;
    while (hi < n && hd.values[hi].real() - hd.values[hi - 1].real() <= gap) ++hi;
    if (hi - lo == 1) {
      for (int i = 0; i < n; ++i) vectors(i, lo) = hd.vectors(i, lo);
    } else {
      const Matrix vc = hd.vectors.cols_block(lo, hi);
      Matrix kc = vc.adjoint() * (k * vc);
      kc = (kc + kc.adjoint()) * 0.5;
      const SpectralDecomposition kd = hermitian_eigen(kc, tol);
      const Matrix mixed = vc * kd.vectors;
      for (int j = 0; j < hi - lo; ++j)
        for (int i = 0; i < n; ++i) vectors(i, lo + j) = mixed(i, j);
    }
    lo = hi;
  }

  SpectralDecomposition d;
  d.vectors = std::move(vectors);
  d.values.resize(n);
  for (int j = 0; j < n; ++j) {
    const Vector v = d.vectors.col(j);
    const double hj = dot(v, h * v).real();
    const double kj = dot(v, k * v).real();
    d.values[j] = Complex(hj, kj);
  }
  canonicalize(d);
  d.residual = eigen_residual_norm(a, d);
  if (d.residual > tol.eigen_residual * scale && scale > 0.0) {
    std::ostringstream os;
    os << "normal_eigen: residual " << d.residual << " exceeds "
       << tol.eigen_residual << " * ||A||_F";
    throw NoConvergence(os.str());
  }
  return d;
}

std::vector<Vector> gram_schmidt(const std::vector<Vector>& vectors,
                                 const Tolerances& tol) {
  const int m = static_cast<int>(vectors.size());
  if (m == 0) return {};
  const int n = static_cast<int>(vectors[0].size());
  for (const auto& v : vectors)
    if (static_cast<int>(v.size()) != n)
      throw LengthMismatch("gram_schmidt: vectors of unequal dimension");

  // Independence gate: singular values of the input estimated via the
  // eigenvalues of the Gram matrix.
  Matrix gram(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) gram(i, j) = dot(vectors[i], vectors[j]);
  gram = (gram + gram.adjoint()) * 0.5;
  const SpectralDecomposition gd = hermitian_eigen(gram, tol);
  const double lo = std::max(gd.values.front().real(), 0.0);
  const double hi = std::max(gd.values.back().real(), 0.0);
  const bool dependent =
      m > n || hi == 0.0 || std::sqrt(lo / hi) < tol.gs_independence;

  std::vector<Vector> basis;
  basis.reserve(m);
  for (int i = 0; i < m; ++i) {
    Vector u = vectors[i];
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) {
        const Complex c = dot(q, u);
        for (int r = 0; r < n; ++r) u[r] -= c * q[r];
      }
    const double rnorm = norm(u);
    const double vnorm = norm(vectors[i]);
    if (rnorm <= tol.gs_independence * vnorm || rnorm == 0.0) {
      std::ostringstream os;
      os << "gram_schmidt: vector " << i << " is dependent on its predecessors";
      throw RankDeficient(i, os.str());
    }
    for (auto& z : u) z /= rnorm;
    basis.push_back(std::move(u));
  }
  if (dependent) {
    // The Gram gate tripped but elimination survived: report the weakest ratio.
    throw RankDeficient(m - 1, "gram_schmidt: input not independent at the Gram gate");
  }
  return basis;
}

Matrix gram_schmidt_columns(const Matrix& columns, const Tolerances& tol) {
  std::vector<Vector> in;
  in.reserve(columns.cols());
  for (int j = 0; j < columns.cols(); ++j) in.push_back(columns.col(j));
  const auto out = gram_schmidt(in, tol);
  Matrix r(columns.rows(), columns.cols());
  for (int j = 0; j < columns.cols(); ++j) r.set_col(j, out[j]);
  return r;
}

double operator_norm(const Matrix& a, const Tolerances& tol) {
  if (a.empty()) return 0.0;
  a.require_finite("operator_norm");
  const double scale = a.max_abs();
  if (scale == 0.0) return 0.0;

  // Hermitian inputs: the operator norm is the largest |eigenvalue|, which the
  // Jacobi solver delivers to machine accuracy.
  if (a.square()) {
    const double herm = (a - a.adjoint()).frobenius_norm();
    if (herm <= 1e-12 * a.frobenius_norm()) {
      const SpectralDecomposition d = hermitian_eigen(a, tol);
      double m = 0.0;
      for (const auto& v : d.values) m = std::max(m, std::abs(v.real()));
      return m;
    }
  }

  const Matrix m = a.adjoint() * a;
  const int n = m.rows();
  std::mt19937_64 rng(0x243F6A8885A308D3ull);  // fixed seed: deterministic output
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Vector v(n);
  for (auto& z : v) z = Complex(uni(rng), uni(rng));
  double vn = norm(v);
  for (auto& z : v) z /= vn;

  double rho_prev = -1.0;
  double rho = 0.0;
  const int cap = 20000;
  for (int it = 0; it < cap; ++it) {
    Vector w = m * v;
    rho = dot(v, w).real();
    const double wn = norm(w);
    if (wn == 0.0) return 0.0;
    for (size_t i = 0; i < w.size(); ++i) v[i] = w[i] / wn;
    if (it >= 10 && std::fabs(rho - rho_prev) <= tol.opnorm_rel * std::fabs(rho)) break;
    rho_prev = rho;
  }
  return std::sqrt(std::max(rho, 0.0));
}

LuFactorization::LuFactorization(const Matrix& a, const Tolerances& tol) {
  if (!a.square()) throw Singular("lu: matrix is not square");
  a.require_finite("lu");
  const int n = a.rows();
  lu_ = a;
  scale_ = a.frobenius_norm();
  perm_.resize(n);
  std::iota(perm_.begin(), perm_.end(), 0);
  min_pivot_ = std::numeric_limits<double>::infinity();

  for (int k = 0; k < n; ++k) {
    int piv = k;
    double best = std::abs(lu_(k, k));
    for (int i = k + 1; i < n; ++i) {
      const double v = std::abs(lu_(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(piv, j));
      std::swap(perm_[k], perm_[piv]);
    }
    min_pivot_ = std::min(min_pivot_, best);
    if (best <= tol.lu_pivot * scale_) {
      singular_ = true;
      return;
    }
    const Complex pivot = lu_(k, k);
    for (int i = k + 1; i < n; ++i) {
      const Complex f = lu_(i, k) / pivot;
      lu_(i, k) = f;
      if (f == Complex(0.0, 0.0)) continue;
      for (int j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
    }
  }
  if (n == 0) min_pivot_ = 0.0;
}

Vector LuFactorization::solve(const Vector& b) const {
  const int n = lu_.rows();
  if (static_cast<int>(b.size()) != n) throw LengthMismatch("lu_solve: size mismatch");
  if (singular_) throw Singular("lu_solve: pivot below threshold");
  Vector y(n);
  for (int i = 0; i < n; ++i) {
    Complex s = b[perm_[i]];
    for (int j = 0; j < i; ++j) s -= lu_(i, j) * y[j];
    y[i] = s;
  }
  for (int i = n - 1; i >= 0; --i) {
    Complex s = y[i];
    for (int j = i + 1; j < n; ++j) s -= lu_(i, j) * y[j];
    y[i] = s / lu_(i, i);
  }
  return y;
}

Matrix LuFactorization::solve(const Matrix& b) const {
  Matrix x(b.rows(), b.cols());
  for (int j = 0; j < b.cols(); ++j) x.set_col(j, solve(b.col(j)));
  return x;
}

Matrix LuFactorization::inverse() const { return solve(Matrix::identity(lu_.rows())); }

Vector lu_solve(const Matrix& a, const Vector& b, const Tolerances& tol) {
  return LuFactorization(a, tol).solve(b);
}

}  // namespace eigencurve
