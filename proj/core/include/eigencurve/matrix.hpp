#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

namespace eigencurve {

using Complex = std::complex<double>;
using Vector = std::vector<Complex>;

/// Dense complex matrix, row-major. Square n-by-n in most of the library;
/// rectangular blocks appear as eigenvector frames (n rows, N columns).
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols);
  Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static Matrix identity(int n);
  static Matrix diagonal(const Vector& d);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }
  bool square() const { return rows_ == cols_; }

  Complex& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
  const Complex& operator()(int i, int j) const {
    return data_[static_cast<size_t>(i) * cols_ + j];
  }

  Complex* row_data(int i) { return data_.data() + static_cast<size_t>(i) * cols_; }
  const Complex* row_data(int i) const {
    return data_.data() + static_cast<size_t>(i) * cols_;
  }

  Matrix adjoint() const;
  Matrix transpose() const;
  Matrix conjugate() const;
  Complex trace() const;

  Vector col(int j) const;
  void set_col(int j, const Vector& v);
  /// Columns `lo` (inclusive) to `hi` (exclusive) as a rows x (hi-lo) block.
  Matrix cols_block(int lo, int hi) const;

  double frobenius_norm() const;
  double max_abs() const;
  bool all_finite() const;
  /// Throws NonFinite if any entry is NaN or infinite.
  void require_finite(const char* context) const;

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(Complex s);

  friend Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
  friend Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
  friend Matrix operator*(Matrix lhs, Complex s) { return lhs *= s; }
  friend Matrix operator*(Complex s, Matrix rhs) { return rhs *= s; }
  friend Matrix operator*(Matrix lhs, double s) { return lhs *= Complex(s, 0.0); }
  friend Matrix operator*(double s, Matrix rhs) { return rhs *= Complex(s, 0.0); }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Complex> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, const Vector& x);

// Vector helpers.
Complex dot(const Vector& a, const Vector& b);  // conjugates the first argument
double norm(const Vector& v);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(Complex s, const Vector& v);

double frobenius_norm(const Matrix& a);

}  // namespace eigencurve
