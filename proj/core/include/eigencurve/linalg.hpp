#pragma once

#include <vector>

#include "eigencurve/matrix.hpp"
#include "eigencurve/tolerances.hpp"

namespace eigencurve {

/// Eigenvalues sorted by (real, imaginary), unit eigenvector columns with the
/// largest-modulus component made real positive, and the verified residual
/// ||A V - V diag(values)||_F.
struct SpectralDecomposition {
  Vector values;
  Matrix vectors;
  double residual = 0.0;
};

/// ||A A* - A* A||_F.
double normality_defect(const Matrix& a);

/// Cyclic Jacobi for Hermitian matrices. Eigenvalues come out real (zero
/// imaginary part) and ascending. Throws NotHermitian if the input fails the
/// relative symmetry gate, NoConvergence if the residual target is not met
/// within the sweep cap.
SpectralDecomposition hermitian_eigen(const Matrix& a, const Tolerances& tol = {});

/// Eigendecomposition of a normal matrix via its commuting Hermitian and
/// skew-Hermitian parts: H is diagonalized first, then the skew part is
/// rediagonalized inside each H-eigenvalue cluster.
SpectralDecomposition normal_eigen(const Matrix& a, const Tolerances& tol = {});

/// Modified Gram-Schmidt with one re-orthogonalization pass. Deterministic:
/// equal inputs give bit-identical outputs. Throws RankDeficient with the
/// index of the first dependent vector.
std::vector<Vector> gram_schmidt(const std::vector<Vector>& vectors,
                                 const Tolerances& tol = {});
/// Column-wise convenience wrapper.
Matrix gram_schmidt_columns(const Matrix& columns, const Tolerances& tol = {});

/// Largest singular value. Power iteration on A*A with a deterministic seeded
/// start vector; Hermitian inputs take an exact path through the eigensolver.
double operator_norm(const Matrix& a, const Tolerances& tol = {});

/// LU with partial pivoting, reusable for many right-hand sides.
class LuFactorization {
 public:
  LuFactorization(const Matrix& a, const Tolerances& tol = {});
  /// Smallest |pivot| seen during elimination.
  double min_pivot() const { return min_pivot_; }
  double scale() const { return scale_; }
  bool singular() const { return singular_; }
  /// Throws Singular when the factorization hit the pivot floor.
  Vector solve(const Vector& b) const;
  Matrix solve(const Matrix& b) const;
  Matrix inverse() const;

 private:
  Matrix lu_;
  std::vector<int> perm_;
  double min_pivot_ = 0.0;
  double scale_ = 0.0;
  bool singular_ = false;
};

Vector lu_solve(const Matrix& a, const Vector& b, const Tolerances& tol = {});

}  // namespace eigencurve
