#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace ncdyn {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;

// Relative tolerance for Hermiticity / positivity checks (times the spectral norm).
inline constexpr double kHermitianTol = 1e-10;

/// Spectral norm (largest singular value).
double operator_norm(const Matrix& a);

bool is_hermitian(const Matrix& a, double rel_tol = kHermitianTol);

/// Smallest eigenvalue of the Hermitian part of a.
double min_eigenvalue(const Matrix& a);

/// PSD within rel_tol * max(1, ||a||).
bool is_psd(const Matrix& a, double rel_tol = kHermitianTol);

Matrix kron(const Matrix& a, const Matrix& b);

/// Column-stacking vectorization; vec(A X B) = (B^T kron A) vec(X).
Vector vec(const Matrix& a);
Matrix unvec(const Vector& v, Eigen::Index n);

struct EigenSystem {
  std::vector<double> values;  // nonincreasing, with multiplicity
  Matrix vectors;              // columns are the matching orthonormal eigenvectors
};

/// Spectral decomposition of a Hermitian matrix, eigenvalues sorted nonincreasing.
/// Throws NonHermitian if ||A - A*|| > 1e-10 ||A||.
EigenSystem eig_descending(const Matrix& a);

/// Sum of singular values. Throws NonSquare.
double trace_norm(const Matrix& a);

/// exp(t a). Throws NonSquare.
Matrix expm(const Matrix& a, double t = 1.0);

/// Shift lambda with sorted-spec(x) + lambda = sorted-spec(y) entrywise, which holds
/// exactly when W x W* + lambda 1 = y for some unitary W. Empty when no shift works.
/// Throws DimensionMismatch, NonHermitian.
std::optional<double> conjugacy_shift(const Matrix& x, const Matrix& y);

class DensityMatrix {
 public:
  /// Validates Hermitian, PSD and unit trace, each within 1e-12 (eigenvalues >= -1e-12).
  explicit DensityMatrix(Matrix m);

  const Matrix& matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }

 private:
  Matrix m_;
};

}  // namespace ncdyn
