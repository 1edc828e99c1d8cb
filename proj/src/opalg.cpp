#include "ncdyn/opalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <unsupported/Eigen/MatrixFunctions>

#include "ncdyn/error.hpp"

namespace ncdyn {

namespace {

void require_square(const Matrix& a, const char* who) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorKind::NonSquare, std::string(who) + ": matrix is " +
                                          std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

}  // namespace

double operator_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

bool is_hermitian(const Matrix& a, double rel_tol) {
  if (a.rows() != a.cols()) return false;
  const double defect = operator_norm(a - a.adjoint());
  return defect <= rel_tol * operator_norm(a);
}

double min_eigenvalue(const Matrix& a) {
  require_square(a, "min_eigenvalue");
  Matrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

bool is_psd(const Matrix& a, double rel_tol) {
  return min_eigenvalue(a) >= -rel_tol * std::max(1.0, operator_norm(a));
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Vector vec(const Matrix& a) {
  return Eigen::Map<const Vector>(a.data(), a.size());
}

Matrix unvec(const Vector& v, Eigen::Index n) {
  if (v.size() != n * n) {
    throw Error(ErrorKind::DimensionMismatch, "unvec: vector length is not n^2");
  }
  return Eigen::Map<const Matrix>(v.data(), n, n);
}

EigenSystem eig_descending(const Matrix& a) {
  require_square(a, "eig_descending");
  if (!is_hermitian(a)) {
    throw Error(ErrorKind::NonHermitian, "eig_descending: ||A - A*|| exceeds 1e-10 ||A||");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (a + a.adjoint()));
  const Eigen::Index n = a.rows();
  EigenSystem out;
  out.values.resize(static_cast<std::size_t>(n));
  out.vectors.resize(n, n);
  // Eigen sorts ascending.
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values[static_cast<std::size_t>(k)] = es.eigenvalues()(n - 1 - k);
    out.vectors.col(k) = es.eigenvectors().col(n - 1 - k);
  }
  return out;
}

double trace_norm(const Matrix& a) {
  require_square(a, "trace_norm");
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues().sum();
}

Matrix expm(const Matrix& a, double t) {
  require_square(a, "expm");
  if (t == 0.0) return Matrix::Identity(a.rows(), a.cols());
  Matrix scaled = t * a;
  return scaled.exp();
}

std::optional<double> conjugacy_shift(const Matrix& x, const Matrix& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "conjugacy_shift: operands differ in dimension");
  }
  const auto sx = eig_descending(x).values;
  const auto sy = eig_descending(y).values;
  if (sx.empty()) return 0.0;
  const double n = static_cast<double>(sx.size());
  const double lambda = (std::accumulate(sy.begin(), sy.end(), 0.0) -
                         std::accumulate(sx.begin(), sx.end(), 0.0)) / n;
  double scale = 1.0;
  for (std::size_t k = 0; k < sx.size(); ++k) {
    scale = std::max({scale, std::abs(sx[k]), std::abs(sy[k])});
  }
  const double tol = 1e-9 * scale;
  for (std::size_t k = 0; k < sx.size(); ++k) {
    if (std::abs(sx[k] + lambda - sy[k]) > tol) return std::nullopt;
  }
  return lambda;
}

DensityMatrix::DensityMatrix(Matrix m) : m_(std::move(m)) {
  require_square(m_, "DensityMatrix");
  if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw Error(ErrorKind::NonHermitian, "DensityMatrix: not Hermitian within 1e-12");
  }
  if (std::abs(m_.trace() - Complex(1.0)) > 1e-12) {
    throw Error(ErrorKind::NotNormalized, "DensityMatrix: trace differs from 1 by more than 1e-12");
  }
  if (min_eigenvalue(m_) < -1e-12) {
    throw Error(ErrorKind::InvalidArgument, "DensityMatrix: negative eigenvalue below -1e-12");
  }
}

}  // namespace ncdyn
