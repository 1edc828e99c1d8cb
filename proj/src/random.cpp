#include "ncdyn/random.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace ncdyn::random {

Matrix ginibre(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      m(i, j) = Complex(re, im) / std::sqrt(2.0);
    }
  }
  return m;
}

Vector complex_vector(Rng& rng, Eigen::Index n) {
  return ginibre(rng, n, 1).col(0);
}

Matrix hermitian(Rng& rng, Eigen::Index n) {
  Matrix g = ginibre(rng, n, n);
  return 0.5 * (g + g.adjoint());
}

Matrix unitary(Rng& rng, Eigen::Index n) {
  Eigen::HouseholderQR<Matrix> qr(ginibre(rng, n, n));
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

Matrix density(Rng& rng, Eigen::Index n) {
  Matrix g = ginibre(rng, n, n);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

std::vector<Matrix> unital_kraus(Rng& rng, Eigen::Index n, std::size_t r) {
  std::vector<Matrix> ks;
  Matrix s = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < r; ++i) {
    ks.push_back(ginibre(rng, n, n));
    s += ks.back().adjoint() * ks.back();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (s + s.adjoint()));
  const Matrix inv_sqrt = es.operatorInverseSqrt();
  for (auto& k : ks) k = k * inv_sqrt;
  return ks;
}

std::vector<double> normalized_list(Rng& rng, std::size_t len, double lo) {
  std::uniform_real_distribution<double> unif(lo, 1.0);
  std::vector<double> v(len);
  for (auto& x : v) x = unif(rng);
  const double total = std::accumulate(v.begin(), v.end(), 0.0);
  for (auto& x : v) x /= total;
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

}  // namespace ncdyn::random
