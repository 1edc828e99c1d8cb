#include "ncdyn/cpdyn.hpp"

#include <algorithm>
#include <cmath>

#include "ncdyn/error.hpp"

namespace ncdyn {

namespace {

Matrix transpose_permutation(Eigen::Index n) {
  Matrix t = Matrix::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) t(j + i * n, i + j * n) = 1.0;
  }
  return t;
}

void require_dim(const Matrix& m, Eigen::Index n, const char* who) {
  if (m.rows() != n || m.cols() != n) {
    throw Error(ErrorKind::DimensionMismatch, std::string(who) + ": expected " + std::to_string(n) +
                                                  "x" + std::to_string(n) + " matrix");
  }
}

}  // namespace

LinearMap::LinearMap(Eigen::Index n, Matrix action) : n_(n), action_(std::move(action)) {
  if (action_.rows() != n * n || action_.cols() != n * n) {
    throw Error(ErrorKind::DimensionMismatch, "LinearMap: action must be n^2 x n^2");
  }
}

LinearMap LinearMap::identity(Eigen::Index n) { return {n, Matrix::Identity(n * n, n * n)}; }

LinearMap LinearMap::transpose(Eigen::Index n) { return {n, transpose_permutation(n)}; }

Matrix LinearMap::apply(const Matrix& a) const {
  require_dim(a, n_, "LinearMap::apply");
  return unvec(action_ * vec(a), n_);
}

LinearMap LinearMap::compose(const LinearMap& other) const {
  if (other.n_ != n_) throw Error(ErrorKind::DimensionMismatch, "LinearMap::compose");
  return {n_, action_ * other.action_};
}

LinearMap LinearMap::predual() const {
  const Matrix t = transpose_permutation(n_);
  return {n_, t * action_.transpose() * t};
}

CPMap::CPMap(std::vector<Matrix> kraus) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw Error(ErrorKind::InvalidArgument, "CPMap: empty Kraus family");
  n_ = kraus_.front().rows();
  Matrix s = Matrix::Zero(n_, n_);
  for (const auto& k : kraus_) {
    require_dim(k, n_, "CPMap");
    s += k.adjoint() * k;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (s + s.adjoint()), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().maxCoeff() > 1.0 + 1e-10) {
    throw Error(ErrorKind::NotCP, "CPMap: sum K*K exceeds the identity (not contractive)");
  }
}

Matrix CPMap::apply(const Matrix& a) const {
  require_dim(a, n_, "CPMap::apply");
  Matrix out = Matrix::Zero(n_, n_);
  for (const auto& k : kraus_) out += k.adjoint() * a * k;
  return out;
}

LinearMap CPMap::as_linear_map() const {
  Matrix action = Matrix::Zero(n_ * n_, n_ * n_);
  for (const auto& k : kraus_) action += kron(k.transpose(), k.adjoint());
  return {n_, action};
}

bool CPMap::is_unital(double tol) const {
  Matrix s = Matrix::Zero(n_, n_);
  for (const auto& k : kraus_) s += k.adjoint() * k;
  return (s - Matrix::Identity(n_, n_)).cwiseAbs().maxCoeff() <= tol;
}

GKLSGenerator::GKLSGenerator(Matrix hamiltonian, std::vector<Matrix> jumps)
    : hamiltonian_(std::move(hamiltonian)), jumps_(std::move(jumps)) {
  if (hamiltonian_.rows() != hamiltonian_.cols()) {
    throw Error(ErrorKind::NonSquare, "GKLSGenerator: Hamiltonian must be square");
  }
  if (!is_hermitian(hamiltonian_)) {
    throw Error(ErrorKind::NonHermitian, "GKLSGenerator: Hamiltonian must be Hermitian");
  }
  for (const auto& v : jumps_) require_dim(v, dim(), "GKLSGenerator jump");
}

Matrix GKLSGenerator::apply(const Matrix& a) const {
  require_dim(a, dim(), "GKLSGenerator::apply");
  const Complex i(0.0, 1.0);
  Matrix out = i * (hamiltonian_ * a - a * hamiltonian_);
  for (const auto& v : jumps_) {
    const Matrix vv = v.adjoint() * v;
    out += v.adjoint() * a * v - 0.5 * (vv * a + a * vv);
  }
  return out;
}

Matrix GKLSGenerator::heisenberg_action() const {
  const Eigen::Index n = dim();
  const Matrix id = Matrix::Identity(n, n);
  const Complex i(0.0, 1.0);
  Matrix l = i * (kron(id, hamiltonian_) - kron(hamiltonian_.transpose(), id));
  for (const auto& v : jumps_) {
    const Matrix vv = v.adjoint() * v;
    l += kron(v.transpose(), v.adjoint()) - 0.5 * (kron(id, vv) + kron(vv.transpose(), id));
  }
  return l;
}

Matrix GKLSGenerator::schrodinger_action() const {
  const Eigen::Index n = dim();
  const Matrix id = Matrix::Identity(n, n);
  const Complex i(0.0, 1.0);
  Matrix l = -i * (kron(id, hamiltonian_) - kron(hamiltonian_.transpose(), id));
  for (const auto& v : jumps_) {
    const Matrix vv = v.adjoint() * v;
    l += kron(v.conjugate(), v) - 0.5 * (kron(id, vv) + kron(vv.transpose(), id));
  }
  return l;
}

Matrix choi(const LinearMap& phi) {
  const Eigen::Index n = phi.dim();
  Matrix c = Matrix::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      c.block(i * n, j * n, n, n) = unvec(phi.action().col(i + j * n), n);
    }
  }
  return c;
}

Matrix choi(const CPMap& phi) {
  const Eigen::Index n = phi.dim();
  Matrix c = Matrix::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      Matrix e = Matrix::Zero(n, n);
      e(i, j) = 1.0;
      c.block(i * n, j * n, n, n) = phi.apply(e);
    }
  }
  return c;
}

bool is_completely_positive(const LinearMap& m, double tol) {
  const Matrix c = choi(m);
  // A CP map has a Hermitian Choi matrix; a non-Hermitian one is not CP.
  if ((c - c.adjoint()).cwiseAbs().maxCoeff() > tol * std::max(1.0, c.cwiseAbs().maxCoeff())) {
    return false;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (c + c.adjoint()), Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return ev(0) >= -tol * std::max(1.0, ev(ev.size() - 1));
}

LinearMap evolve(const GKLSGenerator& gen, double t) {
  if (!(t >= 0.0)) throw Error(ErrorKind::InvalidArgument, "evolve: t must be nonnegative");
  return {gen.dim(), expm(gen.heisenberg_action(), t)};
}

DensityMatrix stationary_state(const GKLSGenerator& gen) {
  const Eigen::Index n = gen.dim();
  const Matrix ls = gen.schrodinger_action();
  Eigen::JacobiSVD<Matrix> svd(ls, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const Eigen::Index m = sv.size();
  const double scale = sv(0);
  const double threshold = 1e-8 * scale;
  if (m < 2 || !(sv(m - 2) > threshold) || sv(m - 1) > threshold) {
    throw Error(ErrorKind::DegenerateKernel,
                "stationary_state: kernel of the Schroedinger generator is not one-dimensional");
  }
  Matrix rho = unvec(svd.matrixV().col(m - 1), n);
  rho /= rho.trace();
  rho = 0.5 * (rho + rho.adjoint());
  return DensityMatrix(rho);
}

GKLSGenerator generator_with_spectrum(const EigenvalueList& lam, Eigen::Index n) {
  if (static_cast<Eigen::Index>(lam.size()) != n || n < 1) {
    throw Error(ErrorKind::InvalidList, "generator_with_spectrum: list length must equal n");
  }
  if (!lam.normalized()) {
    throw Error(ErrorKind::InvalidList, "generator_with_spectrum: list must sum to 1");
  }
  for (double v : lam.values()) {
    if (!(v > 0.0)) throw Error(ErrorKind::InvalidList, "generator_with_spectrum: zero entry");
  }
  std::vector<Matrix> jumps;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const double rate = std::min(1.0, lam[static_cast<std::size_t>(i)] / lam[static_cast<std::size_t>(j)]);
      Matrix v = Matrix::Zero(n, n);
      v(i, j) = std::sqrt(rate);
      jumps.push_back(std::move(v));
    }
  }
  return {Matrix::Zero(n, n), std::move(jumps)};
}

}  // namespace ncdyn
