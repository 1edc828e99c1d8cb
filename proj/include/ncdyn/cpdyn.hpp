#pragma once

#include <vector>

#include "ncdyn/eigenlists.hpp"
#include "ncdyn/opalg.hpp"

namespace ncdyn {

/// Linear map on M_n stored as its n^2 x n^2 action on column-stacked coordinates.
class LinearMap {
 public:
  LinearMap(Eigen::Index n, Matrix action);

  static LinearMap identity(Eigen::Index n);
  static LinearMap transpose(Eigen::Index n);

  Eigen::Index dim() const noexcept { return n_; }
  const Matrix& action() const noexcept { return action_; }

  Matrix apply(const Matrix& a) const;
  /// (this o other)(a) = this(other(a)).
  LinearMap compose(const LinearMap& other) const;
  /// Predual map on density matrices: tr(rho phi(a)) = tr(phi_*(rho) a).
  LinearMap predual() const;

 private:
  Eigen::Index n_;
  Matrix action_;
};

/// Completely positive contraction in Heisenberg form phi(a) = sum K_i* a K_i.
class CPMap {
 public:
  /// Throws DimensionMismatch on ragged Kraus operators and NotCP when
  /// sum K* K exceeds (1 + 1e-10) 1.
  explicit CPMap(std::vector<Matrix> kraus);

  Eigen::Index dim() const noexcept { return n_; }
  const std::vector<Matrix>& kraus() const noexcept { return kraus_; }

  Matrix apply(const Matrix& a) const;
  LinearMap as_linear_map() const;
  /// sum K* K = 1 within tol.
  bool is_unital(double tol = 1e-10) const;

 private:
  Eigen::Index n_;
  std::vector<Matrix> kraus_;
};

/// L(a) = i[H, a] + sum_k (V_k* a V_k - 1/2 {V_k* V_k, a}).
class GKLSGenerator {
 public:
  GKLSGenerator(Matrix hamiltonian, std::vector<Matrix> jumps);

  Eigen::Index dim() const noexcept { return hamiltonian_.rows(); }
  const Matrix& hamiltonian() const noexcept { return hamiltonian_; }
  const std::vector<Matrix>& jumps() const noexcept { return jumps_; }

  Matrix apply(const Matrix& a) const;
  /// Heisenberg generator L as an n^2 x n^2 matrix.
  Matrix heisenberg_action() const;
  /// Schroedinger generator L_* (rho -> -i[H, rho] + sum V rho V* - 1/2 {V*V, rho}).
  Matrix schrodinger_action() const;

 private:
  Matrix hamiltonian_;
  std::vector<Matrix> jumps_;
};

/// C = sum_ij E_ij (x) phi(E_ij).
Matrix choi(const LinearMap& phi);
Matrix choi(const CPMap& phi);

/// Choi min eigenvalue >= -tol * max(1, max eigenvalue).
bool is_completely_positive(const LinearMap& m, double tol = 1e-10);

/// P_t = exp(t L) in the Heisenberg picture. Throws InvalidArgument for t < 0.
LinearMap evolve(const GKLSGenerator& gen, double t);

/// Unique state annihilated by L_*. Throws DegenerateKernel unless the
/// second-smallest singular value of L_* exceeds 1e-8 ||L_*|| and the smallest does not.
DensityMatrix stationary_state(const GKLSGenerator& gen);

/// Unital generator whose stationary state is diag(lam): jumps sqrt(r_ij) E_ij, i != j,
/// with Metropolis rates r_ij = min(1, lam_i / lam_j), H = 0.
/// Throws InvalidList on zero entries, wrong length or missing normalization.
GKLSGenerator generator_with_spectrum(const EigenvalueList& lam, Eigen::Index n);

}  // namespace ncdyn
