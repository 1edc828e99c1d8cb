#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ncdyn/opalg.hpp"

namespace ncdyn {

/// 1 / (|t| |log|t||^theta), the off-white singular profile itself (no cutoff).
double singular_kernel(double theta, double t);

/// Even correlation kernel C: the singular profile on (0, delta], then the tangent line at
/// delta clipped at zero, vanishing from epsilon (the tangent's zero crossing) on.
class CorrelationSpec {
 public:
  /// Throws BadSpec unless theta in (1, 4], delta in (0, e^{-theta}) (the profile is
  /// decreasing only there) and epsilon < 1.
  CorrelationSpec(double theta, double delta = 0.05);

  double theta() const noexcept { return theta_; }
  double delta() const noexcept { return delta_; }
  double epsilon() const noexcept { return epsilon_; }
  /// C(delta) and C'(delta), the tangent continuation's data.
  double value_at_delta() const noexcept { return c_delta_; }
  double slope_at_delta() const noexcept { return slope_delta_; }

 private:
  double theta_;
  double delta_;
  double epsilon_;
  double c_delta_;
  double slope_delta_;
};

/// C(t) for t != 0. Throws AtZero.
double correlation_value(const CorrelationSpec& spec, double t);

/// Integral of C over (0, a], a > 0, exact (closed form near zero, quadrature beyond).
double correlation_integral(const CorrelationSpec& spec, double a);

/// Inner product of the indicators of [0, h] and [d, d + h]:
/// integral of C(u) * max(0, h - |u - d|) du.
double cell_pair_weight(const CorrelationSpec& spec, double h, double d);

struct Grid {
  double left = 0.0;
  double right = 1.0;
  std::size_t cells = 1;

  double width() const { return (right - left) / static_cast<double>(cells); }
};

/// Discretized inner products of the cell indicators of a grid.
struct GramOperator {
  Grid grid;
  RealMatrix entries;  // Toeplitz: entries(i, j) = w(|i - j|)
};

/// Throws BadGrid on zero cells or an empty interval.
GramOperator gram_matrix(const CorrelationSpec& spec, const Grid& grid);

struct Interval {
  double left;
  double right;
};

struct QuasiRow {
  std::size_t n = 0;          // cells per unit length
  double sigma_min = 0.0;     // smallest singular value of the sum map L
  double hs_defect = 0.0;     // ||1 - L* L||_HS
};

/// Empirical quasiorthogonality report for the discretized interval subspaces.
/// This is a finite-grid diagnostic, not a proof about the continuum.
struct QuasiReport {
  std::vector<QuasiRow> rows;
  /// sigma_min > 0.01 at every refinement and max/min HS defect <= 4
  /// (both zero counts as stable).
  bool bounded() const;
};

/// For each refinement n (cells per unit length; interval lengths must be multiples
/// of 1/n): orthonormalize each interval's cell span in the Gram inner product and
/// report sigma_min(L) and ||1 - L*L||_HS of the sum map on the direct sum.
/// Throws OverlappingIntervals, BadGrid.
QuasiReport quasiorthogonality_diagnostic(const CorrelationSpec& spec, const std::vector<Interval>& intervals,
                                          const std::vector<std::size_t>& refinements);

/// 1 - L* L.
Matrix equivalence_defect(const Matrix& l);

/// Finite measure on a labelled atom set.
struct DiscreteMeasure {
  std::vector<std::string> atoms;
  std::vector<double> weights;

  /// Throws InvalidArgument on negative or non-finite weights or a size mismatch.
  void validate() const;
  double total() const;
};

/// Atomwise sqrt(mu({x}) nu({x})). Throws AtomMismatch.
DiscreteMeasure kakutani_mean(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

using AtomFunction = std::vector<Complex>;

/// <f sqrt(mu), g sqrt(nu)> = sum_x f(x) conj(g(x)) sqrt(mu nu)({x}). Throws AtomMismatch.
Complex mc_inner(const AtomFunction& f, const DiscreteMeasure& mu, const AtomFunction& g,
                 const DiscreteMeasure& nu);

/// Formal finite sum sum_j f_j sqrt(mu_j) in the measure-class L^2.
using FormalSum = std::vector<std::pair<AtomFunction, DiscreteMeasure>>;

/// Gram [<f_j sqrt(mu_j), f_k sqrt(mu_k)>]_jk of the terms of a formal sum.
Matrix mc_gram(const FormalSum& terms);
/// ||sum_j c_j f_j sqrt(mu_j)||^2.
double mc_norm_sq(const FormalSum& terms, const std::vector<Complex>& coeffs);

/// Gram matrices of one basis z_1..z_m under two Gaussian inner products.
struct GaussianGramPair {
  Matrix gp;  // <z_i, z_j>_P
  Matrix gq;  // <z_i, z_j>_Q
};

/// B with <z_i, z_j>_Q = <B z_i, z_j>_P (inner products linear in the first slot), as a
/// matrix in the basis z. Throws SingularGram unless both Grams are Hermitian PD.
Matrix feldman_hajek_B(const GaussianGramPair& pair);
/// ||B^T G_P - G_Q||_max.
double feldman_hajek_residual(const GaussianGramPair& pair, const Matrix& b);

struct StraightenResult {
  Matrix q_gram;          // joint Q-Gram of (m_1..m_p, n_1..n_q)
  Matrix b;               // <z1, z2>_Q = <B z1, z2>_P on M + N
  double sigma_min = 0.0; // of the sum map M (+) N -> M + N under P
};

/// Inner product making M and N independent (orthogonal) without changing either one:
/// <z1, z2>_Q = <L^{-1} z1, L^{-1} z2> on the direct sum. cross(i, j) = <m_i, n_j>_P.
/// Throws SumMapSingular when sigma_min(L) <= 1e-10, SingularGram on non-PD inputs.
StraightenResult straighten(const Matrix& gram_m, const Matrix& gram_n, const Matrix& cross);

}  // namespace ncdyn
