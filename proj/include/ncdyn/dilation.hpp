#pragma once

#include <cstddef>
#include <vector>

#include "ncdyn/cpdyn.hpp"
#include "ncdyn/opalg.hpp"

namespace ncdyn {

/// phi(a) = V* (a (x) 1_r) V with V: C^n -> C^n (x) C^r, r the Choi rank.
struct StinespringTriple {
  Matrix v;                   // (n r) x n
  std::size_t rep_rank = 0;   // r
  std::vector<Matrix> kraus;  // minimal Kraus family: V x = sum_i K_i x (x) e_i

  /// V* (a (x) 1_r) V.
  Matrix compress(const Matrix& a) const;
};

/// Minimal Stinespring decomposition from the Choi eigendecomposition (rank threshold
/// 1e-9 of the largest Choi eigenvalue). Throws NotCP; NotUnital when require_unital
/// is set and sum K*K differs from 1 by more than 1e-10.
StinespringTriple stinespring(const CPMap& phi, bool require_unital);

inline constexpr double kWordBudget = 1e6;

/// Exhaustive Kraus-word expansion of the nested expectation
/// phi^{t1}(a_1 phi^{t2-t1}(a_2 ... phi^{tk-t(k-1)}(a_k))), summing
/// K_{w0}* a_1 K_{w1}* a_2 ... a_k ... K_{w1} K_{w0} over all words of the gap lengths.
/// Throws BudgetExceeded (r^{t_k} > 1e6), NotSorted, NotUnital, InvalidArgument
/// for non-integer or negative times.
Matrix kraus_word_expectation(const CPMap& phi, const std::vector<double>& times,
                              const std::vector<Matrix>& mats);

struct ProjectionClass {
  bool increasing = false;   // alpha(p) >= p
  bool coinvariant = false;  // alpha(1 - p) <= 1 - p
};

/// Classifies p against a unital CP map (PSD tolerance 1e-10). Throws NotProjection, NotUnital.
ProjectionClass projection_class(const CPMap& alpha, const Matrix& p);

}  // namespace ncdyn
