#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "ncdyn/cpdyn.hpp"
#include "ncdyn/opalg.hpp"

namespace ncdyn {

/// A semigroup {P_t : t >= 0} of linear maps on M_n, given by an evaluator t -> P_t.
class SemigroupHandle {
 public:
  using Evaluator = std::function<LinearMap(double)>;

  SemigroupHandle(Eigen::Index n, Evaluator evaluator);

  /// P_t = exp(tL) for a GKLS generator.
  static SemigroupHandle from_generator(const GKLSGenerator& gen);
  /// Discrete semigroup P_k = phi^k; only integer times are accepted.
  static SemigroupHandle from_map(const LinearMap& phi);

  Eigen::Index dim() const noexcept { return n_; }
  LinearMap at(double t) const;
  Matrix apply(double t, const Matrix& a) const;

 private:
  Eigen::Index n_;
  Evaluator evaluator_;
};

// Entries within this distance of the tuple minimum are treated as equal to it.
inline constexpr double kTimeTol = 1e-12;

/// Evaluation plan for a moment polynomial: the nested P_t / product expression
/// produced by the shift-then-split recursion. Leaves index into the matrix list.
struct MomentExpr {
  struct Apply {
    double t;
    std::shared_ptr<const MomentExpr> inner;
  };
  struct Product {
    std::vector<MomentExpr> factors;  // empty product is the identity
  };
  struct Leaf {
    std::size_t index;
  };
  std::variant<Apply, Product, Leaf> node;
};

/// Picks which of the zero positions (ascending) the split happens at.
using SplitRule = std::function<std::size_t(const std::vector<std::size_t>& zero_positions)>;

SplitRule leftmost_split();
SplitRule rightmost_split();

/// Builds the expression for [times; a_1..a_k]: shift by the minimum when it is
/// positive, otherwise split at a zero entry. Throws InvalidArgument on negative times.
MomentExpr moment_plan(const std::vector<double>& times, const SplitRule& rule = leftmost_split());

/// Renders a plan with matrices named a, b, c, ... e.g. "P2(a·P1(P3(b)·c·P1(d)))".
std::string render(const MomentExpr& expr);

Matrix evaluate(const MomentExpr& expr, const SemigroupHandle& sg, const std::vector<Matrix>& mats);

/// Moment polynomial [t_1..t_k; a_1..a_k]. Throws LengthMismatch, DimensionMismatch.
Matrix moment(const SemigroupHandle& sg, const std::vector<double>& times,
              const std::vector<Matrix>& mats, const SplitRule& rule = leftmost_split());

/// Closed form on nondecreasing tuples:
/// P_{t1}(a_1 P_{t2-t1}(a_2 ... P_{tk-t(k-1)}(a_k))). Throws NotSorted.
Matrix ordered_moment(const SemigroupHandle& sg, const std::vector<double>& times,
                      const std::vector<Matrix>& mats);

}  // namespace ncdyn
