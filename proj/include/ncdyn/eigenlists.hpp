#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ncdyn/opalg.hpp"

namespace ncdyn {

/// Nonincreasing sequence of nonnegative reals; entries past the stored prefix are zero.
class EigenvalueList {
 public:
  EigenvalueList() = default;

  /// Sorts the input nonincreasing. Entries in [-1e-12, 0) are clamped to zero;
  /// anything more negative throws InvalidList.
  explicit EigenvalueList(std::vector<double> values);

  /// Eigenvalue list of a positive operator (e.g. a density matrix).
  static EigenvalueList of(const Matrix& positive);

  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  /// k-th entry, zero beyond the stored prefix.
  double operator[](std::size_t k) const noexcept { return k < values_.size() ? values_[k] : 0.0; }

  double sum() const;
  /// sum == 1 within 1e-12.
  bool normalized() const;

 private:
  std::vector<double> values_;
};

/// All pairwise products sorted nonincreasing. max_terms, when given, caps the output
/// length; throws TruncationLoss if that would drop a nonzero product.
EigenvalueList tensor_product(const EigenvalueList& a, const EigenvalueList& b,
                              std::optional<std::size_t> max_terms = std::nullopt);

/// l1 distance with the shorter list padded by zeros.
double l1_distance(const EigenvalueList& a, const EigenvalueList& b);

/// l1 distance between the tensor squares of the past and future lists, which is the
/// lower bound on the distance between the two states' spectra under any interaction.
/// Throws NotNormalized.
double interaction_lower_bound(const EigenvalueList& minus, const EigenvalueList& plus);

/// Uniform list {1/p, ..., 1/p} of length p.
EigenvalueList uniform_list(std::size_t p);

}  // namespace ncdyn
