#include "ncdyn/eigenlists.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "ncdyn/error.hpp"

namespace ncdyn {

EigenvalueList::EigenvalueList(std::vector<double> values) : values_(std::move(values)) {
  for (auto& v : values_) {
    if (!std::isfinite(v) || v < -1e-12) {
      throw Error(ErrorKind::InvalidList, "eigenvalue list entries must be finite and nonnegative");
    }
    if (v < 0.0) v = 0.0;
  }
  std::sort(values_.begin(), values_.end(), std::greater<>());
}

EigenvalueList EigenvalueList::of(const Matrix& positive) {
  return EigenvalueList(eig_descending(positive).values);
}

double EigenvalueList::sum() const {
  // Ascending order keeps small terms from being swamped.
  double s = 0.0;
  for (auto it = values_.rbegin(); it != values_.rend(); ++it) s += *it;
  return s;
}

bool EigenvalueList::normalized() const { return std::abs(sum() - 1.0) <= 1e-12; }

EigenvalueList tensor_product(const EigenvalueList& a, const EigenvalueList& b,
                              std::optional<std::size_t> max_terms) {
  std::vector<double> products;
  products.reserve(a.size() * b.size());
  for (double x : a.values()) {
    for (double y : b.values()) products.push_back(x * y);
  }
  std::sort(products.begin(), products.end(), std::greater<>());
  if (max_terms && *max_terms < products.size()) {
    if (products[*max_terms] != 0.0) {
      throw Error(ErrorKind::TruncationLoss, "tensor_product: max_terms would drop a nonzero product");
    }
    products.resize(*max_terms);
  }
  return EigenvalueList(std::move(products));
}

double l1_distance(const EigenvalueList& a, const EigenvalueList& b) {
  const std::size_t n = std::max(a.size(), b.size());
  double d = 0.0;
  for (std::size_t k = 0; k < n; ++k) d += std::abs(a[k] - b[k]);
  return d;
}

double interaction_lower_bound(const EigenvalueList& minus, const EigenvalueList& plus) {
  if (!minus.normalized() || !plus.normalized()) {
    throw Error(ErrorKind::NotNormalized, "interaction_lower_bound: both lists must sum to 1");
  }
  return l1_distance(tensor_product(minus, minus), tensor_product(plus, plus));
}

EigenvalueList uniform_list(std::size_t p) {
  return EigenvalueList(std::vector<double>(p, 1.0 / static_cast<double>(p)));
}

}  // namespace ncdyn
