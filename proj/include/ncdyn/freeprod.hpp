#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ncdyn/moments.hpp"
#include "ncdyn/opalg.hpp"

namespace ncdyn {

/// Exact nonnegative-capable rational time, kept in lowest terms with positive denominator.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  /// Parses "p", "p/q" or a finite decimal such as "0.25".
  static Rational parse(const std::string& text);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string to_string() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend bool operator==(const Rational& a, const Rational& b) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Nonempty tuple of nonnegative times with distinct neighbors.
class FreeWord {
 public:
  /// Throws InvalidArgument on an empty tuple, a negative entry or equal neighbors.
  explicit FreeWord(std::vector<Rational> times);

  const std::vector<Rational>& times() const noexcept { return times_; }
  std::size_t size() const noexcept { return times_.size(); }
  std::vector<double> as_doubles() const;

  friend bool operator==(const FreeWord&, const FreeWord&) = default;
  friend auto operator<=>(const FreeWord& a, const FreeWord& b) { return a.times_ <=> b.times_; }

 private:
  std::vector<Rational> times_;
};

/// Conditional concatenation: the boundary entry is dropped when last(s) == first(t).
FreeWord word_mul(const FreeWord& s, const FreeWord& t);
/// Reversal.
FreeWord word_star(const FreeWord& s);
/// True when word_mul(s, t) merges the boundary.
bool merges(const FreeWord& s, const FreeWord& t);

using ElementaryTensor = std::vector<Matrix>;

/// Finitely supported section: at each word, a formal sum of elementary tensors
/// whose length equals the word length.
class Section {
 public:
  explicit Section(Eigen::Index n) : n_(n) {}

  /// delta_word . a_1 (x) ... (x) a_k
  static Section delta(const FreeWord& word, ElementaryTensor tensor);
  /// theta_t(a) = delta_(t) . a
  static Section theta(const Rational& t, const Matrix& a);

  Eigen::Index dim() const noexcept { return n_; }
  const std::map<FreeWord, std::vector<ElementaryTensor>>& terms() const noexcept { return terms_; }

  /// Appends a term. Throws LengthMismatch, DimensionMismatch.
  void add_term(const FreeWord& word, ElementaryTensor tensor);

  Section operator+(const Section& other) const;
  Section scaled(Complex c) const;

  /// Elementary-tensor upper bound on the l1 norm: sum over terms of prod ||a_i||.
  double l1_norm_bound() const;

 private:
  Eigen::Index n_;
  std::map<FreeWord, std::vector<ElementaryTensor>> terms_;
};

/// Convolution f*g(nu) = sum_{lambda.mu = nu} f(lambda) g(mu); merged boundaries
/// multiply the adjacent matrices. Throws DimensionMismatch.
Section section_mul(const Section& f, const Section& g);
/// f*(mu) = f(mu*)*: reversed words, reversed adjoint tensors.
Section section_star(const Section& f);
/// Translates every word entry by t >= 0.
Section shift_section(const Section& f, const Rational& t);

/// E_0: linear extension of delta_(t1..tk) a_1 (x) ... (x) a_k -> [t1..tk; a_1..a_k].
Matrix expect_E0(const Section& f, const SemigroupHandle& sg);

/// Sum over words of the Frobenius distance between the two fibers, each formal sum
/// expanded into the dense tensor power (M_n)^{(x)k}.
double section_distance(const Section& f, const Section& g);

}  // namespace ncdyn
