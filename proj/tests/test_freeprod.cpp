#include <doctest.h>

#include "ncdyn/error.hpp"
#include "ncdyn/freeprod.hpp"
#include "ncdyn/moments.hpp"
#include "ncdyn/random.hpp"
#include "support.hpp"

using namespace ncdyn;

namespace {

FreeWord w(std::initializer_list<std::int64_t> t) {
  std::vector<Rational> r;
  for (auto x : t) r.emplace_back(x);
  return FreeWord(r);
}

}  // namespace

TEST_CASE("Rational arithmetic and parsing") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational::parse("3/4") == Rational(3, 4));
  CHECK(Rational::parse("0.25") == Rational(1, 4));
  CHECK(Rational::parse("7") == Rational(7));
  CHECK(Rational::parse("3/4").to_string() == "3/4");
  CHECK(Rational(6, 3).to_string() == "2");
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK_THROWS_AS(Rational(1, 0), Error);
  CHECK_THROWS_AS(Rational::parse("x"), Error);
  CHECK_THROWS_AS(Rational::parse("1/"), Error);
}

TEST_CASE("FreeWord validation") {
  CHECK_THROWS_AS(w({1, 1}), Error);
  CHECK_THROWS_AS(FreeWord({}), Error);
  CHECK_THROWS_AS(FreeWord({Rational(-1)}), Error);
  CHECK_NOTHROW(w({1, 2, 1}));
  CHECK(w({1, 2}).as_doubles() == std::vector<double>{1.0, 2.0});
}

TEST_CASE("word_mul examples") {
  CHECK(word_mul(w({1, 2}), w({2, 5})) == w({1, 2, 5}));
  CHECK(word_mul(w({1, 2}), w({3, 5})) == w({1, 2, 3, 5}));
  CHECK(word_mul(w({1, 2}), w({2})) == w({1, 2}));
  CHECK(word_mul(w({2}), w({2})) == w({2}));
  CHECK(merges(w({1, 2}), w({2, 5})));
  CHECK_FALSE(merges(w({1, 2}), w({3})));
}

TEST_CASE("word_star examples") {
  CHECK(word_star(w({1, 2, 3})) == w({3, 2, 1}));
  CHECK(word_star(w({4})) == w({4}));
  CHECK(word_star(word_mul(w({1, 2}), w({2, 5}))) == w({5, 2, 1}));
  CHECK(word_mul(word_star(w({2, 5})), word_star(w({1, 2}))) == w({5, 2, 1}));
}

TEST_CASE("word algebra laws on random words") {
  random::Rng rng(61);
  std::uniform_int_distribution<std::size_t> len(1, 3);
  for (int trial = 0; trial < 500; ++trial) {
    const auto s = fixture::random_word(rng, len(rng)), t = fixture::random_word(rng, len(rng)),
               u = fixture::random_word(rng, len(rng));
    CHECK(word_mul(word_mul(s, t), u) == word_mul(s, word_mul(t, u)));
    CHECK(word_star(word_star(s)) == s);
    CHECK(word_star(word_mul(s, t)) == word_mul(word_star(t), word_star(s)));
  }
}

TEST_CASE("section_mul examples") {
  random::Rng rng(62);
  const Matrix a = random::ginibre(rng, 2, 2), b = random::ginibre(rng, 2, 2), c = random::ginibre(rng, 2, 2);
  const auto plain = section_mul(Section::theta(1, a), Section::theta(2, b));
  CHECK(section_distance(plain, Section::delta(w({1, 2}), {a, b})) < 1e-14);
  const auto merged = section_mul(Section::theta(1, a), Section::theta(1, b));
  CHECK(section_distance(merged, Section::theta(1, a * b)) < 1e-14);
  const auto boundary = section_mul(Section::theta(1, a), Section::delta(w({1, 2}), {b, c}));
  CHECK(section_distance(boundary, Section::delta(w({1, 2}), {a * b, c})) < 1e-14);
  CHECK_THROWS_AS(section_mul(Section::theta(1, a), Section::theta(1, Matrix::Identity(3, 3))), Error);
}

TEST_CASE("Section construction errors and linear structure") {
  random::Rng rng(63);
  const Matrix a = random::ginibre(rng, 2, 2);
  Section f(2);
  CHECK_THROWS_AS(f.add_term(w({1, 2}), {a}), Error);
  CHECK_THROWS_AS(f.add_term(w({1}), {Matrix::Identity(3, 3)}), Error);
  const auto g = Section::theta(1, a);
  CHECK(section_distance(g + g, g.scaled(2.0)) < 1e-14);
  CHECK(section_distance(g + g.scaled(-1.0), Section(2)) < 1e-14);
  CHECK(g.l1_norm_bound() == doctest::Approx(operator_norm(a)));
}

TEST_CASE("section algebra laws") {
  random::Rng rng(64);
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = fixture::random_section(rng, 2), g = fixture::random_section(rng, 2),
               h = fixture::random_section(rng, 2);
    CHECK(section_distance(section_mul(section_mul(f, g), h), section_mul(f, section_mul(g, h))) < 1e-11);
    CHECK(section_distance(section_star(section_mul(f, g)), section_mul(section_star(g), section_star(f))) < 1e-11);
    CHECK(section_distance(section_star(section_star(f)), f) < 1e-14);
    CHECK(section_mul(f, g).l1_norm_bound() <= f.l1_norm_bound() * g.l1_norm_bound() * (1 + 1e-12));
  }
}

TEST_CASE("shift examples and laws") {
  random::Rng rng(65);
  const Matrix a = random::ginibre(rng, 2, 2), b = random::ginibre(rng, 2, 2);
  const auto f = fixture::random_section(rng, 2);
  CHECK(section_distance(shift_section(f, 0), f) == 0.0);
  CHECK(section_distance(shift_section(Section::theta(1, a), Rational(3, 2)), Section::theta(Rational(5, 2), a)) == 0.0);
  CHECK(section_distance(shift_section(Section::delta(w({1, 3}), {a, b}), 2), Section::delta(w({3, 5}), {a, b})) == 0.0);
  CHECK_THROWS_AS(shift_section(f, -1), Error);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = fixture::random_section(rng, 2), h = fixture::random_section(rng, 2);
    const Rational s(trial % 5, 2), t(trial % 3, 3);
    CHECK(section_distance(shift_section(shift_section(g, s), t), shift_section(g, s + t)) == 0.0);
    CHECK(section_distance(shift_section(section_mul(g, h), t), section_mul(shift_section(g, t), shift_section(h, t))) <
          1e-12);
  }
}

TEST_CASE("E0 examples") {
  random::Rng rng(66);
  const auto gen = fixture::unital_generator(rng, 2);
  const auto sg = SemigroupHandle::from_generator(gen);
  const auto P = oracle::semigroup_of(gen);
  std::vector<Matrix> m;
  for (int i = 0; i < 4; ++i) m.push_back(random::ginibre(rng, 2, 2));
  CHECK(oracle::max_abs(expect_E0(Section::theta(0, m[0]), sg) - m[0]) < 1e-14);
  CHECK(oracle::max_abs(expect_E0(Section::theta(Rational(3, 2), m[0]), sg) - P(1.5, m[0])) < 1e-10);
  const auto f = Section::delta(w({2, 6, 3, 4}), m);
  CHECK(oracle::max_abs(expect_E0(f, sg) - P(2, m[0] * P(1, P(3, m[1]) * m[2] * P(1, m[3])))) < 1e-10);
  CHECK(oracle::max_abs(expect_E0(Section(2), sg)) == 0.0);
  CHECK_THROWS_AS(expect_E0(Section::theta(0, Matrix::Identity(3, 3)), sg), Error);
}

TEST_CASE("E0 is linear, bounded, a module map, and hereditary multiplicative") {
  random::Rng rng(67);
  for (int trial = 0; trial < 50; ++trial) {
    const auto sg = SemigroupHandle::from_generator(fixture::unital_generator(rng, 2));
    const auto f = fixture::random_section(rng, 2), g = fixture::random_section(rng, 2);
    const Matrix a = random::ginibre(rng, 2, 2), b = random::ginibre(rng, 2, 2);
    const Complex c(0.4, -0.9);
    CHECK(oracle::max_abs(expect_E0(f + g.scaled(c), sg) - (expect_E0(f, sg) + c * expect_E0(g, sg))) < 1e-10);
    CHECK(operator_norm(expect_E0(f, sg)) <= f.l1_norm_bound() + 1e-9);
    CHECK(oracle::max_abs(expect_E0(section_mul(Section::theta(0, a), f), sg) - a * expect_E0(f, sg)) < 1e-10);
    CHECK(oracle::max_abs(expect_E0(section_mul(f, Section::theta(0, a)), sg) - expect_E0(f, sg) * a) < 1e-10);
    const auto hf = section_mul(section_mul(Section::theta(0, a), f), Section::theta(0, b));
    const auto hg = section_mul(section_mul(Section::theta(0, b), g), Section::theta(0, a));
    CHECK(oracle::max_abs(expect_E0(section_mul(hf, hg), sg) - expect_E0(hf, sg) * expect_E0(hg, sg)) < 1e-9);
  }
}

TEST_CASE("E0 positivity witnesses") {
  random::Rng rng(68);
  std::uniform_int_distribution<int> count(1, 3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto sg = SemigroupHandle::from_generator(fixture::unital_generator(rng, 2));
    const int m = count(rng);
    std::vector<Section> fs;
    std::vector<Matrix> as;
    for (int i = 0; i < m; ++i) {
      fs.push_back(fixture::random_section(rng, 2));
      as.push_back(random::ginibre(rng, 2, 2));
    }
    Matrix block(2 * m, 2 * m);
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < m; ++i)
        block.block(2 * j, 2 * i, 2, 2) = as[j].adjoint() * expect_E0(section_mul(section_star(fs[j]), fs[i]), sg) * as[i];
    CHECK(oracle::max_abs(block - block.adjoint()) < 1e-10);
    CHECK(oracle::min_hermitian_eig(block) >= -1e-8);
  }
}
