#include <doctest.h>

#include "ncdyn/error.hpp"
#include "ncdyn/opalg.hpp"
#include "ncdyn/random.hpp"
#include "support.hpp"

using namespace ncdyn;

namespace {

Matrix diag(std::initializer_list<double> d) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double x : d) m(i, i) = x, ++i;
  return m;
}

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an ncdyn::Error");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("kron identities and diagonal case") {
  CHECK(oracle::max_abs(kron(Matrix::Identity(2, 2), Matrix::Identity(3, 3)) - Matrix::Identity(6, 6)) == 0.0);
  CHECK(oracle::max_abs(kron(diag({1, 2}), diag({3})) - diag({3, 6})) == 0.0);
}

TEST_CASE("kron matches the four-index definition") {
  random::Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = random::ginibre(rng, 2, 2);
    const Matrix b = random::ginibre(rng, 2, 3);
    const Matrix k = kron(a, b);
    REQUIRE(k.rows() == 4);
    REQUIRE(k.cols() == 6);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int p = 0; p < 2; ++p)
          for (int q = 0; q < 3; ++q) CHECK(std::abs(k(i * 2 + p, j * 3 + q) - a(i, j) * b(p, q)) < 1e-14);
  }
}

TEST_CASE("vec and unvec are inverse and satisfy the Kronecker rule") {
  random::Rng rng(12);
  const Matrix a = random::ginibre(rng, 3, 3), x = random::ginibre(rng, 3, 3), b = random::ginibre(rng, 3, 3);
  CHECK(oracle::max_abs(unvec(vec(x), 3) - x) == 0.0);
  CHECK(oracle::max_abs(vec(a * x * b) - kron(b.transpose(), a) * vec(x)) < 1e-12);
}

TEST_CASE("eig_descending examples") {
  auto es = eig_descending(diag({0.2, 0.8}));
  REQUIRE(es.values.size() == 2);
  CHECK(es.values[0] == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(es.values[1] == doctest::Approx(0.2).epsilon(1e-15));
  es = eig_descending(Matrix::Identity(3, 3));
  for (double v : es.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("eig_descending reconstructs, sorts, and preserves the trace") {
  random::Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix a = random::hermitian(rng, 4);
    const auto es = eig_descending(a);
    Matrix d = Matrix::Zero(4, 4);
    double sum = 0.0;
    for (int i = 0; i < 4; ++i) {
      d(i, i) = es.values[static_cast<std::size_t>(i)];
      sum += es.values[static_cast<std::size_t>(i)];
      if (i > 0) CHECK(es.values[static_cast<std::size_t>(i - 1)] >= es.values[static_cast<std::size_t>(i)]);
    }
    CHECK(oracle::max_abs(es.vectors * d * es.vectors.adjoint() - a) < 1e-10);
    CHECK(oracle::max_abs(es.vectors.adjoint() * es.vectors - Matrix::Identity(4, 4)) < 1e-10);
    CHECK(std::abs(sum - a.trace().real()) < 1e-10);
  }
}

TEST_CASE("eig_descending rejects non-Hermitian input") {
  Matrix a = diag({1, 2});
  a(0, 1) = 1.0;
  CHECK(kind_of([&] { eig_descending(a); }) == ErrorKind::NonHermitian);
}

TEST_CASE("trace_norm examples and SVD oracle") {
  CHECK(trace_norm(Matrix::Identity(5, 5)) == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(trace_norm(diag({1, -1})) == doctest::Approx(2.0).epsilon(1e-14));
  random::Rng rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix a = random::ginibre(rng, 4, 4);
    CHECK(std::abs(trace_norm(a) - oracle::singular_value_sum(a)) < 1e-12);
  }
  CHECK(kind_of([] { trace_norm(Matrix::Zero(2, 3)); }) == ErrorKind::NonSquare);
}

TEST_CASE("trace_norm is unitarily invariant") {
  random::Rng rng(15);
  for (int trial = 0; trial < 1000; ++trial) {
    const Matrix a = random::ginibre(rng, 3, 3);
    const Matrix u = random::unitary(rng, 3), v = random::unitary(rng, 3);
    CHECK(std::abs(trace_norm(u * a * v) - trace_norm(a)) < 1e-10);
  }
}

TEST_CASE("expm examples") {
  CHECK(oracle::max_abs(expm(Matrix::Zero(3, 3), 4.0) - Matrix::Identity(3, 3)) == 0.0);
  CHECK(std::abs(expm(diag({1}), 2.0)(0, 0) - std::exp(2.0)) < 1e-13 * std::exp(2.0));
  Matrix nil = Matrix::Zero(3, 3);
  nil(0, 2) = Complex(2.0, -1.0);
  nil(1, 2) = 0.5;
  const double t = 1.7;
  CHECK(oracle::max_abs(expm(nil, t) - (Matrix::Identity(3, 3) + t * nil)) < 1e-13);
}

TEST_CASE("expm semigroup identity and Taylor oracle") {
  random::Rng rng(16);
  std::uniform_real_distribution<double> time(0.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    Matrix a = random::ginibre(rng, 3, 3);
    a *= 3.0 / a.norm();
    const double s = time(rng), t = time(rng);
    CHECK(oracle::max_abs(expm(a, s) * expm(a, t) - expm(a, s + t)) < 1e-10);
    CHECK(oracle::max_abs(expm(a, t) - oracle::expm_taylor(a * t)) < 1e-10);
  }
}

TEST_CASE("conjugacy_shift examples") {
  const auto lam = conjugacy_shift(diag({0, 1}), diag({2, 3}));
  REQUIRE(lam.has_value());
  CHECK(*lam == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_FALSE(conjugacy_shift(diag({0, 1}), diag({0, 2})).has_value());
  CHECK(kind_of([] { conjugacy_shift(diag({0, 1}), diag({0, 1, 2})); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("conjugacy_shift recovers a constructed shift") {
  random::Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix x = random::hermitian(rng, 4);
    const Matrix w = random::unitary(rng, 4);
    const Matrix y = w * (x + 3.0 * Matrix::Identity(4, 4)) * w.adjoint();
    const auto lam = conjugacy_shift(x, y);
    REQUIRE(lam.has_value());
    CHECK(std::abs(*lam - 3.0) < 1e-10);
    const auto self = conjugacy_shift(x, x);
    REQUIRE(self.has_value());
    CHECK(std::abs(*self) < 1e-12);
    const auto back = conjugacy_shift(y, x);
    REQUIRE(back.has_value());
    CHECK(std::abs(*back + *lam) < 1e-12);
  }
}

TEST_CASE("DensityMatrix validation") {
  CHECK_NOTHROW(DensityMatrix(diag({0.25, 0.75})));
  CHECK_THROWS_AS(DensityMatrix(diag({0.5, 0.6})), Error);
  CHECK_THROWS_AS(DensityMatrix(diag({1.5, -0.5})), Error);
  Matrix skew = diag({0.5, 0.5});
  skew(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix{skew}, Error);
  CHECK_THROWS_AS(DensityMatrix(Matrix::Zero(2, 3)), Error);
}

TEST_CASE("random fixtures satisfy their contracts") {
  random::Rng rng(18);
  const Matrix u = random::unitary(rng, 4);
  CHECK(oracle::max_abs(u.adjoint() * u - Matrix::Identity(4, 4)) < 1e-12);
  CHECK_NOTHROW(DensityMatrix(random::density(rng, 4)));
  const auto ks = random::unital_kraus(rng, 3, 2);
  Matrix s = Matrix::Zero(3, 3);
  for (const auto& k : ks) s += k.adjoint() * k;
  CHECK(oracle::max_abs(s - Matrix::Identity(3, 3)) < 1e-12);
}
