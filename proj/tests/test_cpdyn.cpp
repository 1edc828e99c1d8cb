#include <doctest.h>

#include "ncdyn/cpdyn.hpp"
#include "ncdyn/eigenlists.hpp"
#include "ncdyn/error.hpp"
#include "ncdyn/random.hpp"
#include "support.hpp"

using namespace ncdyn;

namespace {

Matrix choi_by_definition(Eigen::Index n, const std::function<Matrix(const Matrix&)>& phi) {
  Matrix c = Matrix::Zero(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) c.block(i * n, j * n, n, n) = phi(oracle::unit(n, i, j));
  return c;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvalidArgument;
}

GKLSGenerator amplitude_damping(double gamma) {
  return GKLSGenerator(Matrix::Zero(2, 2), {std::sqrt(gamma) * oracle::unit(2, 0, 1)});
}

}  // namespace

TEST_CASE("LinearMap plumbing") {
  random::Rng rng(31);
  const Matrix a = random::ginibre(rng, 3, 3);
  CHECK(oracle::max_abs(LinearMap::identity(3).apply(a) - a) == 0.0);
  CHECK(oracle::max_abs(LinearMap::transpose(3).apply(a) - a.transpose()) == 0.0);
  const CPMap phi(random::unital_kraus(rng, 3, 2)), psi(random::unital_kraus(rng, 3, 3));
  const LinearMap comp = phi.as_linear_map().compose(psi.as_linear_map());
  CHECK(oracle::max_abs(comp.apply(a) - phi.apply(psi.apply(a))) < 1e-12);
  // Trace duality for the predual.
  const Matrix rho = random::density(rng, 3);
  const Matrix pre = phi.as_linear_map().predual().apply(rho);
  CHECK(std::abs((pre * a).trace() - (rho * phi.apply(a)).trace()) < 1e-12);
  CHECK_THROWS_AS(LinearMap(2, Matrix::Identity(3, 3)), Error);
}

TEST_CASE("CPMap application and validation") {
  random::Rng rng(32);
  const auto ks = random::unital_kraus(rng, 2, 3);
  const CPMap phi(ks);
  const Matrix a = random::ginibre(rng, 2, 2);
  Matrix want = Matrix::Zero(2, 2);
  for (const auto& k : ks) want += k.adjoint() * a * k;
  CHECK(oracle::max_abs(phi.apply(a) - want) < 1e-14);
  CHECK(phi.is_unital());
  CHECK(oracle::max_abs(phi.as_linear_map().action() - oracle::action_of(2, [&](const Matrix& x) { return phi.apply(x); })) < 1e-14);
  CHECK(kind_of([] { CPMap({2.0 * Matrix::Identity(2, 2)}); }) == ErrorKind::NotCP);
  CHECK_FALSE(CPMap({0.5 * Matrix::Identity(2, 2)}).is_unital());
}

TEST_CASE("choi examples") {
  const Matrix cid = choi(LinearMap::identity(2));
  CHECK(std::abs(cid.trace() - 2.0) < 1e-14);
  Eigen::SelfAdjointEigenSolver<Matrix> es(cid);
  CHECK(es.eigenvalues()(3) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(std::abs(es.eigenvalues()(2)) < 1e-14);
  const Matrix ct = choi(LinearMap::transpose(2));
  CHECK(oracle::min_hermitian_eig(ct) == doctest::Approx(-1.0).epsilon(1e-13));
  CHECK(oracle::max_abs(ct - choi_by_definition(2, [](const Matrix& x) { return Matrix(x.transpose()); })) == 0.0);
}

TEST_CASE("choi of Kraus maps is PSD and matches the definition") {
  random::Rng rng(33);
  for (int trial = 0; trial < 50; ++trial) {
    const CPMap phi(random::unital_kraus(rng, 3, 2));
    const Matrix c = choi(phi);
    CHECK(oracle::max_abs(c - choi_by_definition(3, [&](const Matrix& x) { return phi.apply(x); })) < 1e-13);
    CHECK(oracle::max_abs(c - c.adjoint()) < 1e-14);
    CHECK(oracle::min_hermitian_eig(c) >= -1e-10);
    CHECK(oracle::max_abs(choi(phi.as_linear_map()) - c) < 1e-13);
  }
}

TEST_CASE("is_completely_positive examples") {
  CHECK(is_completely_positive(LinearMap::identity(2)));
  CHECK_FALSE(is_completely_positive(LinearMap::transpose(2)));
  const LinearMap mix(2, 0.5 * (LinearMap::identity(2).action() + LinearMap::transpose(2).action()));
  CHECK(oracle::min_hermitian_eig(choi(mix)) < 0.0);
  CHECK_FALSE(is_completely_positive(mix));
}

TEST_CASE("GKLS generator matches its defining formula") {
  random::Rng rng(34);
  const auto gen = fixture::unital_generator(rng, 3);
  const Matrix a = random::ginibre(rng, 3, 3);
  CHECK(oracle::max_abs(gen.apply(a) - oracle::lindblad(gen, a)) < 1e-13);
  CHECK(oracle::max_abs(gen.heisenberg_action() - oracle::semigroup_of(gen).generator) < 1e-13);
  CHECK(oracle::max_abs(gen.apply(Matrix::Identity(3, 3))) < 1e-12);
  // Schrodinger action is the trace dual of the Heisenberg action.
  const Matrix rho = random::density(rng, 3);
  const Matrix lrho = oracle::apply_action(gen.schrodinger_action(), rho);
  CHECK(std::abs((lrho * a).trace() - (rho * gen.apply(a)).trace()) < 1e-12);
  Matrix h = Matrix::Zero(2, 2);
  h(0, 1) = 1.0;
  CHECK(kind_of([&] { GKLSGenerator(h, {}); }) == ErrorKind::NonHermitian);
}

TEST_CASE("evolve examples") {
  random::Rng rng(35);
  const auto gen = fixture::unital_generator(rng, 2);
  CHECK(oracle::max_abs(evolve(gen, 0.0).action() - Matrix::Identity(4, 4)) < 1e-14);
  const double gamma = 0.7;
  for (double t : {0.3, 1.0, 2.5, 6.0}) {
    const LinearMap p = evolve(amplitude_damping(gamma), t);
    const Matrix img = p.apply(oracle::unit(2, 1, 1));
    CHECK(std::abs(img(1, 1) - std::exp(-gamma * t)) < 1e-12);
    CHECK(std::abs(img(0, 0)) < 1e-12);
    const Matrix ground = p.apply(oracle::unit(2, 0, 0));
    CHECK(std::abs(ground(1, 1) - (1.0 - std::exp(-gamma * t))) < 1e-12);
  }
}

TEST_CASE("evolve is a semigroup, unital, completely positive, and agrees with the Taylor oracle") {
  random::Rng rng(36);
  std::uniform_real_distribution<double> time(0.0, 5.0);
  for (int trial = 0; trial < 20; ++trial) {
    const auto gen = fixture::unital_generator(rng, 2);
    const auto sg = oracle::semigroup_of(gen);
    const double s = time(rng), t = time(rng);
    const LinearMap ps = evolve(gen, s), pt = evolve(gen, t);
    CHECK(oracle::max_abs(ps.compose(pt).action() - evolve(gen, s + t).action()) < 1e-10);
    const Matrix a = random::ginibre(rng, 2, 2);
    CHECK(oracle::max_abs(pt.apply(a) - sg(t, a)) < 1e-10);
  }
  for (int trial = 0; trial < 10; ++trial) {
    const auto gen = fixture::unital_generator(rng, 3);
    for (double t = 0.0; t <= 10.0; t += 2.5) {
      const LinearMap p = evolve(gen, t);
      CHECK(oracle::max_abs(p.apply(Matrix::Identity(3, 3)) - Matrix::Identity(3, 3)) < 1e-10);
      CHECK(is_completely_positive(p));
    }
  }
}

TEST_CASE("stationary_state examples") {
  Matrix h = Matrix::Zero(2, 2);
  h(1, 1) = 1.0;
  CHECK(kind_of([&] { stationary_state(GKLSGenerator(h, {})); }) == ErrorKind::DegenerateKernel);
  const DensityMatrix ground = stationary_state(amplitude_damping(0.4));
  CHECK(oracle::max_abs(ground.matrix() - oracle::unit(2, 0, 0)) < 1e-10);
  const DensityMatrix omega = stationary_state(generator_with_spectrum(EigenvalueList({0.7, 0.3}), 2));
  const auto lam = EigenvalueList::of(omega.matrix());
  CHECK(std::abs(lam[0] - 0.7) < 1e-8);
  CHECK(std::abs(lam[1] - 0.3) < 1e-8);
}

TEST_CASE("stationary_state is invariant under the Schrodinger flow") {
  random::Rng rng(37);
  for (int trial = 0; trial < 10; ++trial) {
    const auto gen = fixture::unital_generator(rng, 3);
    const DensityMatrix omega = stationary_state(gen);
    CHECK(oracle::min_hermitian_eig(omega.matrix()) >= -1e-12);
    CHECK(std::abs(omega.matrix().trace() - 1.0) < 1e-12);
    const auto sg = oracle::semigroup_of(gen);
    for (double t : {1.0, 5.0, 10.0}) {
      const Matrix a = random::hermitian(rng, 3);
      CHECK(std::abs((omega.matrix() * sg(t, a)).trace() - (omega.matrix() * a).trace()) < 1e-10);
    }
  }
}

TEST_CASE("generator_with_spectrum examples") {
  for (Eigen::Index n : {2, 3, 4}) {
    const auto gen = generator_with_spectrum(uniform_list(static_cast<std::size_t>(n)), n);
    const Matrix omega = stationary_state(gen).matrix();
    CHECK(oracle::max_abs(omega - Matrix::Identity(n, n) / static_cast<double>(n)) < 1e-10);
  }
  const EigenvalueList lam({0.5, 0.3, 0.2});
  const auto gen = generator_with_spectrum(lam, 3);
  CHECK(oracle::max_abs(gen.apply(Matrix::Identity(3, 3))) < 1e-12);
  const Matrix omega = stationary_state(gen).matrix();
  const auto got = EigenvalueList::of(omega);
  for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(got[i] - lam[i]) < 1e-8);
  const LinearMap schr = evolve(gen, 50.0).predual();
  random::Rng rng(38);
  for (int k = 0; k < 20; ++k) CHECK(trace_norm(schr.apply(random::density(rng, 3)) - omega) < 1e-6);
}

TEST_CASE("generator_with_spectrum rejects bad lists") {
  CHECK(kind_of([] { generator_with_spectrum(EigenvalueList({1.0, 0.0}), 2); }) == ErrorKind::InvalidList);
  CHECK(kind_of([] { generator_with_spectrum(EigenvalueList({0.5, 0.4}), 2); }) == ErrorKind::InvalidList);
  CHECK(kind_of([] { generator_with_spectrum(EigenvalueList({0.5, 0.5}), 3); }) == ErrorKind::InvalidList);
}

TEST_CASE("absorbing convergence is monotone") {
  random::Rng rng(39);
  for (Eigen::Index n : {2, 3, 4}) {
    for (int k = 0; k < 3; ++k) {
      const EigenvalueList lam(random::normalized_list(rng, static_cast<std::size_t>(n), 0.1));
      const auto gen = generator_with_spectrum(lam, n);
      const Matrix omega = stationary_state(gen).matrix();
      const LinearMap step = evolve(gen, 1.0).predual();
      Matrix rho = random::density(rng, n);
      double prev = trace_norm(rho - omega);
      for (int t = 1; t <= 50; ++t) {
        rho = step.apply(rho);
        const double d = trace_norm(rho - omega);
        CHECK(d <= prev + 1e-10);
        prev = d;
      }
      CHECK(prev < 1e-6);
    }
  }
}

TEST_CASE("compression by a coinvariant projection") {
  random::Rng rng(40);
  const Eigen::Index n = 4, m = 2;
  for (int trial = 0; trial < 50; ++trial) {
    // Kraus operators leaving the first m coordinates invariant, normalized to be unital.
    std::vector<Matrix> ks;
    for (int k = 0; k < 3; ++k) {
      Matrix x = random::ginibre(rng, n, n);
      x.bottomLeftCorner(n - m, m).setZero();
      ks.push_back(x);
    }
    Matrix s = Matrix::Zero(n, n);
    for (const auto& k : ks) s += k.adjoint() * k;
    const Matrix r = Eigen::LLT<Matrix>(s).matrixU();
    const Matrix rinv = r.inverse();
    const Matrix w = random::unitary(rng, n);
    for (auto& k : ks) k = w.adjoint() * (k * rinv) * w;
    Matrix p = Matrix::Zero(n, n);
    p.topLeftCorner(m, m).setIdentity();
    p = w.adjoint() * p * w;
    const CPMap alpha(ks);
    REQUIRE(alpha.is_unital());
    const Matrix q = Matrix::Identity(n, n) - p;
    CHECK(oracle::min_hermitian_eig(q - alpha.apply(q)) >= -1e-12);
    const Matrix a = random::ginibre(rng, n, n);
    const Matrix compressed = p * alpha.apply(p * a * p) * p;
    CHECK(oracle::max_abs(compressed - p * alpha.apply(a) * p) < 1e-12);
    const Matrix twice = p * alpha.apply(compressed) * p;
    CHECK(oracle::max_abs(twice - p * alpha.apply(alpha.apply(a)) * p) < 1e-12);
  }
}
