// Shared fixtures and independent oracles for the test suites.
// Nothing here calls into the library's numerical routines, except for
// types and random instance generators.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "ncdyn/cpdyn.hpp"
#include "ncdyn/freeprod.hpp"
#include "ncdyn/opalg.hpp"
#include "ncdyn/random.hpp"

namespace oracle {

using ncdyn::Complex;
using ncdyn::Matrix;

inline double max_abs(const Matrix& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

inline Matrix unit(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  Matrix e = Matrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

// exp(A) by scaling and squaring around a long Taylor series.
inline Matrix expm_taylor(const Matrix& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  double scale = 1.0;
  while (norm * scale > 0.25) {
    scale *= 0.5;
    ++squarings;
  }
  const Matrix x = a * scale;
  Matrix term = Matrix::Identity(a.rows(), a.cols());
  Matrix sum = term;
  for (int k = 1; k <= 30; ++k) {
    term = term * x / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

// Heisenberg GKLS generator written straight from its defining formula.
inline Matrix lindblad(const ncdyn::GKLSGenerator& gen, const Matrix& a) {
  const Complex i(0.0, 1.0);
  const Matrix& h = gen.hamiltonian();
  Matrix out = i * (h * a - a * h);
  for (const auto& v : gen.jumps()) {
    const Matrix vv = v.adjoint() * v;
    out += v.adjoint() * a * v - 0.5 * (vv * a + a * vv);
  }
  return out;
}

// Column-stacked coordinates, built entry by entry.
inline Matrix action_of(Eigen::Index n, const std::function<Matrix(const Matrix&)>& f) {
  Matrix act(n * n, n * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const Matrix img = f(unit(n, i, j));
      for (Eigen::Index c = 0; c < n; ++c) {
        for (Eigen::Index r = 0; r < n; ++r) act(c * n + r, j * n + i) = img(r, c);
      }
    }
  }
  return act;
}

inline Matrix apply_action(const Matrix& act, const Matrix& a) {
  const Eigen::Index n = a.rows();
  Eigen::VectorXcd v(n * n);
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) v(c * n + r) = a(r, c);
  }
  const Eigen::VectorXcd w = act * v;
  Matrix out(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) out(r, c) = w(c * n + r);
  }
  return out;
}

// P_t for a GKLS generator, independent of the library's expm/evolve.
struct Semigroup {
  Matrix generator;
  Matrix operator()(double t, const Matrix& a) const { return apply_action(expm_taylor(generator * t), a); }
};

inline Semigroup semigroup_of(const ncdyn::GKLSGenerator& gen) {
  return {action_of(gen.dim(), [&](const Matrix& a) { return lindblad(gen, a); })};
}

inline double min_hermitian_eig(const Matrix& a) {
  const Matrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

inline double singular_value_sum(const Matrix& a) {
  Eigen::BDCSVD<Matrix> svd(a);
  return svd.singularValues().sum();
}

}  // namespace oracle

namespace fixture {

using ncdyn::Matrix;
using ncdyn::random::Rng;

// A random unital GKLS generator: Hermitian H plus a few jumps.
inline ncdyn::GKLSGenerator unital_generator(Rng& rng, Eigen::Index n, int jumps = 2, double strength = 0.5) {
  std::vector<Matrix> vs;
  for (int k = 0; k < jumps; ++k) vs.push_back(strength * ncdyn::random::ginibre(rng, n, n));
  return ncdyn::GKLSGenerator(ncdyn::random::hermitian(rng, n), vs);
}

// Times drawn from {0, 1/2, ..., max/2} with distinct neighbors.
inline ncdyn::FreeWord random_word(Rng& rng, std::size_t len, int max = 4) {
  std::uniform_int_distribution<int> d(0, max);
  std::vector<ncdyn::Rational> t;
  while (t.size() < len) {
    const ncdyn::Rational r(d(rng), 2);
    if (t.empty() || !(t.back() == r)) t.push_back(r);
  }
  return ncdyn::FreeWord(t);
}

inline ncdyn::Section random_section(Rng& rng, Eigen::Index n, int terms = 2, std::size_t max_len = 2, int max = 4) {
  std::uniform_int_distribution<std::size_t> len(1, max_len);
  ncdyn::Section f(n);
  for (int k = 0; k < terms; ++k) {
    const auto w = random_word(rng, len(rng), max);
    ncdyn::ElementaryTensor x;
    for (std::size_t i = 0; i < w.size(); ++i) x.push_back(0.7 * ncdyn::random::ginibre(rng, n, n));
    f.add_term(w, x);
  }
  return f;
}

}  // namespace fixture
