#include "ncdyn/offwhite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ncdyn/error.hpp"

namespace ncdyn {

namespace {

// Integral of the singular profile over (0, a], a < 1: |log a|^{1-theta} / (theta - 1).
double singular_antiderivative(double theta, double a) {
  if (a <= 0.0) return 0.0;
  return std::pow(-std::log(a), 1.0 - theta) / (theta - 1.0);
}

// Integral of du / |log u|^theta over [p, q] within (0, 1), via s = -log u:
// the integrand becomes e^{-s} s^{-theta}, smooth on [-log q, -log p].
double log_weighted_integral(double theta, double p, double q) {
  const auto g = [theta](double s) { return std::exp(-s) * std::pow(s, -theta); };
  const double lo = -std::log(q);
  if (p <= 0.0) {
    boost::math::quadrature::exp_sinh<double> integrator;
    return integrator.integrate([&](double x) { return g(lo + x); }, 0.0, std::numeric_limits<double>::infinity(),
                                1e-14);
  }
  const double hi = -std::log(p);
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, lo, hi, 15, 1e-14);
}

// Integral of C(u) (alpha + beta u) over [p, q], 0 <= p < q.
double integrate_linear(const CorrelationSpec& spec, double p, double q, double alpha, double beta) {
  double total = 0.0;
  const double delta = spec.delta();
  const double eps = spec.epsilon();
  if (p < delta) {
    const double q1 = std::min(q, delta);
    const double theta = spec.theta();
    if (alpha != 0.0) {
      total += alpha * (singular_antiderivative(theta, q1) - singular_antiderivative(theta, p));
    }
    if (beta != 0.0) total += beta * log_weighted_integral(theta, p, q1);
  }
  const double lo = std::max(p, delta);
  const double hi = std::min(q, eps);
  if (lo < hi) {
    // C(u) = a0 + c1 u on [delta, epsilon].
    const double c1 = spec.slope_at_delta();
    const double a0 = spec.value_at_delta() - c1 * delta;
    const auto prim = [&](double u) {
      return a0 * alpha * u + (a0 * beta + c1 * alpha) * u * u / 2.0 + c1 * beta * u * u * u / 3.0;
    };
    total += prim(hi) - prim(lo);
  }
  return total;
}

// Same over an arbitrary [p, q], using C(-u) = C(u).
double integrate_linear_signed(const CorrelationSpec& spec, double p, double q, double alpha, double beta) {
  double total = 0.0;
  if (p < 0.0) {
    const double top = std::min(q, 0.0);
    total += integrate_linear(spec, -top, -p, alpha, -beta);
  }
  if (q > 0.0) total += integrate_linear(spec, std::max(p, 0.0), q, alpha, beta);
  return total;
}

void require_pd(const Matrix& g, const char* who) {
  if (g.rows() != g.cols() || g.rows() == 0) throw Error(ErrorKind::SingularGram, std::string(who) + ": empty or non-square Gram");
  const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  if ((g - g.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw Error(ErrorKind::SingularGram, std::string(who) + ": Gram is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (g + g.adjoint()), Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  if (!(ev(0) > 1e-10 * std::max(1.0, ev(ev.size() - 1)))) {
    throw Error(ErrorKind::SingularGram, std::string(who) + ": Gram is not positive definite");
  }
}

Matrix inverse_sqrt(const Matrix& g) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (g + g.adjoint()));
  return es.operatorInverseSqrt();
}

void require_same_atoms(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  mu.validate();
  nu.validate();
  if (mu.atoms != nu.atoms) throw Error(ErrorKind::AtomMismatch, "measures are on different atom sets");
}

}  // namespace

double singular_kernel(double theta, double t) {
  const double a = std::abs(t);
  return 1.0 / (a * std::pow(std::abs(std::log(a)), theta));
}

CorrelationSpec::CorrelationSpec(double theta, double delta) : theta_(theta), delta_(delta) {
  if (!(theta > 1.0 && theta <= 4.0)) throw Error(ErrorKind::BadSpec, "theta must lie in (1, 4]");
  if (!(delta > 0.0 && delta < std::exp(-theta))) {
    throw Error(ErrorKind::BadSpec, "delta must lie in (0, e^{-theta}) for the profile to be decreasing");
  }
  const double log_abs = -std::log(delta);
  c_delta_ = singular_kernel(theta, delta);
  slope_delta_ = c_delta_ * (theta / log_abs - 1.0) / delta;
  epsilon_ = delta - c_delta_ / slope_delta_;
  if (!(epsilon_ < 1.0)) throw Error(ErrorKind::BadSpec, "cutoff epsilon must be below 1");
}

double correlation_value(const CorrelationSpec& spec, double t) {
  if (t == 0.0) throw Error(ErrorKind::AtZero, "correlation kernel is singular at 0");
  const double a = std::abs(t);
  if (a <= spec.delta()) return singular_kernel(spec.theta(), a);
  return std::max(0.0, spec.value_at_delta() + spec.slope_at_delta() * (a - spec.delta()));
}

double correlation_integral(const CorrelationSpec& spec, double a) {
  if (!(a > 0.0)) throw Error(ErrorKind::InvalidArgument, "correlation_integral: a must be positive");
  return integrate_linear(spec, 0.0, a, 1.0, 0.0);
}

double cell_pair_weight(const CorrelationSpec& spec, double h, double d) {
  d = std::abs(d);
  // Tent max(0, h - |u - d|): rising on [d - h, d], falling on [d, d + h].
  return integrate_linear_signed(spec, d - h, d, h - d, 1.0) + integrate_linear_signed(spec, d, d + h, h + d, -1.0);
}

GramOperator gram_matrix(const CorrelationSpec& spec, const Grid& grid) {
  if (grid.cells == 0 || !(grid.right > grid.left) || !std::isfinite(grid.right - grid.left)) {
    throw Error(ErrorKind::BadGrid, "grid needs at least one cell of positive width");
  }
  const double h = grid.width();
  const auto n = static_cast<Eigen::Index>(grid.cells);
  std::vector<double> w(grid.cells);
  for (std::size_t k = 0; k < grid.cells; ++k) w[k] = cell_pair_weight(spec, h, static_cast<double>(k) * h);
  GramOperator out{grid, RealMatrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) out.entries(i, j) = w[static_cast<std::size_t>(std::abs(i - j))];
  }
  return out;
}

bool QuasiReport::bounded() const {
  if (rows.empty()) return false;
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const auto& r : rows) {
    if (!(r.sigma_min > 0.01)) return false;
    lo = std::min(lo, r.hs_defect);
    hi = std::max(hi, r.hs_defect);
  }
  if (hi == 0.0) return true;
  return lo > 0.0 && hi / lo <= 4.0;
}

QuasiReport quasiorthogonality_diagnostic(const CorrelationSpec& spec, const std::vector<Interval>& intervals,
                                          const std::vector<std::size_t>& refinements) {
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    const auto& a = intervals[i];
    if (!(a.right > a.left) || !std::isfinite(a.left) || !std::isfinite(a.right)) {
      throw Error(ErrorKind::BadGrid, "intervals must be bounded and nonempty");
    }
    for (std::size_t j = 0; j < i; ++j) {
      const auto& b = intervals[j];
      if (a.left < b.right && b.left < a.right) {
        throw Error(ErrorKind::OverlappingIntervals, "intervals must be pairwise disjoint");
      }
    }
  }
  QuasiReport report;
  for (std::size_t n : refinements) {
    if (n == 0) throw Error(ErrorKind::BadGrid, "refinement must be positive");
    const double h = 1.0 / static_cast<double>(n);
    std::vector<double> starts;
    std::vector<Eigen::Index> block_begin;
    std::vector<Eigen::Index> block_size;
    for (const auto& iv : intervals) {
      const double exact = (iv.right - iv.left) * static_cast<double>(n);
      const double cells = std::round(exact);
      if (cells < 1.0 || std::abs(exact - cells) > 1e-9 * std::max(1.0, exact)) {
        throw Error(ErrorKind::BadGrid, "interval length must be a multiple of 1/n");
      }
      block_begin.push_back(static_cast<Eigen::Index>(starts.size()));
      block_size.push_back(static_cast<Eigen::Index>(cells));
      for (long c = 0; c < static_cast<long>(cells); ++c) starts.push_back(iv.left + static_cast<double>(c) * h);
    }
    const auto total = static_cast<Eigen::Index>(starts.size());
    std::map<long, double> on_lattice;
    const auto weight = [&](double d) {
      const double ratio = d / h;
      const double k = std::round(ratio);
      if (std::abs(ratio - k) < 1e-9) {
        const long key = std::labs(static_cast<long>(k));
        auto it = on_lattice.find(key);
        if (it == on_lattice.end()) it = on_lattice.emplace(key, cell_pair_weight(spec, h, static_cast<double>(key) * h)).first;
        return it->second;
      }
      return cell_pair_weight(spec, h, d);
    };
    Matrix gram(total, total);
    for (Eigen::Index i = 0; i < total; ++i) {
      for (Eigen::Index j = 0; j <= i; ++j) {
        const double w = weight(starts[static_cast<std::size_t>(j)] - starts[static_cast<std::size_t>(i)]);
        gram(i, j) = w;
        gram(j, i) = w;
      }
    }
    // L*L in orthonormal bases of the interval subspaces: identity diagonal blocks,
    // off-diagonal blocks G_kk^{-1/2} G_kl G_ll^{-1/2}.
    std::vector<Matrix> whiten;
    for (std::size_t k = 0; k < intervals.size(); ++k) {
      whiten.push_back(inverse_sqrt(gram.block(block_begin[k], block_begin[k], block_size[k], block_size[k])));
    }
    Matrix lstar_l = Matrix::Identity(total, total);
    for (std::size_t k = 0; k < intervals.size(); ++k) {
      for (std::size_t l = 0; l < intervals.size(); ++l) {
        if (k == l) continue;
        lstar_l.block(block_begin[k], block_begin[l], block_size[k], block_size[l]) =
            whiten[k] * gram.block(block_begin[k], block_begin[l], block_size[k], block_size[l]) * whiten[l];
      }
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (lstar_l + lstar_l.adjoint()), Eigen::EigenvaluesOnly);
    QuasiRow row;
    row.n = n;
    row.sigma_min = std::sqrt(std::max(0.0, es.eigenvalues()(0)));
    row.hs_defect = (lstar_l - Matrix::Identity(total, total)).norm();
    report.rows.push_back(row);
  }
  return report;
}

Matrix equivalence_defect(const Matrix& l) {
  return Matrix::Identity(l.cols(), l.cols()) - l.adjoint() * l;
}

void DiscreteMeasure::validate() const {
  if (atoms.size() != weights.size()) throw Error(ErrorKind::InvalidArgument, "measure: atoms and weights differ in length");
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) throw Error(ErrorKind::InvalidArgument, "measure: weights must be finite and nonnegative");
  }
}

double DiscreteMeasure::total() const { return std::accumulate(weights.begin(), weights.end(), 0.0); }

DiscreteMeasure kakutani_mean(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  require_same_atoms(mu, nu);
  DiscreteMeasure out{mu.atoms, std::vector<double>(mu.weights.size())};
  for (std::size_t i = 0; i < mu.weights.size(); ++i) out.weights[i] = std::sqrt(mu.weights[i] * nu.weights[i]);
  return out;
}

Complex mc_inner(const AtomFunction& f, const DiscreteMeasure& mu, const AtomFunction& g, const DiscreteMeasure& nu) {
  require_same_atoms(mu, nu);
  if (f.size() != mu.atoms.size() || g.size() != nu.atoms.size()) {
    throw Error(ErrorKind::AtomMismatch, "function is not defined on the measure's atoms");
  }
  const DiscreteMeasure mean = kakutani_mean(mu, nu);
  Complex total = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) total += f[i] * std::conj(g[i]) * mean.weights[i];
  return total;
}

Matrix mc_gram(const FormalSum& terms) {
  const auto m = static_cast<Eigen::Index>(terms.size());
  Matrix g(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index k = 0; k < m; ++k) {
      const auto& [fj, mj] = terms[static_cast<std::size_t>(j)];
      const auto& [fk, mk] = terms[static_cast<std::size_t>(k)];
      g(j, k) = mc_inner(fj, mj, fk, mk);
    }
  }
  return g;
}

double mc_norm_sq(const FormalSum& terms, const std::vector<Complex>& coeffs) {
  if (coeffs.size() != terms.size()) throw Error(ErrorKind::LengthMismatch, "mc_norm_sq: one coefficient per term");
  const Matrix g = mc_gram(terms);
  const Vector c = Eigen::Map<const Vector>(coeffs.data(), static_cast<Eigen::Index>(coeffs.size()));
  // <sum c_j x_j, sum c_k x_k> = sum c_j conj(c_k) g_jk.
  return (c.transpose() * g * c.conjugate())(0, 0).real();
}

Matrix feldman_hajek_B(const GaussianGramPair& pair) {
  require_pd(pair.gp, "feldman_hajek_B");
  require_pd(pair.gq, "feldman_hajek_B");
  if (pair.gp.rows() != pair.gq.rows()) throw Error(ErrorKind::DimensionMismatch, "feldman_hajek_B");
  // G_Q = B^T G_P  =>  B = conj(G_P^{-1} G_Q) for Hermitian Grams.
  Eigen::LLT<Matrix> llt(0.5 * (pair.gp + pair.gp.adjoint()));
  return llt.solve(pair.gq).conjugate();
}

double feldman_hajek_residual(const GaussianGramPair& pair, const Matrix& b) {
  return (b.transpose() * pair.gp - pair.gq).cwiseAbs().maxCoeff();
}

StraightenResult straighten(const Matrix& gram_m, const Matrix& gram_n, const Matrix& cross) {
  require_pd(gram_m, "straighten");
  require_pd(gram_n, "straighten");
  const Eigen::Index p = gram_m.rows();
  const Eigen::Index q = gram_n.rows();
  if (cross.rows() != p || cross.cols() != q) throw Error(ErrorKind::DimensionMismatch, "straighten: cross Gram shape");
  Matrix joint(p + q, p + q);
  joint << gram_m, cross, cross.adjoint(), gram_n;
  Matrix direct = Matrix::Zero(p + q, p + q);
  direct.topLeftCorner(p, p) = gram_m;
  direct.bottomRightCorner(q, q) = gram_n;
  Matrix whiten = Matrix::Zero(p + q, p + q);
  whiten.topLeftCorner(p, p) = inverse_sqrt(gram_m);
  whiten.bottomRightCorner(q, q) = inverse_sqrt(gram_n);
  const Matrix lstar_l = whiten * joint * whiten;
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (lstar_l + lstar_l.adjoint()), Eigen::EigenvaluesOnly);
  StraightenResult out;
  out.sigma_min = std::sqrt(std::max(0.0, es.eigenvalues()(0)));
  if (!(out.sigma_min > 1e-10)) throw Error(ErrorKind::SumMapSingular, "straighten: sum map is not injective");
  // In the basis (m, n) of M + N, L^{-1} sends each basis vector to itself in M (+) N.
  out.q_gram = direct;
  out.b = feldman_hajek_B({joint, direct});
  return out;
}

}  // namespace ncdyn
