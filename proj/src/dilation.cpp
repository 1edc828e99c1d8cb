#include "ncdyn/dilation.hpp"

#include <cmath>

#include "ncdyn/error.hpp"

namespace ncdyn {

Matrix StinespringTriple::compress(const Matrix& a) const {
  const auto r = static_cast<Eigen::Index>(rep_rank);
  return v.adjoint() * kron(a, Matrix::Identity(r, r)) * v;
}

StinespringTriple stinespring(const CPMap& phi, bool require_unital) {
  if (require_unital && !phi.is_unital(1e-10)) {
    throw Error(ErrorKind::NotUnital, "stinespring: sum K*K differs from the identity");
  }
  const Eigen::Index n = phi.dim();
  const Matrix c = choi(phi);
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (c + c.adjoint()));
  const auto& ev = es.eigenvalues();
  const double top = ev(ev.size() - 1);
  if (ev(0) < -1e-9 * std::max(1.0, top)) {
    throw Error(ErrorKind::NotCP, "stinespring: Choi matrix is not positive");
  }
  StinespringTriple out;
  // Choi entry ((i,a),(j,b)) = sum_k conj(K_k(i,a)) K_k(j,b), so each eigenvector
  // w with weight mu gives a Kraus operator K(i,a) = conj(sqrt(mu) w(i n + a)).
  for (Eigen::Index k = ev.size() - 1; k >= 0; --k) {
    if (ev(k) <= 1e-9 * top) break;
    const Vector w = std::sqrt(ev(k)) * es.eigenvectors().col(k);
    Matrix kr(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index a = 0; a < n; ++a) kr(i, a) = std::conj(w(i * n + a));
    }
    out.kraus.push_back(std::move(kr));
  }
  out.rep_rank = out.kraus.size();
  const auto r = static_cast<Eigen::Index>(out.rep_rank);
  out.v = Matrix::Zero(n * r, n);
  for (Eigen::Index k = 0; k < r; ++k) {
    for (Eigen::Index row = 0; row < n; ++row) {
      out.v.row(row * r + k) = out.kraus[static_cast<std::size_t>(k)].row(row);
    }
  }
  return out;
}

namespace {

struct WordSum {
  const std::vector<Matrix>& kraus;
  const std::vector<Matrix>& mats;
  const std::vector<long>& gaps;
  Matrix total;

  // Depth-first over blocks; within block j, `left` letters have been placed.
  void descend(std::size_t block, long left, const Matrix& prefix, const Matrix& suffix) {
    if (left == 0) {
      const Matrix with_a = prefix * mats[block];
      if (block + 1 == gaps.size()) {
        total += with_a * suffix;
        return;
      }
      descend(block + 1, gaps[block + 1], with_a, suffix);
      return;
    }
    for (const auto& k : kraus) descend(block, left - 1, prefix * k.adjoint(), k * suffix);
  }
};

}  // namespace

Matrix kraus_word_expectation(const CPMap& phi, const std::vector<double>& times,
                              const std::vector<Matrix>& mats) {
  if (!phi.is_unital(1e-10)) throw Error(ErrorKind::NotUnital, "kraus_word_expectation: map not unital");
  if (times.empty() || times.size() != mats.size()) {
    throw Error(ErrorKind::LengthMismatch, "kraus_word_expectation: need as many matrices as times");
  }
  const Eigen::Index n = phi.dim();
  std::vector<long> gaps;
  double prev = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double t = times[i];
    if (!(t >= 0.0) || std::abs(t - std::round(t)) > 1e-12) {
      throw Error(ErrorKind::InvalidArgument, "kraus_word_expectation: times must be nonnegative integers");
    }
    if (t < prev) throw Error(ErrorKind::NotSorted, "kraus_word_expectation: times must be nondecreasing");
    gaps.push_back(std::lround(t - prev));
    prev = t;
  }
  for (const auto& a : mats) {
    if (a.rows() != n || a.cols() != n) throw Error(ErrorKind::DimensionMismatch, "kraus_word_expectation");
  }
  const double words = std::pow(static_cast<double>(phi.kraus().size()), prev);
  if (words > kWordBudget) {
    throw Error(ErrorKind::BudgetExceeded, "kraus_word_expectation: more than 1e6 Kraus words");
  }
  WordSum sum{phi.kraus(), mats, gaps, Matrix::Zero(n, n)};
  const Matrix id = Matrix::Identity(n, n);
  sum.descend(0, gaps[0], id, id);
  return sum.total;
}

ProjectionClass projection_class(const CPMap& alpha, const Matrix& p) {
  const Eigen::Index n = alpha.dim();
  if (p.rows() != n || p.cols() != n) throw Error(ErrorKind::DimensionMismatch, "projection_class");
  if ((p * p - p).cwiseAbs().maxCoeff() > 1e-10 || (p - p.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw Error(ErrorKind::NotProjection, "projection_class: p is not a self-adjoint idempotent");
  }
  if (!alpha.is_unital(1e-10)) throw Error(ErrorKind::NotUnital, "projection_class: map not unital");
  const Matrix q = Matrix::Identity(n, n) - p;
  ProjectionClass out;
  out.increasing = is_psd(alpha.apply(p) - p);
  out.coinvariant = is_psd(q - alpha.apply(q));
  return out;
}

}  // namespace ncdyn
