#include "ncdyn/prodsys.hpp"

#include <algorithm>
#include <cmath>

#include "ncdyn/error.hpp"

namespace ncdyn {

Complex covariance(const ExpUnit& u, const ExpUnit& v) {
  if (u.zeta.size() != v.zeta.size()) throw Error(ErrorKind::DimensionMismatch, "covariance");
  // Eigen's dot conjugates its left operand: v.dot(u) = sum conj(v_k) u_k.
  return u.a + std::conj(v.a) + v.zeta.dot(u.zeta);
}

CovKernel::CovKernel(std::vector<std::string> labels, Matrix c) : labels_(std::move(labels)), c_(std::move(c)) {
  const auto m = static_cast<Eigen::Index>(labels_.size());
  if (c_.rows() != m || c_.cols() != m) {
    throw Error(ErrorKind::DimensionMismatch, "CovKernel: matrix does not match label count");
  }
  const double scale = m == 0 ? 1.0 : std::max(1.0, c_.cwiseAbs().maxCoeff());
  if (m > 0 && (c_ - c_.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error(ErrorKind::InvalidArgument, "CovKernel: c(u,v) must equal conj(c(v,u))");
  }
}

CovKernel CovKernel::of_units(const std::vector<ExpUnit>& units) {
  const auto m = static_cast<Eigen::Index>(units.size());
  Matrix c(m, m);
  std::vector<std::string> labels;
  for (Eigen::Index i = 0; i < m; ++i) {
    labels.push_back("u" + std::to_string(i));
    for (Eigen::Index j = 0; j < m; ++j) {
      c(i, j) = covariance(units[static_cast<std::size_t>(i)], units[static_cast<std::size_t>(j)]);
    }
  }
  return {std::move(labels), std::move(c)};
}

Matrix CovKernel::reduced_gram() const {
  const Eigen::Index m = c_.rows();
  if (m < 2) return Matrix::Zero(0, 0);
  // Columns e_k - e_0 span {lambda : sum lambda = 0}.
  Matrix basis = Matrix::Zero(m, m - 1);
  for (Eigen::Index k = 1; k < m; ++k) {
    basis(0, k - 1) = -1.0;
    basis(k, k - 1) = 1.0;
  }
  // sum_ij lambda_i conj(lambda_j) c_ij = lambda^T c conj(lambda); for real basis
  // vectors this is the Gram B^T c B, Hermitian because c is.
  Matrix r = basis.transpose() * c_ * basis;
  return 0.5 * (r + r.adjoint());
}

bool CovKernel::conditionally_positive() const {
  const Matrix r = reduced_gram();
  if (r.size() == 0) return true;
  Eigen::SelfAdjointEigenSolver<Matrix> es(r, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return ev(0) >= -1e-10 * std::max(1.0, ev(ev.size() - 1));
}

IndexReport index_dimension(const CovKernel& kernel) {
  if (!kernel.conditionally_positive()) {
    throw Error(ErrorKind::NotCondPD, "index_dimension: kernel is not conditionally positive definite");
  }
  const Matrix r = kernel.reduced_gram();
  IndexReport out;
  if (r.size() == 0) return out;
  Eigen::SelfAdjointEigenSolver<Matrix> es(r, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double top = ev(ev.size() - 1);
  if (top <= 0.0) return out;
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (ev(k) > 1e-8 * top) ++out.dimension;
  }
  return out;
}

IndexReport index_dimension(const std::vector<ExpUnit>& units) {
  IndexReport out = index_dimension(CovKernel::of_units(units));
  out.exact = true;
  return out;
}

CovKernel kernel_direct_sum(const CovKernel& e, const CovKernel& f) {
  if (!e.conditionally_positive() || !f.conditionally_positive()) {
    throw Error(ErrorKind::NotCondPD, "kernel_direct_sum: both kernels must be conditionally positive");
  }
  const auto me = static_cast<Eigen::Index>(e.size());
  const auto mf = static_cast<Eigen::Index>(f.size());
  std::vector<std::string> labels;
  Matrix c(me * mf, me * mf);
  for (Eigen::Index i = 0; i < me; ++i) {
    for (Eigen::Index j = 0; j < mf; ++j) {
      labels.push_back("(" + e.labels()[static_cast<std::size_t>(i)] + "," +
                       f.labels()[static_cast<std::size_t>(j)] + ")");
      for (Eigen::Index k = 0; k < me; ++k) {
        for (Eigen::Index l = 0; l < mf; ++l) {
          c(i * mf + j, k * mf + l) = e.values()(i, k) + f.values()(j, l);
        }
      }
    }
  }
  return {std::move(labels), std::move(c)};
}

ExtendedIndex ExtendedIndex::parse(const std::string& text) {
  if (text == "aleph0" || text == "inf") return aleph0();
  if (text == "continuum" || text == "2^aleph0") return continuum();
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || text[0] == '-') {
    throw Error(ErrorKind::InvalidArgument, "index must be a count, 'aleph0' or 'continuum': " + text);
  }
  return finite(v);
}

std::string ExtendedIndex::to_string() const {
  switch (kind) {
    case Kind::Aleph0: return "aleph0";
    case Kind::Continuum: return "continuum";
    case Kind::Finite: break;
  }
  return std::to_string(value);
}

bool pairing_possible(const ExtendedIndex& a, const ExtendedIndex& b) { return a == b; }

void GaugeElement::validate() const {
  if (u.rows() != u.cols() || u.rows() != xi.size()) {
    throw Error(ErrorKind::DimensionMismatch, "GaugeElement: xi and U dimensions differ");
  }
  const Matrix defect = u.adjoint() * u - Matrix::Identity(u.rows(), u.cols());
  if (u.size() > 0 && operator_norm(defect) >= 1e-10) {
    throw Error(ErrorKind::InvalidArgument, "GaugeElement: U is not unitary");
  }
}

GaugeElement gauge_identity(Eigen::Index n) { return {0.0, Vector::Zero(n), Matrix::Identity(n, n)}; }

double symplectic_form(const Vector& xi, const Vector& eta) {
  // <xi, eta> linear in xi: sum xi_k conj(eta_k) = eta.dot(xi).
  return eta.dot(xi).imag();
}

GaugeElement gauge_mul(const GaugeElement& g, const GaugeElement& h) {
  if (g.xi.size() != h.xi.size() || g.u.rows() != h.u.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "gauge_mul");
  }
  const Vector u_eta = g.u * h.xi;
  return {g.lambda + h.lambda + symplectic_form(g.xi, u_eta), g.xi + u_eta, g.u * h.u};
}

GaugeElement gauge_inverse(const GaugeElement& g) {
  const Matrix u_inv = g.u.adjoint();
  return {-g.lambda, -(u_inv * g.xi), u_inv};
}

}  // namespace ncdyn
