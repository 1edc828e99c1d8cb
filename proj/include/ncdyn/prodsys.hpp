#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ncdyn/opalg.hpp"

namespace ncdyn {

/// Exponential unit u(t) = e^{ta} exp(chi_(0,t) (x) zeta) of the product system E_N.
struct ExpUnit {
  Complex a;
  Vector zeta;
};

/// Covariance c(u, v) = a + conj(b) + <zeta, omega>, inner product linear in the first slot,
/// so that <u(t), v(t)> = exp(t c(u, v)). Throws DimensionMismatch.
Complex covariance(const ExpUnit& u, const ExpUnit& v);

/// Covariance kernel over a finite set of units.
class CovKernel {
 public:
  /// Throws InvalidArgument unless c is square, matches the labels and is
  /// Hermitian-symmetric within 1e-12 (scaled by max(1, max |c_ij|)).
  CovKernel(std::vector<std::string> labels, Matrix c);

  static CovKernel of_units(const std::vector<ExpUnit>& units);

  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const Matrix& values() const noexcept { return c_; }
  std::size_t size() const noexcept { return labels_.size(); }

  /// Gram on the sum-zero subspace in the basis e_k - e_0.
  Matrix reduced_gram() const;
  /// Reduced Gram min eigenvalue >= -1e-10 max(1, largest eigenvalue).
  bool conditionally_positive() const;

 private:
  std::vector<std::string> labels_;
  Matrix c_;
};

struct IndexReport {
  std::size_t dimension = 0;
  /// True when computed from exponential units, where the value is exact; for an
  /// arbitrary kernel sample it is only a lower bound on the index.
  bool exact = false;
};

/// Numerical rank of the reduced Gram (eigenvalues above 1e-8 of the largest).
/// Throws NotCondPD.
IndexReport index_dimension(const CovKernel& kernel);
IndexReport index_dimension(const std::vector<ExpUnit>& units);

/// Kernel of the tensor product system on the product label set:
/// c((u,v),(u',v')) = cE(u,u') + cF(v,v'). Throws NotCondPD.
CovKernel kernel_direct_sum(const CovKernel& e, const CovKernel& f);

/// Index value: a finite count or one of the symbolic infinite cardinals.
struct ExtendedIndex {
  enum class Kind { Finite, Aleph0, Continuum };
  Kind kind = Kind::Finite;
  std::size_t value = 0;

  static ExtendedIndex finite(std::size_t n) { return {Kind::Finite, n}; }
  static ExtendedIndex aleph0() { return {Kind::Aleph0, 0}; }
  static ExtendedIndex continuum() { return {Kind::Continuum, 0}; }
  /// "3", "aleph0", "continuum".
  static ExtendedIndex parse(const std::string& text);
  std::string to_string() const;

  friend bool operator==(const ExtendedIndex&, const ExtendedIndex&) = default;
};

/// Two E_0-semigroups admit an interaction pairing iff their indices agree.
bool pairing_possible(const ExtendedIndex& a, const ExtendedIndex& b);

/// Element (lambda, xi, U) of G_H = R x H x U(H), H = C^N.
struct GaugeElement {
  double lambda = 0.0;
  Vector xi;
  Matrix u;

  /// Throws InvalidArgument unless ||U*U - 1|| < 1e-10 and xi has matching length.
  void validate() const;
};

GaugeElement gauge_identity(Eigen::Index n);

/// omega(xi, eta) = Im <xi, eta>.
double symplectic_form(const Vector& xi, const Vector& eta);

/// (lambda, xi, U)(mu, eta, V) = (lambda + mu + omega(xi, U eta), xi + U eta, U V).
/// Throws DimensionMismatch.
GaugeElement gauge_mul(const GaugeElement& g, const GaugeElement& h);

/// (-lambda, -U^{-1} xi, U^{-1}). The printed formula
/// (-lambda + omega(xi, U xi), U^{-1} xi, U^{-1}) is not a two-sided inverse under the
/// product law above; this is the form solved from that law.
GaugeElement gauge_inverse(const GaugeElement& g);

}  // namespace ncdyn
