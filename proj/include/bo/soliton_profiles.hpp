#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "bo/rational_hardy.hpp"

namespace bo {

/// Translation-scaling parameters z_j = x_j - i eta_j of an N-soliton
///   u(x) = sum_j 2 eta_j / ((x - x_j)^2 + eta_j^2).
/// Stored as a multiset in lexicographic (Re, Im) order.
class SolitonParameters {
 public:
  explicit SolitonParameters(std::vector<cplx> zs);

  static SolitonParameters from_positions(std::span<const double> x, std::span<const double> eta);

  std::size_t size() const { return zs_.size(); }
  std::span<const cplx> zs() const { return zs_; }
  cplx operator[](std::size_t j) const { return zs_[j]; }
  double position(std::size_t j) const { return zs_[j].real(); }
  double width(std::size_t j) const { return -zs_[j].imag(); }

 private:
  std::vector<cplx> zs_;
};

/// X^N + a_{N-1} X^{N-1} + ... + a_0 with the leading one implicit.
struct MonicPolynomial {
  std::vector<cplx> low_coeffs;

  std::size_t degree() const { return low_coeffs.size(); }
  cplx operator()(cplx x) const;
  cplx derivative_at(cplx x) const;
};

/// Uniform samples values[k] = u(x0 + k dx).
struct GridField {
  double x0 = 0.0;
  double dx = 1.0;
  std::vector<double> values;

  GridField() = default;
  GridField(double x0, double dx, std::vector<double> values);

  std::size_t size() const { return values.size(); }
  double x(std::size_t k) const { return x0 + static_cast<double>(k) * dx; }
};

MonicPolynomial viete_coeffs(std::span<const cplx> roots);

/// Companion-matrix eigenvalues followed by Newton polishing.
std::vector<cplx> poly_roots(const MonicPolynomial& p);

/// Pi u = i Q'/Q = sum_j i / (x - z_j).
PoleResidueForm pi_u(const SolitonParameters& params);

/// u itself as a rational function, Pi u plus its conjugate reflection.
PoleResidueForm u_rational(const SolitonParameters& params);

double profile_at(const SolitonParameters& params, double x);
GridField profile(const SolitonParameters& params, double x0, double dx, std::size_t n);

/// 1 - Qbar/Q, which lies in the Hardy space with poles at the z_j.
PoleResidueForm one_minus_theta(const SolitonParameters& params);

/// Gap potential on [0, 2pi): roots w_j = exp(i z_j) outside the unit disc and
/// v(y) = 2 Re[-e^{iy} Q'(e^{iy}) / Q(e^{iy})].
GridField torus_potential(const SolitonParameters& params, std::size_t m);

}  // namespace bo
