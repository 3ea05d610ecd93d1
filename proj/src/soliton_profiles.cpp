#include "bo/soliton_profiles.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bo/errors.hpp"

namespace bo {

SolitonParameters::SolitonParameters(std::vector<cplx> zs) : zs_(std::move(zs)) {
  if (zs_.empty()) throw Error(ErrorKind::InvalidParameters, "need at least one soliton");
  for (const cplx z : zs_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw Error(ErrorKind::InvalidParameters, "non-finite soliton parameter");
    if (!(z.imag() < -tol::pole_real)) {
      std::ostringstream os;
      os << "parameter " << z << " is not in the lower half-plane (eta must be positive)";
      throw Error(ErrorKind::InvalidParameters, os.str());
    }
  }
  std::sort(zs_.begin(), zs_.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  if (zs_.size() > 1 && relative_min_separation(zs_) <= tol::degeneracy)
    throw Error(ErrorKind::DegenerateParameters, "soliton parameters coincide");
}

SolitonParameters SolitonParameters::from_positions(std::span<const double> x, std::span<const double> eta) {
  if (x.size() != eta.size()) throw Error(ErrorKind::InvalidParameters, "position/width length mismatch");
  std::vector<cplx> zs;
  zs.reserve(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) zs.emplace_back(x[j], -eta[j]);
  return SolitonParameters(std::move(zs));
}

cplx MonicPolynomial::operator()(cplx x) const {
  cplx v = 1.0;
  for (auto it = low_coeffs.rbegin(); it != low_coeffs.rend(); ++it) v = v * x + *it;
  return v;
}

cplx MonicPolynomial::derivative_at(cplx x) const {
  const std::size_t n = degree();
  cplx v = static_cast<double>(n);
  for (std::size_t k = n - 1; k >= 1; --k) v = v * x + static_cast<double>(k) * low_coeffs[k];
  return v;
}

GridField::GridField(double x0_, double dx_, std::vector<double> values_)
    : x0(x0_), dx(dx_), values(std::move(values_)) {
  if (!(dx > 0.0)) throw Error(ErrorKind::InvalidParameters, "grid spacing must be positive");
  if (values.size() < 2) throw Error(ErrorKind::InvalidParameters, "grid needs at least two points");
  for (const double v : values)
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidParameters, "non-finite grid value");
}

MonicPolynomial viete_coeffs(std::span<const cplx> roots) {
  if (roots.empty()) throw Error(ErrorKind::DegreeError, "Viete map needs at least one root");
  // c holds all coefficients low to high, including the leading one
  std::vector<cplx> c{1.0};
  for (const cplx r : roots) {
    std::vector<cplx> next(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  c.pop_back();
  return {std::move(c)};
}

std::vector<cplx> poly_roots(const MonicPolynomial& p) {
  const std::size_t n = p.degree();
  if (n == 0) throw Error(ErrorKind::DegreeError, "degree must be at least one");

  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t k = 1; k < n; ++k) companion(k, k - 1) = 1.0;
  for (std::size_t k = 0; k < n; ++k) companion(k, n - 1) = -p.low_coeffs[k];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::RootFindingFailed, "companion eigensolver failed");

  double amax = 0.0;
  for (const cplx a : p.low_coeffs) amax = std::max(amax, std::abs(a));
  const double bound = 1e-8 * (1.0 + amax);

  std::vector<cplx> roots(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  for (cplx& r : roots) {
    for (int it = 0; it < 3; ++it) {
      const cplx d = p.derivative_at(r);
      if (d == 0.0) break;
      const cplx step = p(r) / d;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      r -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(r))) break;
    }
    if (!(std::abs(p(r)) < bound)) {
      std::ostringstream os;
      os << "residual " << std::abs(p(r)) << " at root " << r << " exceeds " << bound;
      throw Error(ErrorKind::RootFindingFailed, os.str());
    }
  }
  return roots;
}

PoleResidueForm pi_u(const SolitonParameters& params) {
  std::vector<PoleTerm> terms;
  terms.reserve(params.size());
  for (const cplx z : params.zs()) terms.push_back({z, 1, cplx(0.0, 1.0)});
  return PoleResidueForm(std::move(terms));
}

PoleResidueForm u_rational(const SolitonParameters& params) {
  const PoleResidueForm p = pi_u(params);
  return p + p.conjugate_reflection();
}

double profile_at(const SolitonParameters& params, double x) {
  double s = 0.0;
  for (const cplx z : params.zs()) {
    const double d = x - z.real();
    const double eta = -z.imag();
    s += 2.0 * eta / (d * d + eta * eta);
  }
  return s;
}

GridField profile(const SolitonParameters& params, double x0, double dx, std::size_t n) {
  std::vector<double> values(n);
  for (std::size_t k = 0; k < n; ++k) values[k] = profile_at(params, x0 + static_cast<double>(k) * dx);
  return GridField(x0, dx, std::move(values));
}

PoleResidueForm one_minus_theta(const SolitonParameters& params) {
  const auto zs = params.zs();
  std::vector<PoleTerm> terms;
  terms.reserve(zs.size());
  // residue of (Q - Qbar)/Q at z_k is -Qbar(z_k)/Q'(z_k)
  for (std::size_t k = 0; k < zs.size(); ++k) {
    cplx num = 1.0;
    cplx den = 1.0;
    for (std::size_t j = 0; j < zs.size(); ++j) {
      num *= zs[k] - std::conj(zs[j]);
      if (j != k) den *= zs[k] - zs[j];
    }
    terms.push_back({zs[k], 1, -num / den});
  }
  return PoleResidueForm(std::move(terms));
}

GridField torus_potential(const SolitonParameters& params, std::size_t m) {
  if (m < 2) throw Error(ErrorKind::InvalidParameters, "torus grid needs at least two points");
  std::vector<cplx> w;
  w.reserve(params.size());
  for (const cplx z : params.zs()) w.push_back(std::exp(cplx(0.0, 1.0) * z));

  const double dy = 2.0 * std::numbers::pi / static_cast<double>(m);
  std::vector<double> v(m);
  for (std::size_t k = 0; k < m; ++k) {
    const cplx q = std::polar(1.0, dy * static_cast<double>(k));
    // q Q'(q)/Q(q) = sum_j q/(q - w_j)
    cplx h = 0.0;
    for (const cplx wj : w) h -= q / (q - wj);
    v[k] = 2.0 * h.real();
  }
  return GridField(0.0, dy, std::move(v));
}

}  // namespace bo
