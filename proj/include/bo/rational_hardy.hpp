#pragma once

// Rational functions on the real line written as a finite sum of pole terms
// c / (x - p)^m plus a constant. Elements of L^2 have zero constant; elements of
// the Hardy space L^2_+ additionally have every pole in the lower half-plane.

#include <complex>
#include <span>
#include <vector>

namespace bo {

using cplx = std::complex<double>;

namespace tol {
/// Relative pole separation below which two distinct poles count as colliding.
inline constexpr double degeneracy = 1e-9;
/// Terms smaller than this fraction of the largest term are pruned.
inline constexpr double drop = 1e-14;
/// Poles closer than this to the real axis are rejected.
inline constexpr double pole_real = 1e-12;
}  // namespace tol

struct PoleTerm {
  cplx pole;
  int order = 1;
  cplx coeff;
};

class PoleResidueForm {
 public:
  PoleResidueForm() = default;
  explicit PoleResidueForm(std::vector<PoleTerm> terms, cplx constant = 0.0);

  static PoleResidueForm term(cplx pole, cplx coeff, int order = 1);
  static PoleResidueForm constant_only(cplx c);

  const std::vector<PoleTerm>& terms() const { return terms_; }
  cplx constant() const { return constant_; }

  bool is_zero() const { return terms_.empty() && constant_ == 0.0; }
  bool in_l2() const { return constant_ == 0.0; }
  bool in_hardy() const;
  int max_order() const;

  /// Distinct poles in canonical order.
  std::vector<cplx> poles() const;
  /// Coefficient of (x - pole)^-order, zero when absent. Pole lookup is exact.
  cplx coeff(cplx pole, int order = 1) const;

  /// Largest |coeff| over terms and constant; zero for the zero function.
  double magnitude() const;

  /// x -> conj(f(conj x)): conjugated poles and coefficients.
  PoleResidueForm conjugate_reflection() const;
  /// Same poles with all terms of the given order removed.
  PoleResidueForm without_order(int order) const;
  PoleResidueForm with_constant(cplx c) const;

  PoleResidueForm operator-() const;
  PoleResidueForm& operator+=(const PoleResidueForm& other);
  PoleResidueForm& operator-=(const PoleResidueForm& other);
  PoleResidueForm& operator*=(cplx s);

  friend PoleResidueForm operator+(PoleResidueForm a, const PoleResidueForm& b) { return a += b; }
  friend PoleResidueForm operator-(PoleResidueForm a, const PoleResidueForm& b) { return a -= b; }
  friend PoleResidueForm operator*(PoleResidueForm a, cplx s) { return a *= s; }
  friend PoleResidueForm operator*(cplx s, PoleResidueForm a) { return a *= s; }

 private:
  void canonicalize();

  std::vector<PoleTerm> terms_;
  cplx constant_ = 0.0;
};

/// Partial fractions of P / prod(x - root). Numerator coefficients are given
/// highest degree first, so {1, 0} is the polynomial x.
PoleResidueForm pf_decompose(std::span<const cplx> numerator_coeffs, std::span<const cplx> den_roots);

PoleResidueForm multiply(const PoleResidueForm& f, const PoleResidueForm& g);

/// d/dx. The operator D = -i d/dx is -i * derivative(f).
PoleResidueForm derivative(const PoleResidueForm& f);

/// x * f(x); requires a zero constant.
PoleResidueForm multiply_by_x(const PoleResidueForm& f);

/// Keeps the lower half-plane terms, which is the Szego projection on L^2.
PoleResidueForm szego_project(const PoleResidueForm& f);

/// Integral over the real line of f * conj(g), by residues in the upper half-plane.
cplx inner_product(const PoleResidueForm& f, const PoleResidueForm& g);

cplx evaluate(const PoleResidueForm& f, cplx x);

/// Smallest pairwise distance among `points`, divided by their largest modulus.
double relative_min_separation(std::span<const cplx> points);

}  // namespace bo
