#pragma once

// Spectral data of the Lax operator L_u = D - T_u restricted to its
// N-dimensional pure-point subspace C_{<=N-1}[X]/Q_u, which is spanned by the
// simple fractions 1/(x - z_j).

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "bo/rational_hardy.hpp"
#include "bo/soliton_profiles.hpp"

namespace bo {

using LMatrix = Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic>;

struct SpectralData {
  SolitonParameters params;
  std::vector<double> lambdas;  // ascending, all negative
  std::vector<double> gammas;
  std::vector<PoleResidueForm> eigenfunctions;  // unit norm, <u, phi_j> > 0
  Eigen::MatrixXcd m_matrix;                    // M(k, j) = <G phi_j, phi_k>
  double gram_cond = 1.0;
  LMatrix m_wide;  // m_matrix before rounding; its spectrum is ill-conditioned for clustered solitons

  std::size_t size() const { return lambdas.size(); }
};

/// Monomial basis x^k / Q_u, k = 0..N-1, in partial-fraction form.
std::vector<PoleResidueForm> hpp_basis(const SolitonParameters& params);

/// Unit-norm simple fractions sqrt(eta_j/pi) / (x - z_j).
std::vector<PoleResidueForm> cauchy_basis(const SolitonParameters& params);

/// L_u f = D f - Pi(u f) for f in the pure-point subspace.
PoleResidueForm lax_apply(const SolitonParameters& params, const PoleResidueForm& f);

/// G f = x f - (i / 2pi) <f, 1 - Theta>. The subtracted constant is f^(0+) in
/// Fourier terms and cancels the constant of x f exactly.
PoleResidueForm g_apply(const SolitonParameters& params, const PoleResidueForm& f);

/// Gram matrix B(j, k) = <e_k, e_j> and Lax matrix A(j, k) = <L e_k, e_j>.
struct HppMatrices {
  Eigen::MatrixXcd gram;
  Eigen::MatrixXcd lax;
};
HppMatrices hpp_matrices(const SolitonParameters& params, std::span<const PoleResidueForm> basis);

/// Matrix of L_u on the simple fractions f_j = 1/(x - z_j): L_u f_j = sum_k R(k, j) f_k.
/// Closed form in extended precision; throws InvariantViolation if it disagrees with lax_apply.
LMatrix lax_representation(const SolitonParameters& params);

/// Eigenvalues, normalized eigenfunctions, angles and M(u). Diagonalizes lax_representation;
/// The eigen-solve and the Gram-type sums run in binary128.
SpectralData spectral_decompose(const SolitonParameters& params);
/// Generalized Hermitian problem A v = lambda B v on an explicit basis, in double precision.
SpectralData spectral_decompose(const SolitonParameters& params, std::span<const PoleResidueForm> basis);

/// Closed form of M from eigenvalues and angles:
///   off-diagonal i/(l_k - l_j) sqrt(|l_k|/|l_j|), diagonal g_j - i/(2|l_j|).
Eigen::MatrixXcd m_formula(std::span<const double> lambdas, std::span<const double> gammas);

/// Largest entrywise deviation between the computed M and m_formula.
double verify_m_matrix(const SpectralData& sd);

/// max_j | |<u, phi_j>|^2 + 2 pi lambda_j ||phi_j||^2 | / (2 pi |lambda_j| ||phi_j||^2),
/// with <u, phi_j> taken against the full real profile.
double wu_defect(const SpectralData& sd);

}  // namespace bo
