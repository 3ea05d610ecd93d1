#pragma once

// Conserved quantities, the generating function H_lambda and finite-difference
// checks of the symplectic and Poisson structure of the N-soliton manifold.

#include <Eigen/Dense>

#include "bo/action_angle.hpp"
#include "bo/lax_spectral.hpp"
#include "bo/soliton_profiles.hpp"

namespace bo {

/// 2N x 2N matrix of omega(d_a u, d_b u) in coordinates (x_1, eta_1, ..., x_N, eta_N),
/// following the (sorted) order of params.
Eigen::MatrixXd omega_matrix(const SolitonParameters& params);

/// Central-difference Jacobian of the action-angle map. Rows are (r^1..r^N, alpha^1..alpha^N),
/// columns follow omega_matrix. The step for coordinate a is fd_step * (1 + |theta_a|).
Eigen::MatrixXd aa_jacobian(const SolitonParameters& params, double fd_step = 1e-5);

/// max |J^T nu J - Omega| with nu = [[0, 1], [-1, 0]] in (r, alpha) blocks.
/// Throws FDStepTooLarge when the defect exceeds 1e-6 and halving the step does not reduce it.
double symplectomorphism_check(const SolitonParameters& params, double fd_step = 1e-5);

/// Brackets among (I_1..I_N, gamma_1..gamma_N) through P = -Omega^{-1}. The canonical
/// pattern is [[0, 1], [-1, 0]].
Eigen::MatrixXd poisson_bracket_table(const SolitonParameters& params, double fd_step = 1e-5);

/// E_n = sum_j 2 pi |lambda_j| lambda_j^n.
double e_n_from_spectrum(const SpectralData& sd, unsigned n);

/// E_n from action coordinates alone (lambda_j = r^j / 2 pi).
double e_n_from_actions(const ActionAngles& aa, unsigned n);

enum class Boundary { Decayed, Periodic };

/// E(u) = 1/2 <|D| u, u> - 1/3 int u^3 on the grid, the field taken as one period.
/// Decayed fields must be below 1e-6 at both ends (BoundaryNotDecayed).
double e1_quadrature(const GridField& field, Boundary boundary = Boundary::Decayed);

/// Trapezoid mass int u on the periodic grid.
double mass_quadrature(const GridField& field);

/// H_lambda = -sum_j 2 pi lambda_j / (lambda + lambda_j). PoleProximity within 1e-8 of -lambda_j.
double h_lambda(const SpectralData& sd, double lam);
double h_lambda_from_actions(const ActionAngles& aa, double lam);

/// <(L_u + lambda)^{-1} Pi u, Pi u> from an N x N solve on the pure-point subspace.
double h_lambda_resolvent(const SolitonParameters& params, double lam);

}  // namespace bo
