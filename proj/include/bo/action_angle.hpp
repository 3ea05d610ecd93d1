#pragma once

// Action-angle coordinates (r^1 < ... < r^N < 0; alpha^1..alpha^N) of the
// N-soliton manifold, the inverse map back to soliton parameters and the
// explicit multi-soliton solution.

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "bo/lax_spectral.hpp"
#include "bo/soliton_profiles.hpp"

namespace bo {

struct ActionAngles {
  std::vector<double> rs;
  std::vector<double> alphas;

  std::size_t size() const { return rs.size(); }
  /// Throws OrderingViolation unless rs is strictly increasing and negative.
  void validate() const;
};

/// I_j = 2 pi lambda_j, alpha_j = gamma_j.
ActionAngles action_angles(const SpectralData& sd);

/// The action-angle map applied to soliton parameters.
ActionAngles forward_map(const SolitonParameters& params);

/// M_kj = 2 pi i/(I_k - I_j) sqrt(I_k/I_j) off the diagonal, alpha_j + pi i/I_j on it.
Eigen::MatrixXcd m_from_aa(const ActionAngles& aa);

/// Eigenvalues of a double matrix, computed in extended precision (M is far from normal).
std::vector<cplx> m_eigenvalues(const Eigen::MatrixXcd& m);
std::vector<cplx> m_eigenvalues(const LMatrix& m);

/// Soliton parameters as the eigenvalues of m_from_aa(aa).
SolitonParameters inverse_map(const ActionAngles& aa);

/// Linear flow of the energy: actions fixed, alpha^k(t) = alpha^k(0) - r^k t / pi.
ActionAngles evolve_aa(const ActionAngles& aa, double t);

/// u(t, x) = 2 Im <(M_0 - x - t V / pi)^{-1} X, Y> with V = diag(I_j).
double explicit_solution(const ActionAngles& aa0, double t, double x);
GridField explicit_field(const ActionAngles& aa0, double t, double x0, double dx, std::size_t n);

/// Pi u(x) = -i <(M(u) - x)^{-1} X(u), Y(u)>.
cplx pi_u_resolvent(const SpectralData& sd, double x);

}  // namespace bo
