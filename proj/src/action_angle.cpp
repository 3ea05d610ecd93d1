#include "bo/action_angle.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bo/errors.hpp"

namespace bo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSingularRcond = 1e-14;

// X_j = sqrt(|I_j| / 2pi), Y_j = sqrt(2pi / |I_j|); returns sum_j w_j * Y_j for (A w = X).
cplx resolvent_pairing(const Eigen::MatrixXcd& a, std::span<const double> abs_lambda) {
  const auto n = static_cast<Eigen::Index>(abs_lambda.size());
  Eigen::VectorXcd x(n);
  for (Eigen::Index j = 0; j < n; ++j) x(j) = std::sqrt(abs_lambda[j]);
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  if (!(lu.rcond() > kSingularRcond)) throw Error(ErrorKind::SingularResolvent, "resolvent matrix is singular");
  const Eigen::VectorXcd w = lu.solve(x);
  cplx s = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) s += w(j) / std::sqrt(abs_lambda[j]);
  if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
    throw Error(ErrorKind::SingularResolvent, "non-finite resolvent value");
  return s;
}

std::vector<double> abs_lambdas(const ActionAngles& aa) {
  std::vector<double> out;
  out.reserve(aa.size());
  for (const double r : aa.rs) out.push_back(std::abs(r) / (2.0 * kPi));
  return out;
}

}  // namespace

void ActionAngles::validate() const {
  if (rs.empty() || rs.size() != alphas.size())
    throw Error(ErrorKind::OrderingViolation, "actions and angles must be nonempty and of equal length");
  for (std::size_t j = 0; j < rs.size(); ++j) {
    if (!std::isfinite(rs[j]) || !std::isfinite(alphas[j]))
      throw Error(ErrorKind::OrderingViolation, "non-finite action-angle coordinate");
    if (!(rs[j] < 0.0)) throw Error(ErrorKind::OrderingViolation, "actions must be negative");
    if (j + 1 < rs.size() && !(rs[j] < rs[j + 1]))
      throw Error(ErrorKind::OrderingViolation, "actions must be strictly increasing");
  }
}

ActionAngles action_angles(const SpectralData& sd) {
  ActionAngles aa;
  for (const double lam : sd.lambdas) aa.rs.push_back(2.0 * kPi * lam);
  aa.alphas = sd.gammas;
  return aa;
}

ActionAngles forward_map(const SolitonParameters& params) { return action_angles(spectral_decompose(params)); }

Eigen::MatrixXcd m_from_aa(const ActionAngles& aa) {
  aa.validate();
  const auto n = static_cast<Eigen::Index>(aa.size());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double ik = aa.rs[k];
      const double ij = aa.rs[j];
      if (j == k)
        m(k, j) = cplx(aa.alphas[j], kPi / ij);
      else
        m(k, j) = cplx(0.0, 2.0 * kPi / (ik - ij)) * std::sqrt(ik / ij);  // ik/ij > 0
    }
  }
  return m;
}

std::vector<cplx> m_eigenvalues(const Eigen::MatrixXcd& m) { return m_eigenvalues(LMatrix(m.cast<std::complex<long double>>())); }

std::vector<cplx> m_eigenvalues(const LMatrix& m) {
  Eigen::ComplexEigenSolver<LMatrix> solver(m, false);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::RootsNotInLowerHalfPlane, "eigensolver failed");
  std::vector<cplx> out;
  for (Eigen::Index j = 0; j < solver.eigenvalues().size(); ++j) {
    const auto z = solver.eigenvalues()(j);
    out.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
  }
  return out;
}

SolitonParameters inverse_map(const ActionAngles& aa) {
  std::vector<cplx> zs = m_eigenvalues(m_from_aa(aa));
  for (const cplx z : zs) {
    if (!(z.imag() < 0.0)) {
      std::ostringstream os;
      os << "eigenvalue " << z << " of M is not in the lower half-plane";
      throw Error(ErrorKind::RootsNotInLowerHalfPlane, os.str());
    }
  }
  return SolitonParameters(std::move(zs));
}

ActionAngles evolve_aa(const ActionAngles& aa, double t) {
  aa.validate();
  ActionAngles out = aa;
  for (std::size_t k = 0; k < aa.size(); ++k) out.alphas[k] = aa.alphas[k] - aa.rs[k] * t / kPi;
  return out;
}

double explicit_solution(const ActionAngles& aa0, double t, double x) {
  Eigen::MatrixXcd a = m_from_aa(aa0);
  for (Eigen::Index j = 0; j < a.rows(); ++j) a(j, j) -= x + t * aa0.rs[j] / kPi;
  return 2.0 * resolvent_pairing(a, abs_lambdas(aa0)).imag();
}

GridField explicit_field(const ActionAngles& aa0, double t, double x0, double dx, std::size_t n) {
  const Eigen::MatrixXcd m0 = m_from_aa(aa0);
  const auto al = abs_lambdas(aa0);
  std::vector<double> values(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double x = x0 + static_cast<double>(k) * dx;
    Eigen::MatrixXcd a = m0;
    for (Eigen::Index j = 0; j < a.rows(); ++j) a(j, j) -= x + t * aa0.rs[j] / kPi;
    values[k] = 2.0 * resolvent_pairing(a, al).imag();
  }
  return GridField(x0, dx, std::move(values));
}

cplx pi_u_resolvent(const SpectralData& sd, double x) {
  Eigen::MatrixXcd a = sd.m_matrix;
  a.diagonal().array() -= x;
  std::vector<double> al;
  for (const double lam : sd.lambdas) al.push_back(std::abs(lam));
  return cplx(0.0, -1.0) * resolvent_pairing(a, al);
}

}  // namespace bo
