#include "bo/invariants.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <future>
#include <numbers>
#include <sstream>

#include "bo/detail/cauchy_form.hpp"
#include "bo/errors.hpp"

namespace bo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPoleGuard = 1e-8;
constexpr double kEdgeGuard = 1e-6;
constexpr double kFdFloor = 1e-6;

std::vector<double> flatten(const SolitonParameters& params) {
  std::vector<double> theta;
  theta.reserve(2 * params.size());
  for (const cplx z : params.zs()) {
    theta.push_back(z.real());
    theta.push_back(-z.imag());
  }
  return theta;
}

SolitonParameters unflatten(const std::vector<double>& theta) {
  std::vector<cplx> zs;
  for (std::size_t j = 0; j + 1 < theta.size(); j += 2) zs.emplace_back(theta[j], -theta[j + 1]);
  return SolitonParameters(std::move(zs));
}

Eigen::VectorXd aa_vector(const SolitonParameters& params) {
  const ActionAngles aa = forward_map(params);
  const auto n = static_cast<Eigen::Index>(aa.size());
  Eigen::VectorXd v(2 * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    v(j) = aa.rs[j];
    v(n + j) = aa.alphas[j];
  }
  return v;
}

Eigen::MatrixXd canonical(Eigen::Index n) {
  Eigen::MatrixXd nu = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  nu.topRightCorner(n, n).setIdentity();
  nu.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  return nu;
}

double symplectic_defect(const SolitonParameters& params, double fd_step) {
  const Eigen::MatrixXd j = aa_jacobian(params, fd_step);
  const Eigen::MatrixXd nu = canonical(static_cast<Eigen::Index>(params.size()));
  return (j.transpose() * nu * j - omega_matrix(params)).cwiseAbs().maxCoeff();
}

}  // namespace

Eigen::MatrixXd omega_matrix(const SolitonParameters& params) {
  const auto n = static_cast<Eigen::Index>(params.size());
  Eigen::MatrixXd om = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const cplx zj = params[static_cast<std::size_t>(j)];
      const cplx zk = params[static_cast<std::size_t>(k)];
      const cplx w(-zj.imag() - zk.imag(), zj.real() - zk.real());
      const cplx inv2 = 1.0 / (w * w);
      const double same = -4.0 * kPi * inv2.imag();  // (f_j, f_k) and (g_j, g_k)
      const double mixed = 4.0 * kPi * inv2.real();  // (f_j, g_k)
      om(2 * j + 1, 2 * k + 1) = same;
      om(2 * j, 2 * k) = same;
      om(2 * j + 1, 2 * k) = mixed;
      om(2 * j, 2 * k + 1) = -mixed;
    }
  }
  return om;
}

Eigen::MatrixXd aa_jacobian(const SolitonParameters& params, double fd_step) {
  if (!(fd_step > 0.0)) throw Error(ErrorKind::InvalidParameters, "finite-difference step must be positive");
  const std::vector<double> theta = flatten(params);
  const auto dim = static_cast<Eigen::Index>(theta.size());

  auto column = [&theta, fd_step](std::size_t a) {
    const double h = fd_step * (1.0 + std::abs(theta[a]));
    std::vector<double> plus = theta;
    std::vector<double> minus = theta;
    plus[a] += h;
    minus[a] -= h;
    return Eigen::VectorXd((aa_vector(unflatten(plus)) - aa_vector(unflatten(minus))) / (2.0 * h));
  };

  std::vector<std::future<Eigen::VectorXd>> cols;
  cols.reserve(theta.size());
  for (std::size_t a = 0; a < theta.size(); ++a) cols.push_back(std::async(std::launch::async, column, a));
  Eigen::MatrixXd jac(dim, dim);
  for (Eigen::Index a = 0; a < dim; ++a) jac.col(a) = cols[static_cast<std::size_t>(a)].get();
  return jac;
}

double symplectomorphism_check(const SolitonParameters& params, double fd_step) {
  const double defect = symplectic_defect(params, fd_step);
  if (defect <= kFdFloor) return defect;
  const double refined = symplectic_defect(params, fd_step / 2.0);
  if (!(refined < defect)) {
    std::ostringstream os;
    os << "defect " << defect << " at step " << fd_step << " did not shrink (" << refined << ")";
    throw Error(ErrorKind::FDStepTooLarge, os.str());
  }
  return defect;
}

Eigen::MatrixXd poisson_bracket_table(const SolitonParameters& params, double fd_step) {
  const Eigen::MatrixXd j = aa_jacobian(params, fd_step);
  const Eigen::MatrixXd om = omega_matrix(params);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(om);
  if (!lu.isInvertible()) throw Error(ErrorKind::InvariantViolation, "symplectic matrix is singular");
  const Eigen::MatrixXd poisson = -lu.inverse();
  // r^j = I_j, alpha^j = gamma_j: the Jacobian rows are already the gradients of (I, gamma)
  return j * poisson * j.transpose();
}

double e_n_from_spectrum(const SpectralData& sd, unsigned n) {
  double s = 0.0;
  for (const double lam : sd.lambdas) s += 2.0 * kPi * std::abs(lam) * std::pow(lam, static_cast<int>(n));
  return s;
}

double e_n_from_actions(const ActionAngles& aa, unsigned n) {
  aa.validate();
  double s = 0.0;
  for (const double r : aa.rs) {
    const double lam = r / (2.0 * kPi);
    s += 2.0 * kPi * std::abs(lam) * std::pow(lam, static_cast<int>(n));
  }
  return s;
}

double e1_quadrature(const GridField& field, Boundary boundary) {
  const auto& u = field.values;
  const std::size_t n = u.size();
  if (boundary == Boundary::Decayed && (std::abs(u.front()) >= kEdgeGuard || std::abs(u.back()) >= kEdgeGuard)) {
    std::ostringstream os;
    os << "edge values " << u.front() << ", " << u.back() << " exceed " << kEdgeGuard;
    throw Error(ErrorKind::BoundaryNotDecayed, os.str());
  }

  std::vector<double> in(u);
  std::vector<std::complex<double>> out(n / 2 + 1);
  fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in.data(), reinterpret_cast<fftw_complex*>(out.data()),
                                        FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);

  const double period = static_cast<double>(n) * field.dx;
  double kinetic = 0.0;
  for (std::size_t k = 1; k < out.size(); ++k) {
    const double kappa = 2.0 * kPi * static_cast<double>(k) / period;
    const bool nyquist = (n % 2 == 0) && (k == n / 2);
    kinetic += (nyquist ? 1.0 : 2.0) * kappa * std::norm(out[k]);
  }
  kinetic *= field.dx / static_cast<double>(n);

  double cubic = 0.0;
  for (const double v : u) cubic += v * v * v;
  cubic *= field.dx;
  return 0.5 * kinetic - cubic / 3.0;
}

double mass_quadrature(const GridField& field) {
  double s = 0.0;
  for (const double v : field.values) s += v;
  return s * field.dx;
}

double h_lambda(const SpectralData& sd, double lam) {
  double s = 0.0;
  for (const double lj : sd.lambdas) {
    if (!(std::abs(lam + lj) > kPoleGuard)) {
      std::ostringstream os;
      os << "lambda " << lam << " is at the pole " << -lj;
      throw Error(ErrorKind::PoleProximity, os.str());
    }
    s -= 2.0 * kPi * lj / (lam + lj);
  }
  return s;
}

double h_lambda_from_actions(const ActionAngles& aa, double lam) {
  aa.validate();
  double s = 0.0;
  for (const double r : aa.rs) {
    const double lj = r / (2.0 * kPi);
    if (!(std::abs(lam + lj) > kPoleGuard)) throw Error(ErrorKind::PoleProximity, "lambda at a pole of H");
    s -= 2.0 * kPi * lj / (lam + lj);
  }
  return s;
}

double h_lambda_resolvent(const SolitonParameters& params, double lam) {
  // (L_u + lambda) g = Pi u with g = sum_j w_j / (x - z_j) and Pi u = sum_j i / (x - z_j)
  const LMatrix rep = lax_representation(params);
  const auto n = rep.rows();
  const LMatrix a = rep + static_cast<long double>(lam) * LMatrix::Identity(n, n);
  Eigen::PartialPivLU<LMatrix> lu(a);
  if (!(lu.rcond() > 1e-14L)) throw Error(ErrorKind::PoleProximity, "L_u + lambda is singular on the pure-point subspace");
  const Eigen::Matrix<detail::lcplx, Eigen::Dynamic, 1> rhs =
      Eigen::Matrix<detail::lcplx, Eigen::Dynamic, 1>::Constant(n, detail::lcplx(0.0L, 1.0L));
  const Eigen::Matrix<detail::lcplx, Eigen::Dynamic, 1> w = lu.solve(rhs);
  const auto zs = params.zs();
  return static_cast<double>(detail::simple_pole_form(zs, {w.data(), static_cast<std::size_t>(n)}, zs,
                                                      {rhs.data(), static_cast<std::size_t>(n)})
                                 .real());
}

}  // namespace bo
