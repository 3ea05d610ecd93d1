#include "bo/lax_spectral.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "bo/detail/cauchy_form.hpp"
#include "bo/errors.hpp"

namespace bo {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kGramCondLimit = 1e12;
constexpr double kSimplicityTol = 1e-10;
constexpr double kCancellationTol = 1e-8;

void require_pure_point(const SolitonParameters& params, const PoleResidueForm& f) {
  for (const auto& t : f.terms()) {
    const auto zs = params.zs();
    if (t.order != 1 || std::find(zs.begin(), zs.end(), t.pole) == zs.end())
      throw Error(ErrorKind::InvariantViolation, "function is not in the pure-point subspace");
  }
  if (!f.in_l2()) throw Error(ErrorKind::NotSquareIntegrable, "pure-point functions have zero constant");
}

}  // namespace

std::vector<PoleResidueForm> hpp_basis(const SolitonParameters& params) {
  const std::size_t n = params.size();
  std::vector<PoleResidueForm> basis;
  basis.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<cplx> numerator(k + 1, 0.0);
    numerator.front() = 1.0;
    basis.push_back(pf_decompose(numerator, params.zs()));
  }
  return basis;
}

std::vector<PoleResidueForm> cauchy_basis(const SolitonParameters& params) {
  std::vector<PoleResidueForm> basis;
  basis.reserve(params.size());
  for (const cplx z : params.zs())
    basis.push_back(PoleResidueForm::term(z, std::sqrt(-z.imag() / std::numbers::pi)));
  return basis;
}

PoleResidueForm lax_apply(const SolitonParameters& params, const PoleResidueForm& f) {
  require_pure_point(params, f);
  const PoleResidueForm df = -kI * derivative(f);
  const PoleResidueForm tf = szego_project(multiply(u_rational(params), f));
  const PoleResidueForm r = df - tf;

  // double poles of D f and T_u f cancel on the pure-point subspace
  double residual = 0.0;
  for (const auto& t : r.terms())
    if (t.order >= 2) residual = std::max(residual, std::abs(t.coeff));
  const double scale = std::max(df.magnitude(), tf.magnitude());
  if (residual > kCancellationTol * scale) {
    std::ostringstream os;
    os << "order-2 residual " << residual << " relative to " << scale;
    throw Error(ErrorKind::InvariantViolation, os.str());
  }
  return r.without_order(2);
}

PoleResidueForm g_apply(const SolitonParameters& params, const PoleResidueForm& f) {
  require_pure_point(params, f);
  const PoleResidueForm xf = multiply_by_x(f);
  const cplx boundary = kI / (2.0 * std::numbers::pi) * inner_product(f, one_minus_theta(params));
  const double scale = std::max({std::abs(xf.constant()), std::abs(boundary), f.magnitude()});
  if (std::abs(xf.constant() - boundary) > kCancellationTol * scale) {
    std::ostringstream os;
    os << "constant " << xf.constant() << " does not match boundary value " << boundary;
    throw Error(ErrorKind::InvariantViolation, os.str());
  }
  return xf.with_constant(0.0);
}

HppMatrices hpp_matrices(const SolitonParameters& params, std::span<const PoleResidueForm> basis) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  HppMatrices out{Eigen::MatrixXcd(n, n), Eigen::MatrixXcd(n, n)};
  std::vector<PoleResidueForm> lax_images;
  lax_images.reserve(basis.size());
  for (const auto& e : basis) lax_images.push_back(lax_apply(params, e));
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      out.gram(j, k) = inner_product(basis[k], basis[j]);
      out.lax(j, k) = inner_product(lax_images[k], basis[j]);
    }
  }
  return out;
}

namespace {

double gram_condition(const Eigen::MatrixXcd& gram) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram, Eigen::EigenvaluesOnly);
  const double gmin = eig.eigenvalues().minCoeff();
  const double gmax = eig.eigenvalues().maxCoeff();
  const double cond = gmin > 0.0 ? gmax / gmin : std::numeric_limits<double>::infinity();
  if (!(cond <= kGramCondLimit)) {
    std::ostringstream os;
    os << "Gram condition number " << cond;
    throw Error(ErrorKind::GramIllConditioned, os.str());
  }
  return cond;
}

void check_eigenvalues(const std::vector<double>& lambdas) {
  for (const double lam : lambdas) {
    if (!(lam < 0.0)) {
      std::ostringstream os;
      os << "eigenvalue " << lam << " is not negative";
      throw Error(ErrorKind::PositivityFailure, os.str());
    }
  }
  for (std::size_t j = 0; j + 1 < lambdas.size(); ++j) {
    if (!(lambdas[j + 1] - lambdas[j] > kSimplicityTol * std::abs(lambdas[0]))) {
      std::ostringstream os;
      os << "eigenvalues " << lambdas[j] << " and " << lambdas[j + 1] << " are not separated";
      throw Error(ErrorKind::DegenerateSpectrum, os.str());
    }
  }
}

// Eigenfunctions from basis coefficients (one column per eigenvalue), then angles and M.
SpectralData assemble(const SolitonParameters& params, std::span<const PoleResidueForm> basis,
                      std::vector<double> lambdas, const Eigen::MatrixXcd& coeffs, double cond) {
  const std::size_t n = params.size();
  check_eigenvalues(lambdas);
  SpectralData sd{params, std::move(lambdas), {}, {}, Eigen::MatrixXcd(n, n), cond, LMatrix()};

  const PoleResidueForm hardy_u = pi_u(params);
  for (std::size_t j = 0; j < n; ++j) {
    PoleResidueForm phi;
    for (std::size_t k = 0; k < n; ++k)
      phi += coeffs(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) * basis[k];
    phi *= 1.0 / std::sqrt(inner_product(phi, phi).real());

    // <u, phi> = <Pi u, phi> because conj(Pi u) * conj(phi) integrates to zero
    const cplx overlap = inner_product(hardy_u, phi);
    const double expected = std::sqrt(2.0 * std::numbers::pi * std::abs(sd.lambdas[j]));
    if (!(std::abs(overlap) >= 1e-10 * expected)) {
      std::ostringstream os;
      os << "eigenfunction " << j << " is orthogonal to u";
      throw Error(ErrorKind::PositivityFailure, os.str());
    }
    phi *= overlap / std::abs(overlap);
    sd.eigenfunctions.push_back(std::move(phi));
  }

  std::vector<PoleResidueForm> g_images;
  g_images.reserve(n);
  for (const auto& phi : sd.eigenfunctions) g_images.push_back(g_apply(params, phi));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k)
      sd.m_matrix(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) =
          inner_product(g_images[j], sd.eigenfunctions[k]);
    sd.gammas.push_back(sd.m_matrix(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)).real());
  }
  sd.m_wide = sd.m_matrix.cast<std::complex<long double>>();
  return sd;
}

}  // namespace

namespace {

using detail::lcplx;
using detail::qcplx;
using boost::multiprecision::float128;
using QMatrix = Eigen::Matrix<qcplx, Eigen::Dynamic, Eigen::Dynamic>;

qcplx widen(cplx z) { return {float128(z.real()), float128(z.imag())}; }
cplx narrow(qcplx z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }
lcplx narrow_l(qcplx z) { return {static_cast<long double>(z.real()), static_cast<long double>(z.imag())}; }

// L_u, G and the Gram matrix on the basis f_j = 1/(x - z_j):
//   L f_j = sum_{k != j} -i/(z_k - z_j) f_k + (sum_{k != j} i/(z_k - z_j) - sum_k i/(conj z_k - z_j)) f_j,
//   G f_j = z_j f_j,  <f_k, f_j> = 2 pi i / (conj z_j - z_k).
// Kept in binary128: eigenvectors in this basis lose digits in proportion to the basis conditioning.
struct PurePointKernel {
  QMatrix rep;
  QMatrix gram;
};

PurePointKernel pure_point_kernel(std::span<const cplx> zs_in) {
  const auto n = static_cast<Eigen::Index>(zs_in.size());
  std::vector<qcplx> zs;
  for (const cplx z : zs_in) zs.push_back(widen(z));
  const qcplx i(float128(0), float128(1));
  const qcplx two_pi_i(float128(0), 2 * boost::math::constants::pi<float128>());
  PurePointKernel k{QMatrix(n, n), QMatrix(n, n)};
  for (Eigen::Index j = 0; j < n; ++j) {
    qcplx diag(float128(0));
    for (Eigen::Index m = 0; m < n; ++m) {
      k.gram(j, m) = two_pi_i / (std::conj(zs[j]) - zs[m]);
      diag -= i / (std::conj(zs[m]) - zs[j]);
      if (m == j) continue;
      k.rep(m, j) = -i / (zs[m] - zs[j]);
      diag += i / (zs[m] - zs[j]);
    }
    k.rep(j, j) = diag;
  }
  return k;
}

// The closed form must agree with the partial-fraction route of lax_apply.
void cross_check(const SolitonParameters& params, const PurePointKernel& k) {
  const auto zs = params.zs();
  for (std::size_t j = 0; j < zs.size(); ++j) {
    const PoleResidueForm image = lax_apply(params, PoleResidueForm::term(zs[j], 1.0));
    double scale = 0.0, diff = 0.0;
    for (std::size_t m = 0; m < zs.size(); ++m) {
      const cplx closed = narrow(k.rep(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(j)));
      scale = std::max(scale, std::abs(closed));
      diff = std::max(diff, std::abs(image.coeff(zs[m]) - closed));
    }
    if (diff > kCancellationTol * scale) {
      std::ostringstream os;
      os << "Lax matrix column " << j << " deviates from the residue computation by " << diff;
      throw Error(ErrorKind::InvariantViolation, os.str());
    }
  }
}

}  // namespace

LMatrix lax_representation(const SolitonParameters& params) {
  const PurePointKernel kernel = pure_point_kernel(params.zs());
  cross_check(params, kernel);
  LMatrix out(kernel.rep.rows(), kernel.rep.cols());
  for (Eigen::Index j = 0; j < out.cols(); ++j)
    for (Eigen::Index m = 0; m < out.rows(); ++m) out(m, j) = narrow_l(kernel.rep(m, j));
  return out;
}

SpectralData spectral_decompose(const SolitonParameters& params) {
  const auto zs = params.zs();
  const std::size_t n = zs.size();
  const auto ni = static_cast<Eigen::Index>(n);
  const PurePointKernel kernel = pure_point_kernel(zs);
  cross_check(params, kernel);

  // condition number of the unit-norm Cauchy basis
  Eigen::MatrixXcd unit_gram(ni, ni);
  for (Eigen::Index j = 0; j < ni; ++j)
    for (Eigen::Index m = 0; m < ni; ++m)
      unit_gram(j, m) = narrow(kernel.gram(j, m)) * std::sqrt(zs[static_cast<std::size_t>(j)].imag() *
                                                              zs[static_cast<std::size_t>(m)].imag()) /
                        std::numbers::pi;
  const double cond = gram_condition((unit_gram + unit_gram.adjoint()) / 2.0);

  Eigen::ComplexEigenSolver<QMatrix> solver(kernel.rep, true);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::DegenerateSpectrum, "eigensolver failed");
  const auto& ev = solver.eigenvalues();
  std::vector<Eigen::Index> order(n);
  for (Eigen::Index j = 0; j < ni; ++j) order[static_cast<std::size_t>(j)] = j;
  std::sort(order.begin(), order.end(), [&ev](Eigen::Index a, Eigen::Index b) { return ev(a).real() < ev(b).real(); });

  std::vector<double> lambdas;
  for (const Eigen::Index src : order) lambdas.push_back(static_cast<double>(ev(src).real()));
  check_eigenvalues(lambdas);

  // eigenvectors: unit norm, <Pi u, phi_j> > 0; Pi u = sum_j i f_j
  const std::vector<qcplx> hardy_u(n, qcplx(float128(0), float128(1)));
  std::vector<std::vector<qcplx>> coeffs(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto col = solver.eigenvectors().col(order[j]);
    std::vector<qcplx> c(col.data(), col.data() + col.size());
    const float128 norm = sqrt(detail::simple_pole_form(zs, c, zs, c).real());
    for (qcplx& v : c) v /= norm;
    const qcplx overlap = detail::simple_pole_form(zs, hardy_u, zs, c);
    const double expected = std::sqrt(2.0 * std::numbers::pi * std::abs(lambdas[j]));
    if (!(static_cast<double>(abs(overlap)) >= 1e-10 * expected)) {
      std::ostringstream os;
      os << "eigenfunction " << j << " is orthogonal to u";
      throw Error(ErrorKind::PositivityFailure, os.str());
    }
    const qcplx phase = overlap / abs(overlap);
    for (qcplx& v : c) v *= phase;
    coeffs[j] = std::move(c);
  }

  SpectralData sd{params, std::move(lambdas), {}, {}, Eigen::MatrixXcd(ni, ni), cond, LMatrix(ni, ni)};
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<PoleTerm> terms;
    for (std::size_t k = 0; k < n; ++k) terms.push_back({zs[k], 1, narrow(coeffs[j][k])});
    sd.eigenfunctions.emplace_back(std::move(terms));
    g_apply(params, sd.eigenfunctions.back());  // throws unless G phi_j stays in the pure-point subspace
    for (std::size_t k = 0; k < n; ++k) {  // <G phi_j, phi_k>, G f_m = z_m f_m
      const auto kk = static_cast<Eigen::Index>(k);
      const auto jj = static_cast<Eigen::Index>(j);
      const qcplx m = detail::simple_pole_form(zs, coeffs[j], zs, coeffs[k], true);
      sd.m_wide(kk, jj) = narrow_l(m);
      sd.m_matrix(kk, jj) = narrow(m);
    }
    sd.gammas.push_back(sd.m_matrix(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)).real());
  }
  return sd;
}

SpectralData spectral_decompose(const SolitonParameters& params, std::span<const PoleResidueForm> basis) {
  if (basis.size() != params.size()) throw Error(ErrorKind::InvalidParameters, "basis size differs from soliton count");

  HppMatrices mats = hpp_matrices(params, basis);
  const Eigen::MatrixXcd gram = (mats.gram + mats.gram.adjoint()) / 2.0;
  const Eigen::MatrixXcd lax = (mats.lax + mats.lax.adjoint()) / 2.0;
  const double cond = gram_condition(gram);

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> solver(lax, gram,
                                                                    Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
  if (solver.info() != Eigen::Success) throw Error(ErrorKind::DegenerateSpectrum, "generalized eigensolver failed");
  const Eigen::VectorXd& evals = solver.eigenvalues();
  return assemble(params, basis, std::vector<double>(evals.data(), evals.data() + evals.size()), solver.eigenvectors(),
                  cond);
}

Eigen::MatrixXcd m_formula(std::span<const double> lambdas, std::span<const double> gammas) {
  const auto n = static_cast<Eigen::Index>(lambdas.size());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double lk = lambdas[k];
      const double lj = lambdas[j];
      if (j == k)
        m(k, j) = cplx(gammas[j], -1.0 / (2.0 * std::abs(lj)));
      else
        m(k, j) = kI / (lk - lj) * std::sqrt(std::abs(lk) / std::abs(lj));
    }
  }
  return m;
}

double verify_m_matrix(const SpectralData& sd) {
  return (sd.m_matrix - m_formula(sd.lambdas, sd.gammas)).cwiseAbs().maxCoeff();
}

double wu_defect(const SpectralData& sd) {
  const PoleResidueForm u = u_rational(sd.params);
  double worst = 0.0;
  for (std::size_t j = 0; j < sd.size(); ++j) {
    const auto& phi = sd.eigenfunctions[j];
    const double norm2 = inner_product(phi, phi).real();
    const double lhs = std::norm(inner_product(u, phi));
    const double scale = 2.0 * std::numbers::pi * std::abs(sd.lambdas[j]) * norm2;
    worst = std::max(worst, std::abs(lhs - scale) / scale);
  }
  return worst;
}

}  // namespace bo
