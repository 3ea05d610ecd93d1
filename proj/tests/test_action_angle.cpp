#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <numbers>
#include <random>

#include "bo/action_angle.hpp"
#include "bo/errors.hpp"
#include "bo/validation.hpp"
#include "oracles.hpp"

using bo::ActionAngles;
using bo::cplx;
using bo::SolitonParameters;

namespace {

constexpr cplx I{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

template <class F>
bo::ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const bo::Error& e) {
    return e.kind();
  }
  FAIL("no bo::Error thrown");
  return bo::ErrorKind::InvariantViolation;
}

double sup_gap(const bo::GridField& a, const bo::GridField& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a.values[k] - b.values[k]));
  return d;
}

}  // namespace

TEST_CASE("ActionAngles validation") {
  CHECK(kind_of([] { ActionAngles{{-1.0, -2.0}, {0.0, 0.0}}.validate(); }) == bo::ErrorKind::OrderingViolation);
  CHECK(kind_of([] { ActionAngles{{-1.0, 0.0}, {0.0, 0.0}}.validate(); }) == bo::ErrorKind::OrderingViolation);
  CHECK(kind_of([] { ActionAngles{{-1.0}, {0.0, 0.0}}.validate(); }) == bo::ErrorKind::OrderingViolation);
  CHECK(kind_of([] { ActionAngles{{}, {}}.validate(); }) == bo::ErrorKind::OrderingViolation);
  CHECK(kind_of([] { bo::m_from_aa(ActionAngles{{-1.0, -1.0}, {0.0, 0.0}}); }) == bo::ErrorKind::OrderingViolation);
}

TEST_CASE("m_from_aa examples") {
  CHECK(std::abs(bo::m_from_aa(ActionAngles{{-kPi}, {0.0}})(0, 0) + I) < 1e-15);
  CHECK(std::abs(bo::m_from_aa(ActionAngles{{-kPi}, {3.0}})(0, 0) - (3.0 - I)) < 1e-15);

  std::mt19937_64 rng(41);
  for (std::size_t n = 1; n <= 8; ++n) {
    const ActionAngles aa = bo::validation::random_action_angles(rng, n);
    const Eigen::MatrixXcd m = bo::m_from_aa(aa);
    const Eigen::MatrixXcd im = (m - m.adjoint()) / cplx(0.0, 2.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(im, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().maxCoeff() < 1e-12);
  }
}

TEST_CASE("inverse_map examples") {
  const SolitonParameters p = bo::inverse_map(ActionAngles{{-kPi}, {0.0}});
  CHECK(std::abs(p[0] + I) < 1e-15);
  for (const double c : {0.5, 2.0}) {
    for (const double x0 : {-1.5, 4.0}) {
      const SolitonParameters q = bo::inverse_map(ActionAngles{{-c * kPi}, {x0}});
      CHECK(std::abs(q[0] - cplx(x0, -1.0 / c)) < 1e-14);
    }
  }
}

TEST_CASE("action-angle map and its inverse compose to the identity") {
  std::mt19937_64 rng(42);
  for (std::size_t n = 1; n <= 8; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      const SolitonParameters p = bo::validation::random_params(rng, n);
      const SolitonParameters q = bo::inverse_map(bo::forward_map(p));
      CHECK(bo::validation::multiset_distance(p.zs(), q.zs()) < 1e-7);

      const ActionAngles aa = bo::validation::random_action_angles(rng, n);
      const bo::SpectralData sd = bo::spectral_decompose(bo::inverse_map(aa));
      const ActionAngles back = bo::action_angles(sd);
      for (std::size_t j = 0; j < n; ++j) {
        CHECK(std::abs(back.rs[j] - aa.rs[j]) < 1e-7);
        CHECK(std::abs(back.alphas[j] - aa.alphas[j]) < 1e-7);
      }
    }
  }
}

TEST_CASE("characteristic polynomial of M is Q") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> xs(-8.0, 8.0);
  for (std::size_t n = 1; n <= 6; ++n) {
    const ActionAngles aa = bo::validation::random_action_angles(rng, n);
    const Eigen::MatrixXcd m = bo::m_from_aa(aa);
    const SolitonParameters p = bo::inverse_map(aa);
    for (int k = 0; k < 10; ++k) {
      const double x = xs(rng);
      const cplx det = (x * Eigen::MatrixXcd::Identity(m.rows(), m.cols()) - m).determinant();
      cplx q = 1.0;
      for (const cplx z : p.zs()) q *= x - z;
      CHECK(std::abs(det - q) < 1e-9 * std::abs(q));
    }
  }
}

TEST_CASE("evolve_aa") {
  std::mt19937_64 rng(44);
  const ActionAngles aa = bo::validation::random_action_angles(rng, 4);
  const ActionAngles same = bo::evolve_aa(aa, 0.0);
  CHECK(same.rs == aa.rs);
  CHECK(same.alphas == aa.alphas);

  CHECK(bo::evolve_aa(ActionAngles{{-kPi}, {0.0}}, 5.0).alphas[0] == doctest::Approx(5.0).epsilon(1e-15));

  for (const double s : {-1.5, 0.25, 3.0}) {
    for (const double t : {-0.75, 2.0}) {
      const ActionAngles a = bo::evolve_aa(bo::evolve_aa(aa, s), t), b = bo::evolve_aa(aa, s + t);
      CHECK(a.rs == aa.rs);
      for (std::size_t j = 0; j < 4; ++j) CHECK(std::abs(a.alphas[j] - b.alphas[j]) < 1e-12);
    }
  }
}

TEST_CASE("explicit_solution: one-soliton travels at unit speed") {
  const ActionAngles aa{{-kPi}, {0.0}};
  for (const double t : {0.0, 0.7, 5.0}) {
    for (const double x : {-3.0, 0.0, 2.5, 5.0}) {
      const double expect = 2.0 / ((x - t) * (x - t) + 1.0);
      CHECK(std::abs(bo::explicit_solution(aa, t, x) - expect) < 1e-14);
    }
  }
}

TEST_CASE("explicit_solution agrees with the profile of the evolved parameters") {
  std::mt19937_64 rng(45);
  for (std::size_t n = 1; n <= 6; ++n) {
    const ActionAngles aa = bo::validation::random_action_angles(rng, n);
    const bo::GridField at0 = bo::explicit_field(aa, 0.0, -20.0, 0.02, 2001);
    CHECK(sup_gap(at0, bo::profile(bo::inverse_map(aa), -20.0, 0.02, 2001)) < 1e-10);
    for (const double t : {0.1, 1.0, 10.0}) {
      const bo::GridField a = bo::explicit_field(aa, t, -50.0, 0.05, 2001);
      const bo::GridField b = bo::profile(bo::inverse_map(bo::evolve_aa(aa, t)), -50.0, 0.05, 2001);
      CHECK(sup_gap(a, b) < 1e-9);
    }
  }
}

TEST_CASE("actions of the evolved profile stay at r / 2 pi") {
  std::mt19937_64 rng(46);
  for (std::size_t n = 1; n <= 5; ++n) {
    const ActionAngles aa = bo::validation::random_action_angles(rng, n);
    for (const double t : {0.1, 1.0, 10.0}) {
      const bo::SpectralData sd = bo::spectral_decompose(bo::inverse_map(bo::evolve_aa(aa, t)));
      for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(sd.lambdas[j] - aa.rs[j] / (2.0 * kPi)) < 1e-8);
    }
  }
}

TEST_CASE("pi_u_resolvent") {
  const bo::SpectralData s1 = bo::spectral_decompose(SolitonParameters(std::vector<cplx>{-I}));
  for (const double x : {-2.0, 0.0, 0.5, 7.0}) CHECK(std::abs(bo::pi_u_resolvent(s1, x) - I / (x + I)) < 1e-14);

  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> xs(-15.0, 15.0);
  for (std::size_t n = 1; n <= 8; ++n) {
    const SolitonParameters p = bo::validation::random_params(rng, n);
    const bo::SpectralData sd = bo::spectral_decompose(p);
    for (int k = 0; k < 50; ++k) {
      const double x = xs(rng);
      cplx direct = 0.0;
      for (const cplx z : p.zs()) direct += I / (x - z);
      CHECK(std::abs(bo::pi_u_resolvent(sd, x) - direct) < 1e-9);
    }
    double bound = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) bound += std::sqrt(std::abs(sd.lambdas[k]) / std::abs(sd.lambdas[j]));
    for (const double x : {-1e6, 1e6}) CHECK(std::abs(bo::pi_u_resolvent(sd, x)) <= 1.1 * bound / std::abs(x));
  }
}
