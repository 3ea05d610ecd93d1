// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <Eigen/Eigenvalues>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>

#include "bo/action_angle.hpp"
#include "bo/invariants.hpp"
#include "bo/lax_spectral.hpp"
#include "bo/pde_reference.hpp"
#include "bo/validation.hpp"

using bo::ActionAngles;
using bo::cplx;
using bo::SolitonParameters;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%s  %2d  %-34s  %s  [%.2f s]\n", o.pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), secs);
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

// Instances shared by criteria 2-4.
struct RoundtripData {
  double inv_fwd = 0.0, fwd_inv = 0.0, wu = 0.0, mform = 0.0, mspec = 0.0, im_m = -1.0;
  double seconds = 0.0;
};

RoundtripData roundtrip_data() {
  RoundtripData d;
  std::mt19937_64 rng(20240601);
  const auto start = std::chrono::steady_clock::now();
  std::vector<bo::SpectralData> decomposed;
  for (std::size_t n = 2; n <= 8; ++n) {
    for (int trial = 0; trial < 100; ++trial) {
      const SolitonParameters p = bo::validation::random_params(rng, n);
      bo::SpectralData sd = bo::spectral_decompose(p);
      const SolitonParameters q = bo::inverse_map(bo::action_angles(sd));
      d.inv_fwd = std::max(d.inv_fwd, bo::validation::multiset_distance(p.zs(), q.zs()));
      decomposed.push_back(std::move(sd));

      const ActionAngles aa = bo::validation::random_action_angles(rng, n);
      bo::SpectralData back = bo::spectral_decompose(bo::inverse_map(aa));
      const ActionAngles b = bo::action_angles(back);
      for (std::size_t j = 0; j < n; ++j)
        d.fwd_inv = std::max({d.fwd_inv, std::abs(b.rs[j] - aa.rs[j]), std::abs(b.alphas[j] - aa.alphas[j])});
      decomposed.push_back(std::move(back));
    }
  }
  d.seconds = seconds_since(start);

  for (const auto& sd : decomposed) {
    d.wu = std::max(d.wu, bo::wu_defect(sd));
    d.mform = std::max(d.mform, bo::verify_m_matrix(sd));
    d.mspec = std::max(d.mspec, bo::validation::multiset_distance(bo::m_eigenvalues(sd.m_wide), sd.params.zs()));
    const Eigen::MatrixXcd im = (sd.m_matrix - sd.m_matrix.adjoint()) / cplx(0.0, 2.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(im, Eigen::EigenvaluesOnly);
    d.im_m = std::max(d.im_m, es.eigenvalues().maxCoeff());
  }
  return d;
}

// Criterion 6 and 7 share the PDE runs.
struct PdeData {
  double l2_explicit = 0.0;
  double self_ratio = 0.0;
  std::vector<double> explicit_errors;
  double e1_drift = 0.0, mass_drift = 0.0;
  double seconds = 0.0;
};

PdeData pde_data() {
  PdeData d;
  const auto start = std::chrono::steady_clock::now();
  const SolitonParameters p(std::vector<cplx>{{-10.0, -1.0}, {10.0, -0.5}});  // c = 1 at -10, c = 2 at 10
  const ActionAngles aa = bo::forward_map(p);
  std::vector<bo::GridField> finals;
  for (const double dt : {4e-3, 2e-3, 1e-3}) {
    bo::pde::PdeConfig cfg;
    cfg.dt = dt;
    cfg.t_end = 1.0;
    const auto snaps = bo::pde::run(p, cfg);
    const bo::GridField ref = bo::explicit_field(aa, 1.0, cfg.x(0), cfg.dx(), cfg.modes);
    d.explicit_errors.push_back(bo::pde::compare(snaps.back().field, ref).l2_rel);
    finals.push_back(snaps.back().field);
    if (dt == 1e-3) {
      d.l2_explicit = d.explicit_errors.back();
      const double m0 = bo::mass_quadrature(snaps.front().field);
      const double e0 = bo::e1_quadrature(snaps.front().field, bo::Boundary::Periodic);
      for (const auto& s : snaps) {
        d.mass_drift = std::max(d.mass_drift, std::abs(bo::mass_quadrature(s.field) - m0) / std::abs(m0));
        d.e1_drift = std::max(d.e1_drift,
                              std::abs(bo::e1_quadrature(s.field, bo::Boundary::Periodic) - e0) / std::abs(e0));
      }
    }
  }
  const double coarse = bo::pde::compare(finals[0], finals[1]).l2_rel;
  const double fine = bo::pde::compare(finals[1], finals[2]).l2_rel;
  d.self_ratio = coarse / fine;
  d.seconds = seconds_since(start);
  return d;
}

}  // namespace

int main() {
  criterion(1, "N=1 anchor chain", [] {
    const auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (const double c : {1.0, 0.5, 2.0, 3.25}) {
      for (const double x0 : {0.0, -1.75, 4.5}) {
        const bo::SpectralData sd = bo::spectral_decompose(SolitonParameters(std::vector<cplx>{{x0, -1.0 / c}}));
        const ActionAngles aa = bo::action_angles(sd);
        worst = std::max({worst, std::abs(sd.lambdas[0] + c / 2.0), std::abs(sd.gammas[0] - x0),
                          std::abs(aa.rs[0] + c * kPi), std::abs(sd.m_matrix(0, 0) - cplx(x0, -1.0 / c)),
                          std::abs(bo::e_n_from_spectrum(sd, 1) + c * c * kPi / 2.0),
                          std::abs(bo::e_n_from_actions(aa, 1) + c * c * kPi / 2.0)});
      }
    }
    const double secs = seconds_since(start);
    return Outcome{worst < 1e-10 && secs < 1.0, "max err " + sci(worst) + ", " + sci(secs) + " s (limits 1e-10, 1 s)"};
  });

  const RoundtripData rt = roundtrip_data();

  criterion(2, "roundtrip, N = 2..8", [&] {
    const bool ok = rt.inv_fwd < 1e-7 && rt.fwd_inv < 1e-7 && rt.seconds < 30.0;
    return Outcome{ok, "inv(fwd) " + sci(rt.inv_fwd) + ", fwd(inv) " + sci(rt.fwd_inv) + ", " + sci(rt.seconds) +
                           " s (limits 1e-7, 30 s)"};
  });

  criterion(3, "Wu identity", [&] {
    return Outcome{rt.wu < 1e-9, "max relative defect " + sci(rt.wu) + " (limit 1e-9)"};
  });

  criterion(4, "M-matrix dual construction", [&] {
    const bool ok = rt.mform < 1e-8 && rt.mspec < 1e-8 && rt.im_m < 1e-9;
    return Outcome{ok, "|M - formula| " + sci(rt.mform) + ", spec(M) " + sci(rt.mspec) + ", max eig Im M " +
                           sci(rt.im_m) + " (limits 1e-8, 1e-8, 1e-9)"};
  });

  criterion(5, "two-path evolution, N <= 6", [] {
    std::mt19937_64 rng(5150);
    double worst = 0.0;
    for (std::size_t n = 1; n <= 6; ++n) {
      for (int trial = 0; trial < 5; ++trial) {
        const ActionAngles aa = bo::validation::random_action_angles(rng, n);
        for (const double t : {0.1, 1.0, 10.0}) {
          const bo::GridField a = bo::explicit_field(aa, t, -50.0, 0.05, 2001);
          const bo::GridField b = bo::profile(bo::inverse_map(bo::evolve_aa(aa, t)), -50.0, 0.05, 2001);
          for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a.values[k] - b.values[k]));
        }
      }
    }
    return Outcome{worst < 1e-9, "sup difference " + sci(worst) + " (limit 1e-9)"};
  });

  const PdeData pde = pde_data();

  criterion(6, "PDE cross-validation", [&] {
    const double order = std::log2(pde.self_ratio);
    const bool ok = pde.l2_explicit < 1e-3 && order > 3.5 && order < 4.5 && pde.seconds < 300.0;
    return Outcome{ok, "L2 rel vs explicit " + sci(pde.l2_explicit) + " (limit 1e-3), dt-halving ratio " +
                           sci(pde.self_ratio) + " => order " + sci(order) + ", errors vs explicit " +
                           sci(pde.explicit_errors[0]) + "/" + sci(pde.explicit_errors[1]) + "/" +
                           sci(pde.explicit_errors[2]) + ", " + sci(pde.seconds) + " s (limit 300 s)"};
  });

  criterion(7, "conservation", [&] {
    std::mt19937_64 rng(7007);
    std::uniform_real_distribution<double> lams(0.1, 5.0);
    double drift = 0.0;
    for (std::size_t n = 1; n <= 6; ++n) {
      const ActionAngles aa = bo::validation::random_action_angles(rng, n);
      std::vector<double> lam(5);
      for (double& l : lam) l = lams(rng);
      for (const double t : {0.1, 1.0, 10.0, -3.0}) {
        const ActionAngles at = bo::evolve_aa(aa, t);
        for (unsigned k = 0; k <= 3; ++k) {
          const double e = bo::e_n_from_actions(aa, k);
          drift = std::max(drift, std::abs(bo::e_n_from_actions(at, k) - e) / std::max(1.0, std::abs(e)));
        }
        for (const double l : lam) {
          const double h = bo::h_lambda_from_actions(aa, l);
          drift = std::max(drift, std::abs(bo::h_lambda_from_actions(at, l) - h) / std::max(1.0, std::abs(h)));
        }
      }
    }
    const bool ok = pde.e1_drift < 1e-4 && pde.mass_drift < 1e-8 && drift < 1e-12;
    return Outcome{ok, "PDE E drift " + sci(pde.e1_drift) + ", mass drift " + sci(pde.mass_drift) +
                           ", E_n/H_lambda along flow " + sci(drift) + " (limits 1e-4, 1e-8, 1e-12)"};
  });

  criterion(8, "symplectic structure, N = 1..3", [] {
    std::mt19937_64 rng(8008);
    double defect = 0.0, table = 0.0;
    for (std::size_t n = 1; n <= 3; ++n) {
      const auto ni = static_cast<Eigen::Index>(n);
      Eigen::MatrixXd canon = Eigen::MatrixXd::Zero(2 * ni, 2 * ni);
      canon.topRightCorner(ni, ni).setIdentity();
      canon.bottomLeftCorner(ni, ni) = -Eigen::MatrixXd::Identity(ni, ni);
      for (int trial = 0; trial < 10; ++trial) {
        const SolitonParameters p = bo::validation::random_params(rng, n);
        defect = std::max(defect, bo::symplectomorphism_check(p));
        table = std::max(table, (bo::poisson_bracket_table(p) - canon).cwiseAbs().maxCoeff());
      }
    }
    return Outcome{defect < 1e-4 && table < 1e-4,
                   "symplectic defect " + sci(defect) + ", Poisson table " + sci(table) + " (limits 1e-4)"};
  });

  criterion(9, "resolvent inversion, N <= 8", [] {
    std::mt19937_64 rng(9009);
    std::uniform_real_distribution<double> xs(-20.0, 20.0);
    double worst = 0.0;
    for (std::size_t n = 1; n <= 8; ++n) {
      for (int trial = 0; trial < 5; ++trial) {
        const SolitonParameters p = bo::validation::random_params(rng, n);
        const bo::SpectralData sd = bo::spectral_decompose(p);
        const bo::PoleResidueForm pu = bo::pi_u(p);
        for (int k = 0; k < 50; ++k) {
          const double x = xs(rng);
          worst = std::max(worst, std::abs(bo::pi_u_resolvent(sd, x) - bo::evaluate(pu, x)));
        }
      }
    }
    return Outcome{worst < 1e-9, "max |resolvent - Pi u| " + sci(worst) + " (limit 1e-9)"};
  });

  criterion(10, "evenness", [] {
    std::mt19937_64 rng(10010);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const SolitonParameters p = bo::validation::random_even_params(rng, 2 + static_cast<std::size_t>(trial % 6));
      for (const double g : bo::spectral_decompose(p).gammas) worst = std::max(worst, std::abs(g));
    }
    return Outcome{worst < 1e-9, "max |gamma| " + sci(worst) + " (limit 1e-9)"};
  });

  criterion(11, "torus map, N <= 4", [] {
    std::mt19937_64 rng(11011);
    double mean_err = 0.0, shift = 0.0, worst_mean = 0.0;
    for (std::size_t n = 1; n <= 4; ++n) {
      for (int trial = 0; trial < 5; ++trial) {
        const SolitonParameters p = bo::validation::random_params(rng, n);
        const bo::GridField v = bo::torus_potential(p, 256);
        double mean = 0.0;
        for (const double x : v.values) mean += x;
        mean /= static_cast<double>(v.size());
        mean_err = std::max(mean_err, std::abs(mean - 2.0 * static_cast<double>(n)));
        worst_mean = std::max(worst_mean, std::abs(mean));
        std::vector<cplx> moved;
        for (const cplx z : p.zs()) moved.push_back(z + 2.0 * kPi);
        const bo::GridField w = bo::torus_potential(SolitonParameters(moved), 256);
        for (std::size_t k = 0; k < v.size(); ++k) shift = std::max(shift, std::abs(v.values[k] - w.values[k]));
      }
    }
    return Outcome{mean_err < 1e-6 && shift < 1e-10, "|mean(v) - 2N| " + sci(mean_err) + " (limit 1e-6; observed |mean| " +
                                                         sci(worst_mean) + "), 2 pi shift " + sci(shift) +
                                                         " (limit 1e-10)"};
  });

  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
