#include "bo/validation.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <span>

#include "bo/errors.hpp"
#include "bo/invariants.hpp"
#include "bo/lax_spectral.hpp"
#include "bo/pde_reference.hpp"

namespace bo::validation {

namespace {

constexpr double kGap = 0.1;

bool separated(std::span<const cplx> zs) {
  for (std::size_t j = 0; j < zs.size(); ++j)
    for (std::size_t k = j + 1; k < zs.size(); ++k)
      if (std::abs(zs[j] - zs[k]) < kGap) return false;
  return true;
}

void record(CheckResult& c, double value) {
  ++c.count;
  if (!std::isfinite(value)) value = std::numeric_limits<double>::infinity();
  c.worst = std::max(c.worst, value);
  if (!(value < c.tol)) c.pass = false;
}

void record_failure(CheckResult& c, const std::exception& e) {
  ++c.count;
  c.pass = false;
  c.worst = std::numeric_limits<double>::infinity();
  if (c.note.empty()) c.note = e.what();
}

CheckResult make_check(std::string name, double tol) {
  CheckResult c;
  c.name = std::move(name);
  c.tol = tol;
  return c;
}

ActionAngles forward(const SolitonParameters& p, bool fault) {
  ActionAngles aa = forward_map(p);
  if (fault)
    for (double& a : aa.alphas) a = -a;
  return aa;
}

}  // namespace

SolitonParameters random_params(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> pos(-5.0, 5.0);
  std::uniform_real_distribution<double> width(0.2, 5.0);
  for (;;) {
    std::vector<cplx> zs;
    for (std::size_t j = 0; j < n; ++j) {
      const double x = pos(rng);
      zs.emplace_back(x, -width(rng));
    }
    if (separated(zs)) return SolitonParameters(std::move(zs));
  }
}

SolitonParameters random_even_params(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> pos(0.05, 5.0);
  std::uniform_real_distribution<double> width(0.2, 5.0);
  for (;;) {
    std::vector<cplx> zs;
    for (std::size_t j = 0; j < n / 2; ++j) {
      const double x = pos(rng);
      const double eta = width(rng);
      zs.emplace_back(x, -eta);
      zs.emplace_back(-x, -eta);
    }
    if (n % 2 == 1) zs.emplace_back(0.0, -width(rng));
    if (separated(zs)) return SolitonParameters(std::move(zs));
  }
}

ActionAngles random_action_angles(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> lam(-2.5, -0.1);
  std::uniform_real_distribution<double> ang(-5.0, 5.0);
  for (;;) {
    std::vector<double> ls(n);
    for (double& l : ls) l = lam(rng);
    std::sort(ls.begin(), ls.end());
    bool ok = true;
    for (std::size_t j = 0; j + 1 < n; ++j) ok = ok && ls[j + 1] - ls[j] >= kGap;
    ActionAngles aa;
    for (const double l : ls) aa.rs.push_back(2.0 * std::numbers::pi * l);
    for (std::size_t j = 0; j < n; ++j) aa.alphas.push_back(ang(rng));
    if (!ok) continue;
    try {
      const SolitonParameters p = inverse_map(aa);
      if (separated(p.zs())) return aa;
    } catch (const Error&) {
    }
  }
}

double multiset_distance(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  auto one_way = [](std::span<const cplx> p, std::span<const cplx> q) {
    double worst = 0.0;
    for (const cplx z : p) {
      double best = std::numeric_limits<double>::infinity();
      for (const cplx w : q) best = std::min(best, std::abs(z - w));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_way(a, b), one_way(b, a));
}

std::vector<CheckResult> run(const Options& opt) {
  if (opt.n == 0 || opt.trials == 0) throw Error(ErrorKind::InvalidParameters, "n and trials must be positive");
  std::mt19937_64 rng(opt.seed);

  CheckResult inv_fwd = make_check("roundtrip inverse(forward(z)) = z", 1e-7);
  CheckResult fwd_inv = make_check("roundtrip forward(inverse(r,a)) = (r,a)", 1e-7);
  CheckResult wu = make_check("Wu identity relative defect", 1e-9);
  CheckResult mform = make_check("M spectral vs closed form", 1e-8);
  CheckResult mspec = make_check("spectrum of M vs parameters", 1e-8);
  CheckResult im_m = make_check("Im M negative semi-definite", 1e-9);
  CheckResult poisson = make_check("Poisson table vs canonical", 1e-4);
  CheckResult sympl = make_check("symplectic defect", 1e-4);
  CheckResult mass = make_check("E_0 vs ||Pi u||^2 (relative)", 1e-9);
  CheckResult hlam = make_check("H_lambda partial fractions vs resolvent", 1e-9);

  std::uniform_real_distribution<double> lam_dist(0.1, 5.0);
  for (std::size_t trial = 0; trial < opt.trials; ++trial) {
    const SolitonParameters p = random_params(rng, opt.n);
    const ActionAngles aa_draw = random_action_angles(rng, opt.n);
    const double lam = lam_dist(rng);

    auto guarded = [](CheckResult& c, const std::function<double()>& f) {
      try {
        record(c, f());
      } catch (const std::exception& e) {
        record_failure(c, e);
      }
    };

    guarded(inv_fwd, [&] {
      const SolitonParameters q = inverse_map(forward(p, opt.inject_fault));
      return multiset_distance(p.zs(), q.zs());
    });
    guarded(fwd_inv, [&] {
      const ActionAngles back = forward(inverse_map(aa_draw), opt.inject_fault);
      double d = 0.0;
      for (std::size_t j = 0; j < opt.n; ++j)
        d = std::max({d, std::abs(back.rs[j] - aa_draw.rs[j]), std::abs(back.alphas[j] - aa_draw.alphas[j])});
      return d;
    });

    std::optional<SpectralData> decomposed;
    try {
      decomposed.emplace(spectral_decompose(p));
    } catch (const std::exception& e) {
      for (CheckResult* c : {&wu, &mform, &mspec, &im_m, &mass, &hlam}) record_failure(*c, e);
      continue;
    }
    const SpectralData& sd = *decomposed;
    guarded(wu, [&] { return wu_defect(sd); });
    guarded(mform, [&] {
      std::vector<double> gammas = sd.gammas;
      if (opt.inject_fault)
        for (double& g : gammas) g = -g;
      return (sd.m_matrix - m_formula(sd.lambdas, gammas)).cwiseAbs().maxCoeff();
    });
    guarded(mspec, [&] {
      const std::vector<cplx> ev = m_eigenvalues(sd.m_wide);
      return multiset_distance(ev, p.zs());
    });
    guarded(im_m, [&] {
      const Eigen::MatrixXcd im = (sd.m_matrix - sd.m_matrix.adjoint()) / cplx(0.0, 2.0);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(im, Eigen::EigenvaluesOnly);
      return std::max(0.0, es.eigenvalues().maxCoeff());
    });
    guarded(poisson, [&] {
      const Eigen::MatrixXd t = poisson_bracket_table(p);
      const auto n = static_cast<Eigen::Index>(opt.n);
      Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(2 * n, 2 * n);
      expect.topRightCorner(n, n).setIdentity();
      expect.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
      return (t - expect).cwiseAbs().maxCoeff();
    });
    guarded(sympl, [&] { return symplectomorphism_check(p); });
    guarded(mass, [&] {
      const PoleResidueForm pu = pi_u(p);
      const double norm2 = inner_product(pu, pu).real();
      return std::abs(e_n_from_spectrum(sd, 0) - norm2) / norm2;
    });
    guarded(hlam, [&] {
      const double a = h_lambda(sd, lam);
      const double b = h_lambda_resolvent(p, lam);
      return std::abs(a - b) / std::max(1.0, std::abs(a));
    });
  }

  std::vector<CheckResult> rows{inv_fwd, fwd_inv, wu, mform, mspec, im_m, poisson, sympl, mass, hlam};

  if (opt.with_pde) {
    CheckResult pde_row = make_check("PDE vs explicit solution at t=1 (rel L2)", 1e-3);
    try {
      const SolitonParameters two(std::vector<cplx>{{-10.0, -1.0}, {10.0, -0.5}});
      pde::PdeConfig cfg;
      cfg.t_end = 1.0;
      cfg.snapshot_every = 1.0;
      const auto snaps = pde::run(two, cfg);
      const GridField ex = explicit_field(forward(two, opt.inject_fault), 1.0, -cfg.half_width, cfg.dx(), cfg.modes);
      record(pde_row, pde::compare(snaps.back().field, ex).l2_rel);
    } catch (const std::exception& e) {
      record_failure(pde_row, e);
    }
    rows.push_back(pde_row);
  }
  return rows;
}

std::string format_table(const std::vector<CheckResult>& rows) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-44s %6s %12s %10s  %s\n", "check", "count", "worst", "tol", "status");
  out += buf;
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%-44s %6zu %12.3e %10.1e  %s\n", r.name.c_str(), r.count, r.worst, r.tol,
                  r.pass ? "PASS" : "FAIL");
    out += buf;
    if (!r.note.empty()) out += "    " + r.note + "\n";
  }
  return out;
}

}  // namespace bo::validation
