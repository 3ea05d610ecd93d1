#include "bo/pde_reference.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "bo/errors.hpp"

namespace bo::pde {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};
constexpr double kContamination = 1e-4;

fftw_complex* as_fftw(std::vector<cd>& v) { return reinterpret_cast<fftw_complex*>(v.data()); }

bool finite(const std::vector<double>& u) {
  for (const double v : u)
    if (!std::isfinite(v)) return false;
  return true;
}

void check_edges(const std::vector<double>& u, double t) {
  const double edge = std::max(std::abs(u.front()), std::abs(u.back()));
  if (edge > kContamination) {
    std::ostringstream os;
    os << "edge magnitude " << edge << " at t = " << t << " exceeds " << kContamination;
    throw Error(ErrorKind::BoundaryContamination, os.str());
  }
}

}  // namespace

void PdeConfig::validate() const {
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw Error(ErrorKind::InvalidParameters, "domain half-width must be positive");
  if (modes < 256 || (modes & (modes - 1)) != 0)
    throw Error(ErrorKind::InvalidParameters, "mode count must be a power of two, at least 256");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorKind::InvalidParameters, "time step must be positive");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw Error(ErrorKind::InvalidParameters, "t_end must be nonnegative");
  if (!(snapshot_every > 0.0)) throw Error(ErrorKind::InvalidParameters, "snapshot interval must be positive");
}

Stepper::Stepper(const PdeConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
  const std::size_t m = cfg_.modes;
  const std::size_t h = m / 2 + 1;
  kappa_.resize(h);
  mask_.resize(h);
  prop_full_.resize(h);
  prop_half_.resize(h);
  for (std::size_t k = 0; k < h; ++k) {
    kappa_[k] = std::numbers::pi * static_cast<double>(k) / cfg_.half_width;
    const bool keep = cfg_.dealias ? (3 * k < m) : true;
    mask_[k] = (keep && k != m / 2) ? 1.0 : 0.0;
    // H d_x^2 has symbol i |k| k
    prop_full_[k] = std::exp(kI * kappa_[k] * kappa_[k] * cfg_.dt);
    prop_half_[k] = std::exp(kI * kappa_[k] * kappa_[k] * cfg_.dt / 2.0);
  }
  state_.assign(h, 0.0);
  for (auto* v : {&a_, &b_, &c_, &d_, &tmp_, &spec_}) v->assign(h, 0.0);
  real_.assign(m, 0.0);
  forward_ = fftw_plan_dft_r2c_1d(static_cast<int>(m), real_.data(), as_fftw(spec_), FFTW_ESTIMATE);
  backward_ = fftw_plan_dft_c2r_1d(static_cast<int>(m), as_fftw(spec_), real_.data(), FFTW_ESTIMATE);
}

Stepper::~Stepper() {
  fftw_destroy_plan(static_cast<fftw_plan>(forward_));
  fftw_destroy_plan(static_cast<fftw_plan>(backward_));
}

void Stepper::set_field(const std::vector<double>& u) {
  if (u.size() != cfg_.modes) throw Error(ErrorKind::GridMismatch, "field length differs from mode count");
  real_ = u;
  fftw_execute(static_cast<fftw_plan>(forward_));
  state_ = spec_;
}

std::vector<double> Stepper::field() {
  spec_ = state_;  // c2r destroys its input
  fftw_execute(static_cast<fftw_plan>(backward_));
  std::vector<double> u(real_);
  const double scale = 1.0 / static_cast<double>(cfg_.modes);
  for (double& v : u) v *= scale;
  return u;
}

void Stepper::nonlinear_term(const std::vector<cd>& v, std::vector<cd>& out) {
  const std::size_t h = v.size();
  if (!cfg_.nonlinear) {
    std::fill(out.begin(), out.end(), cd(0.0));
    return;
  }
  for (std::size_t k = 0; k < h; ++k) spec_[k] = mask_[k] * v[k];
  fftw_execute(static_cast<fftw_plan>(backward_));
  const double scale = 1.0 / static_cast<double>(cfg_.modes);
  for (double& r : real_) {
    r *= scale;
    r *= r;
  }
  fftw_execute(static_cast<fftw_plan>(forward_));
  for (std::size_t k = 0; k < h; ++k) out[k] = -kI * kappa_[k] * mask_[k] * spec_[k] * cfg_.dt;
}

void Stepper::step() {
  const std::size_t h = state_.size();
  auto& v = state_;
  nonlinear_term(v, a_);
  for (std::size_t k = 0; k < h; ++k) tmp_[k] = prop_half_[k] * (v[k] + a_[k] / 2.0);
  nonlinear_term(tmp_, b_);
  for (std::size_t k = 0; k < h; ++k) tmp_[k] = prop_half_[k] * v[k] + b_[k] / 2.0;
  nonlinear_term(tmp_, c_);
  for (std::size_t k = 0; k < h; ++k) tmp_[k] = prop_full_[k] * v[k] + prop_half_[k] * c_[k];
  nonlinear_term(tmp_, d_);
  for (std::size_t k = 0; k < h; ++k)
    v[k] = prop_full_[k] * v[k] +
           (prop_full_[k] * a_[k] + 2.0 * prop_half_[k] * (b_[k] + c_[k]) + d_[k]) / 6.0;
}

GridField initial_field(const SolitonParameters& params, const PdeConfig& cfg) {
  cfg.validate();
  return profile(params, -cfg.half_width, cfg.dx(), cfg.modes);
}

std::vector<Snapshot> run(const SolitonParameters& params, const PdeConfig& cfg) {
  return run(initial_field(params, cfg), cfg);
}

std::vector<Snapshot> run(const GridField& initial, const PdeConfig& cfg) {
  cfg.validate();
  if (initial.values.size() != cfg.modes || std::abs(initial.dx - cfg.dx()) > 1e-12 * cfg.dx() ||
      std::abs(initial.x0 + cfg.half_width) > 1e-12 * cfg.half_width)
    throw Error(ErrorKind::GridMismatch, "initial field is not on the solver grid");
  check_edges(initial.values, 0.0);

  const auto total = static_cast<std::size_t>(std::llround(cfg.t_end / cfg.dt));
  if (std::abs(static_cast<double>(total) * cfg.dt - cfg.t_end) > 1e-9 * std::max(1.0, cfg.t_end))
    throw Error(ErrorKind::InvalidParameters, "t_end is not a multiple of dt");
  const auto every = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(cfg.snapshot_every / cfg.dt)));

  Stepper stepper(cfg);
  stepper.set_field(initial.values);
  std::vector<Snapshot> out;
  out.push_back({0.0, initial});
  for (std::size_t s = 1; s <= total; ++s) {
    stepper.step();
    if (s % every == 0 || s == total) {
      const double t = static_cast<double>(s) * cfg.dt;
      std::vector<double> u = stepper.field();
      if (!finite(u)) {
        std::ostringstream os;
        os << "non-finite field at t = " << t;
        throw Error(ErrorKind::BlowupDetected, os.str());
      }
      check_edges(u, t);
      out.push_back({t, GridField(initial.x0, initial.dx, std::move(u))});
    }
  }
  return out;
}

Comparison compare(const GridField& a, const GridField& b) {
  if (a.values.size() != b.values.size() || a.dx != b.dx || a.x0 != b.x0)
    throw Error(ErrorKind::GridMismatch, "fields live on different grids");
  double diff2 = 0.0;
  double ref2 = 0.0;
  double sup = 0.0;
  for (std::size_t k = 0; k < a.values.size(); ++k) {
    const double d = a.values[k] - b.values[k];
    diff2 += d * d;
    ref2 += b.values[k] * b.values[k];
    sup = std::max(sup, std::abs(d));
  }
  return {ref2 > 0.0 ? std::sqrt(diff2 / ref2) : std::sqrt(diff2), sup};
}

}  // namespace bo::pde
