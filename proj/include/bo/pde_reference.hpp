#pragma once

// Integrating-factor RK4 solver for u_t = H u_xx - (u^2)_x on the periodic box [-L, L),
// used as an independent check of the explicit soliton dynamics.

#include <complex>
#include <cstddef>
#include <vector>

#include "bo/soliton_profiles.hpp"

namespace bo::pde {

struct PdeConfig {
  double half_width = 400.0;
  std::size_t modes = std::size_t{1} << 14;
  double dt = 1e-3;
  double t_end = 1.0;
  bool dealias = true;
  double snapshot_every = 0.1;
  bool nonlinear = true;  // false drops the quadratic term

  /// Throws InvalidParameters on a non power-of-two or too small grid, dt <= 0, etc.
  void validate() const;
  double dx() const { return 2.0 * half_width / static_cast<double>(modes); }
  double x(std::size_t k) const { return -half_width + static_cast<double>(k) * dx(); }
};

struct Snapshot {
  double t;
  GridField field;
};

/// Owns the FFTW plans and work buffers. The state is the half spectrum (modes/2 + 1 entries)
/// of the real field on the grid x_k = -L + k dx.
class Stepper {
 public:
  explicit Stepper(const PdeConfig& cfg);
  ~Stepper();
  Stepper(const Stepper&) = delete;
  Stepper& operator=(const Stepper&) = delete;

  void set_field(const std::vector<double>& u);
  std::vector<double> field();
  std::vector<std::complex<double>>& state() { return state_; }
  const std::vector<double>& wavenumbers() const { return kappa_; }

  void step();

 private:
  void nonlinear_term(const std::vector<std::complex<double>>& v, std::vector<std::complex<double>>& out);

  PdeConfig cfg_;
  std::vector<double> kappa_;
  std::vector<double> mask_;
  std::vector<std::complex<double>> prop_full_, prop_half_;
  std::vector<std::complex<double>> state_;
  std::vector<std::complex<double>> a_, b_, c_, d_, tmp_, spec_;
  std::vector<double> real_;
  void* forward_ = nullptr;
  void* backward_ = nullptr;
};

/// Samples the N-soliton profile on the periodic grid of cfg.
GridField initial_field(const SolitonParameters& params, const PdeConfig& cfg);

/// Snapshots at t = 0, every snapshot_every, and t_end. Edge magnitudes above 1e-4
/// raise BoundaryContamination; non-finite values raise BlowupDetected.
std::vector<Snapshot> run(const SolitonParameters& params, const PdeConfig& cfg);
std::vector<Snapshot> run(const GridField& initial, const PdeConfig& cfg);

struct Comparison {
  double l2_rel;
  double sup;
};

/// Relative L2 error of a against b and the sup-norm difference. GridMismatch unless the grids agree.
Comparison compare(const GridField& a, const GridField& b);

}  // namespace bo::pde
