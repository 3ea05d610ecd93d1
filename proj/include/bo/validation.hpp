#pragma once

// Random instance generators and the invariant table behind `bo_soliton validate`.

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "bo/action_angle.hpp"
#include "bo/soliton_profiles.hpp"

namespace bo::validation {

/// |x_j| <= 5, 0.2 <= eta_j <= 5, pairwise |z_j - z_k| >= 0.1.
SolitonParameters random_params(std::mt19937_64& rng, std::size_t n);

/// Configurations symmetric under x -> -x (pairs +-x_j with a shared eta, plus x = 0 when n is odd).
SolitonParameters random_even_params(std::mt19937_64& rng, std::size_t n);

/// lambda_j in [-2.5, -0.1] with gaps >= 0.1, gamma_j in [-5, 5]; redrawn until the
/// image parameters are pairwise 0.1 apart.
ActionAngles random_action_angles(std::mt19937_64& rng, std::size_t n);

/// Largest distance from a point of a to its nearest point in b, symmetrized.
double multiset_distance(std::span<const cplx> a, std::span<const cplx> b);

struct CheckResult {
  std::string name;
  std::size_t count = 0;
  double worst = 0.0;
  double tol = 0.0;
  bool pass = true;
  std::string note;  // first failure message, if any
};

struct Options {
  std::size_t n = 3;
  std::size_t trials = 10;
  std::uint64_t seed = 42;
  bool with_pde = false;
  bool inject_fault = false;  // negates the angles returned by the forward map
};

std::vector<CheckResult> run(const Options& opt);

std::string format_table(const std::vector<CheckResult>& rows);

}  // namespace bo::validation
