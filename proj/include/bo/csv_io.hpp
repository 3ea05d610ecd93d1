#pragma once

// CSV input and output. Floats are written with 17 significant digits and '\n'
// line endings; files are written to a temporary and renamed into place.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "bo/action_angle.hpp"
#include "bo/lax_spectral.hpp"
#include "bo/soliton_profiles.hpp"

namespace bo::io {

/// Malformed input (the CLI maps it to exit code 2).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rows of `x,eta`, with an optional header line. Throws ParseError on empty or malformed
/// input; invalid parameter values surface as bo::Error from SolitonParameters.
SolitonParameters parse_params(const std::string& text);
SolitonParameters read_params(const std::filesystem::path& path);

/// "%.17g"
std::string fmt(double v);

std::string field_csv(const GridField& f);                      // x,u
std::string spectrum_csv(const SpectralData& sd);               // j,lambda,gamma,I
std::string frame_name(double t);                               // frame_t<t:.4f>.csv

struct ActionRow {
  double t;
  ActionAngles aa;
};
std::string actions_csv(const std::vector<ActionRow>& rows);    // t,j,r,alpha

/// Writes via a temporary file in the same directory and renames it over path.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace bo::io
