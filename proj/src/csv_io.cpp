#include "bo/csv_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <system_error>
#include <unistd.h>

namespace bo::io {

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_double(const std::string& field, double& out) {
  const std::string s = trim(field);
  if (s.empty()) return false;
  const char* begin = s.data();
  if (*begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

SolitonParameters parse_params(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<double> xs, etas;
  std::size_t lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto cells = split(line);
    if (first) {
      first = false;
      if (cells.size() == 2 && trim(cells[0]) == "x" && trim(cells[1]) == "eta") continue;
    }
    double x = 0.0, eta = 0.0;
    if (cells.size() != 2 || !parse_double(cells[0], x) || !parse_double(cells[1], eta))
      throw ParseError("line " + std::to_string(lineno) + ": expected two numbers `x,eta`, got `" + line + "`");
    xs.push_back(x);
    etas.push_back(eta);
  }
  if (xs.empty()) throw ParseError("parameter file contains no rows");
  return SolitonParameters::from_positions(xs, etas);
}

SolitonParameters read_params(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_params(ss.str());
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);
  return buf;
}

std::string field_csv(const GridField& f) {
  std::string out = "x,u\n";
  for (std::size_t k = 0; k < f.values.size(); ++k) out += fmt(f.x(k)) + "," + fmt(f.values[k]) + "\n";
  return out;
}

std::string spectrum_csv(const SpectralData& sd) {
  std::string out = "j,lambda,gamma,I\n";
  for (std::size_t j = 0; j < sd.size(); ++j)
    out += std::to_string(j + 1) + "," + fmt(sd.lambdas[j]) + "," + fmt(sd.gammas[j]) + "," +
           fmt(2.0 * std::numbers::pi * sd.lambdas[j]) + "\n";
  return out;
}

std::string frame_name(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "frame_t%.4f.csv", t);
  return buf;
}

std::string actions_csv(const std::vector<ActionRow>& rows) {
  std::string out = "t,j,r,alpha\n";
  for (const auto& row : rows)
    for (std::size_t j = 0; j < row.aa.size(); ++j)
      out += fmt(row.t) + "," + std::to_string(j + 1) + "," + fmt(row.aa.rs[j]) + "," + fmt(row.aa.alphas[j]) + "\n";
  return out;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot rename onto " + path.string() + ": " + ec.message());
  }
}

}  // namespace bo::io
