#include "bo/cli.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "bo/action_angle.hpp"
#include "bo/csv_io.hpp"
#include "bo/errors.hpp"
#include "bo/lax_spectral.hpp"
#include "bo/soliton_profiles.hpp"
#include "bo/validation.hpp"

namespace bo::cli {

namespace fs = std::filesystem;

namespace {

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Grid {
  double xmin, xmax;
  std::size_t n;
  double dx() const { return (xmax - xmin) / static_cast<double>(n - 1); }
};

Grid parse_grid(const std::string& spec) {
  std::stringstream ss(spec);
  std::string a, b, c;
  if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c) )
    throw io::ParseError("grid must be `xmin,xmax,n`, got `" + spec + "`");
  Grid g{};
  try {
    std::size_t used = 0;
    g.xmin = std::stod(a);
    g.xmax = std::stod(b);
    const long long n = std::stoll(c, &used);
    if (used != c.size() || n < 2) throw io::ParseError("grid point count must be an integer >= 2");
    g.n = static_cast<std::size_t>(n);
  } catch (const std::logic_error&) {
    throw io::ParseError("grid must be `xmin,xmax,n`, got `" + spec + "`");
  }
  if (!(g.xmax > g.xmin) || !std::isfinite(g.xmin) || !std::isfinite(g.xmax))
    throw io::ParseError("grid needs xmin < xmax");
  return g;
}

void emit(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-")
    out << content;
  else
    io::write_atomic(path, content);
}

void plot_script(const std::string& script, const std::vector<std::string>& csvs, const std::string& xcol,
                 const std::string& ycol) {
  std::string py =
      "import csv\n"
      "import matplotlib.pyplot as plt\n\n"
      "files = [\n";
  for (const auto& f : csvs) py += "    " + std::string("r\"") + fs::absolute(f).string() + "\",\n";
  py += "]\n\n"
        "fig, ax = plt.subplots()\n"
        "for name in files:\n"
        "    with open(name) as fh:\n"
        "        rows = list(csv.DictReader(fh))\n"
        "    ax.plot([float(r[\"" + xcol + "\"]) for r in rows], [float(r[\"" + ycol + "\"]) for r in rows], lw=1)\n"
        "ax.set_xlabel(\"" + xcol + "\")\n"
        "ax.set_ylabel(\"" + ycol + "\")\n"
        "plt.show()\n";
  io::write_atomic(script, py);
}

void configure_logging() {
  auto logger = spdlog::stderr_logger_st("bo_soliton");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  const char* env = std::getenv("BO_SOLITON_LOG");
  const std::string level = env ? env : "error";
  if (level == "debug")
    spdlog::set_level(spdlog::level::debug);
  else if (level == "info")
    spdlog::set_level(spdlog::level::info);
  else
    spdlog::set_level(spdlog::level::err);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  if (!spdlog::get("bo_soliton")) configure_logging();

  CLI::App app{"Benjamin-Ono N-soliton toolkit"};
  app.require_subcommand(1);

  std::string params_path, out_path, grid_spec, outdir, plot_path;
  std::vector<double> rs, alphas;
  double t0 = 0.0, t1 = 0.0, dt = 0.0;
  std::size_t torus_m = 256;
  validation::Options vopt;

  auto* synth = app.add_subcommand("synth", "sample the N-soliton profile on a grid");
  synth->add_option("params", params_path, "CSV with rows x,eta")->required();
  synth->add_option("--grid", grid_spec, "xmin,xmax,n")->required();
  synth->add_option("--out", out_path, "output CSV (stdout if omitted)");
  synth->add_option("--plot-script", plot_path, "write a matplotlib script for the output");

  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues, angles and actions");
  spectrum->add_option("params", params_path, "CSV with rows x,eta")->required();
  spectrum->add_option("--out", out_path, "output CSV (stdout if omitted)");

  auto* evolve = app.add_subcommand("evolve", "frames of the explicit solution");
  evolve->add_option("params", params_path, "CSV with rows x,eta (alternative to --r/--alpha)");
  evolve->add_option("--r", rs, "actions r^1 < ... < r^N < 0")->delimiter(',');
  evolve->add_option("--alpha", alphas, "angles alpha^1..alpha^N")->delimiter(',');
  evolve->add_option("--t0", t0, "first time");
  evolve->add_option("--t1", t1, "last time");
  evolve->add_option("--dt", dt, "frame spacing (0 for a single frame at t0)");
  evolve->add_option("--grid", grid_spec, "xmin,xmax,n")->required();
  evolve->add_option("--outdir", outdir, "directory for frame CSVs")->required();
  evolve->add_option("--plot-script", plot_path, "write a matplotlib script for the frames");

  auto* validate = app.add_subcommand("validate", "randomized invariant checks");
  validate->add_option("--n", vopt.n, "number of solitons");
  validate->add_option("--trials", vopt.trials, "random instances");
  validate->add_option("--seed", vopt.seed, "RNG seed");
  validate->add_flag("--with-pde", vopt.with_pde, "add the pseudospectral cross-check");
  validate->add_flag("--inject-fault", vopt.inject_fault, "flip the angle sign (suite sensitivity check)")
      ->group("");

  auto* torus = app.add_subcommand("torus", "periodic gap potential on [0, 2pi)");
  torus->add_option("params", params_path, "CSV with rows x,eta")->required();
  torus->add_option("--m", torus_m, "grid points");
  torus->add_option("--out", out_path, "output CSV (stdout if omitted)");
  torus->add_option("--plot-script", plot_path, "write a matplotlib script for the output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (synth->parsed()) {
      const Grid g = parse_grid(grid_spec);
      const SolitonParameters p = io::read_params(params_path);
      spdlog::info("synth: N = {}, {} points", p.size(), g.n);
      emit(out_path, io::field_csv(profile(p, g.xmin, g.dx(), g.n)), out);
      if (!plot_path.empty()) {
        if (out_path.empty()) throw Usage("--plot-script needs --out");
        plot_script(plot_path, {out_path}, "x", "u");
      }
    } else if (spectrum->parsed()) {
      const SolitonParameters p = io::read_params(params_path);
      const SpectralData sd = spectral_decompose(p);
      spdlog::info("spectrum: N = {}, Gram condition {:.3g}", p.size(), sd.gram_cond);
      spdlog::debug("M deviation from closed form {:.3g}", verify_m_matrix(sd));
      emit(out_path, io::spectrum_csv(sd), out);
    } else if (evolve->parsed()) {
      const Grid g = parse_grid(grid_spec);
      const bool have_aa = !rs.empty() || !alphas.empty();
      if (have_aa == !params_path.empty()) throw Usage("give either a params file or --r/--alpha");
      ActionAngles aa0;
      if (have_aa) {
        if (rs.size() != alphas.size()) throw Usage("--r and --alpha need the same length");
        aa0 = ActionAngles{rs, alphas};
        aa0.validate();
      } else {
        aa0 = forward_map(io::read_params(params_path));
      }
      if (!std::isfinite(t0) || !std::isfinite(t1) || !std::isfinite(dt)) throw Usage("times must be finite");

      std::vector<double> times{t0};
      if (dt != 0.0 && t1 != t0) {
        const double step = std::copysign(std::abs(dt), t1 - t0);
        const auto count = static_cast<std::size_t>(std::floor(std::abs(t1 - t0) / std::abs(dt) + 1e-9));
        for (std::size_t k = 1; k <= count; ++k) times.push_back(t0 + static_cast<double>(k) * step);
      }

      fs::create_directories(outdir);
      std::vector<io::ActionRow> rows;
      std::vector<std::string> frames;
      for (const double t : times) {
        const GridField f = explicit_field(aa0, t, g.xmin, g.dx(), g.n);
        const std::string path = (fs::path(outdir) / io::frame_name(t)).string();
        io::write_atomic(path, io::field_csv(f));
        frames.push_back(path);
        rows.push_back({t, evolve_aa(aa0, t)});
        spdlog::debug("frame t = {}", t);
      }
      io::write_atomic(fs::path(outdir) / "actions.csv", io::actions_csv(rows));
      spdlog::info("evolve: wrote {} frames to {}", frames.size(), outdir);
      if (!plot_path.empty()) plot_script(plot_path, frames, "x", "u");
    } else if (validate->parsed()) {
      const auto rows = validation::run(vopt);
      out << validation::format_table(rows);
      bool ok = true;
      for (const auto& r : rows) ok = ok && r.pass;
      out << (ok ? "all checks passed\n" : "some checks FAILED\n");
      return ok ? 0 : 1;
    } else if (torus->parsed()) {
      const SolitonParameters p = io::read_params(params_path);
      const GridField v = torus_potential(p, torus_m);
      std::string csv = "y,v\n";
      for (std::size_t k = 0; k < v.values.size(); ++k) csv += io::fmt(v.x(k)) + "," + io::fmt(v.values[k]) + "\n";
      emit(out_path, csv, out);
      if (!plot_path.empty()) {
        if (out_path.empty()) throw Usage("--plot-script needs --out");
        plot_script(plot_path, {out_path}, "y", "v");
      }
    }
  } catch (const io::ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const Usage& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_domain_error(e.kind()) ? 3 : 4;
  } catch (const fs::filesystem_error& e) {
    err << "file error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}

}  // namespace bo::cli
