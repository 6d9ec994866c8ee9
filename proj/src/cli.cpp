#include "hitdisk/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hitdisk/annulus_map.hpp"
#include "hitdisk/density.hpp"
#include "hitdisk/elliptic.hpp"
#include "hitdisk/montecarlo.hpp"
#include "hitdisk/profile_io.hpp"
#include "hitdisk/verify.hpp"

namespace hitdisk::cli {

namespace {

struct CommonOptions {
  double rho = 0;
  double radius = 1;
  std::string start = "0,0";
};

struct OutputOptions {
  std::string path;  // empty: stdout
  std::string format = "csv";
  bool arc_length = false;
};

double parse_double(std::string_view text) {
  double v = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || text.empty() || !std::isfinite(v)) {
    throw InvalidArgument("not a number: '" + std::string(text) + "'");
  }
  return v;
}

CartesianPoint<double> parse_point(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos) {
    throw InvalidArgument("point must be given as x,y (got '" + text + "')");
  }
  return {parse_double(std::string_view(text).substr(0, comma)),
          parse_double(std::string_view(text).substr(comma + 1))};
}

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--rho", o.rho, "correlation coefficient, |rho| < 1")->required();
  cmd->add_option("--R", o.radius, "disk radius")->capture_default_str();
  cmd->add_option("--start", o.start, "start point x,y")->capture_default_str();
}

void add_series(CLI::App* cmd, SeriesControl& s) {
  cmd->add_option("--max-terms", s.max_terms, "series truncation cap")->capture_default_str();
  cmd->add_option("--tol", s.tail_tol, "series tail tolerance")->capture_default_str();
}

void add_output(CLI::App* cmd, OutputOptions& o) {
  cmd->add_option("--out", o.path, "output file (default: stdout)");
  cmd->add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_flag("--arc-length", o.arc_length, "emit density per unit arc length instead of per radian");
}

void add_sim(CLI::App* cmd, SimConfig& sim, std::string& mode) {
  cmd->add_option("--paths", sim.n_paths, "number of simulated paths")->capture_default_str();
  cmd->add_option("--dt", sim.dt, "Euler time step")->capture_default_str();
  cmd->add_option("--seed", sim.seed, "random seed")->capture_default_str();
  cmd->add_option("--boundary-mode", mode, "interpolate or reject-overshoot")
      ->check(CLI::IsMember({"interpolate", "reject-overshoot"}))
      ->capture_default_str();
  cmd->add_flag("--no-leap", [&sim](std::int64_t) { sim.leap = false; },
                "take every Euler step individually");
}

void emit_profile(const DensityProfile& profile, const OutputOptions& o, std::ostream& out) {
  std::ostringstream text;
  if (o.format == "json") {
    text << to_json(profile, o.arc_length).dump(2) << '\n';
  } else {
    write_csv(text, profile, o.arc_length);
  }
  if (o.path.empty()) {
    out << text.str();
    return;
  }
  std::ofstream file(o.path);
  if (!file) throw InvalidArgument("cannot open output file '" + o.path + "'");
  file << text.str();
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

int cmd_transform(const CommonOptions& o, std::ostream& out) {
  const ProblemSpec<double> spec(o.rho, o.radius);
  const auto p = parse_point(o.start);
  const double R = spec.radius();
  if (!(std::hypot(p.x, p.y) <= R * (1 + 1e-12))) {
    throw DomainError("point (" + fmt(p.x) + ", " + fmt(p.y) + ") lies outside the disk");
  }
  const auto g = make_ellipse_geometry(spec);
  const auto e = forward_linear(p, spec);
  const auto a = ellipse_to_annulus(e, g);
  out << "rho = " << fmt(spec.rho()) << ", R = " << fmt(R) << "\n";
  out << "ellipse: a = " << fmt(g.a) << ", b = " << fmt(g.b) << ", c = " << fmt(g.c) << ", q = " << fmt(g.q)
      << "\n";
  out << "(x, y)     = (" << fmt(p.x) << ", " << fmt(p.y) << ")\n";
  out << "(w, z)     = (" << fmt(e.w) << ", " << fmt(e.z) << ")\n";
  out << "(r, theta) = (" << fmt(a.r) << ", " << fmt(a.theta) << ")\n";
  if (g.degenerate()) {
    out << "(eta, phi) = undefined (rho = 0: the ellipse is a circle)\n";
  } else {
    const auto el = ellipse_to_elliptic(e, g);
    out << "(eta, phi) = (" << fmt(el.eta) << ", " << fmt(el.phi) << "), eta_hat = " << fmt(g.eta_hat) << "\n";
    const bool focal = e.z == 0 && std::abs(e.w) <= g.c;
    if (focal) {
      out << "note: point lies on the focal segment; theta = " << fmt(a.theta) << " and theta = "
          << fmt(wrap_angle(-a.theta)) << " both map here (canonical choice in [0, pi])\n";
    }
  }
  return kOk;
}

int cmd_density(const CommonOptions& o, Method method, const SeriesControl& series, int grid,
                const OutputOptions& out_opts, std::ostream& out, std::ostream& err) {
  const ProblemSpec<double> spec(o.rho, o.radius);
  const auto start = parse_point(o.start);
  if (method == Method::montecarlo) throw InvalidArgument("use the simulate command for Monte Carlo profiles");
  const auto profile = density_profile(start, spec, method, series, grid);
  if (profile.meta.near_boundary) {
    err << "warning: start point is very close to the circle; series converge slowly\n";
  }
  if (profile.meta.series_truncated) err << "warning: series truncated at max_terms\n";
  emit_profile(profile, out_opts, out);
  return kOk;
}

int cmd_simulate(const CommonOptions& o, SimConfig sim, const std::string& mode, int bins,
                 const OutputOptions& out_opts, std::ostream& out) {
  const ProblemSpec<double> spec(o.rho, o.radius);
  const auto start = parse_point(o.start);
  sim.boundary_mode = mode == "reject-overshoot" ? BoundaryMode::reject_overshoot : BoundaryMode::interpolate;
  const auto samples = simulate_exits(start, spec, sim);
  auto profile = empirical_profile(samples, bins);
  profile.meta.rho = spec.rho();
  profile.meta.radius = spec.radius();
  profile.meta.start = start;
  emit_profile(profile, out_opts, out);
  return kOk;
}

int cmd_verify(const CommonOptions& o, VerifyConfig cfg, const std::string& mode, bool no_mc,
               const std::string& path, std::ostream& out, std::ostream& err) {
  cfg.rho = o.rho;
  cfg.radius = o.radius;
  cfg.start = parse_point(o.start);
  cfg.run_montecarlo = !no_mc;
  cfg.sim.boundary_mode = mode == "reject-overshoot" ? BoundaryMode::reject_overshoot : BoundaryMode::interpolate;
  (void)ProblemSpec<double>(cfg.rho, cfg.radius);
  const auto results = run_verification(cfg);
  const auto report = verification_report(cfg, results).dump(2);
  if (path.empty()) {
    out << report << '\n';
  } else {
    std::ofstream file(path);
    if (!file) throw InvalidArgument("cannot open output file '" + path + "'");
    file << report << '\n';
  }
  bool ok = true;
  for (const auto& r : results) {
    if (!r.passed) {
      err << "FAILED: " << r.name << " (measured " << r.measured << ", threshold " << r.threshold << ")\n";
      ok = false;
    }
  }
  return ok ? kOk : kVerifyFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exit-point distribution of correlated planar Brownian motion from a disk"};
  app.require_subcommand(1);

  CommonOptions common;
  SeriesControl series;
  OutputOptions output;
  std::string method_name = "annulus";
  int grid = 1024;
  SimConfig sim;
  std::string mode = "interpolate";
  int bins = 72;
  VerifyConfig vcfg;
  bool no_mc = false;
  std::string verify_path;

  auto* density = app.add_subcommand("density", "analytic exit-angle density on a uniform grid");
  add_common(density, common);
  add_series(density, series);
  add_output(density, output);
  density->add_option("--method", method_name, "annulus, elliptic or superposition")
      ->check(CLI::IsMember({"annulus", "elliptic", "superposition"}))
      ->capture_default_str();
  density->add_option("--grid", grid, "number of exit angles")->capture_default_str();

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo exit-angle histogram");
  add_common(simulate, common);
  add_sim(simulate, sim, mode);
  add_output(simulate, output);
  simulate->add_option("--bins", bins, "histogram bins")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "run the cross-method verification suite");
  add_common(verify, common);
  add_series(verify, vcfg.series);
  add_sim(verify, vcfg.sim, mode);
  verify->add_option("--grid", vcfg.grid, "profile grid size")->capture_default_str();
  verify->add_flag("--no-montecarlo", no_mc, "skip the simulation check");
  verify->add_flag("--corrupt-thm3-display", vcfg.corrupt_elliptic_display,
                   "test hook: use the elliptic series with swapped, k-independent hyperbolic factors");
  verify->add_option("--out", verify_path, "report file (default: stdout)");

  auto* transform = app.add_subcommand("transform", "print the coordinate chain for one point");
  add_common(transform, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*density) {
      return cmd_density(common, parse_method(method_name), series, grid, output, out, err);
    }
    if (*simulate) return cmd_simulate(common, sim, mode, bins, output, out);
    if (*verify) return cmd_verify(common, vcfg, mode, no_mc, verify_path, out, err);
    if (*transform) return cmd_transform(common, out);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kDomain;
  }
  return kUsage;
}

}  // namespace hitdisk::cli
