#include "hitdisk/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hitdisk/annulus_map.hpp"
#include "hitdisk/elliptic.hpp"
#include "hitdisk/kernels.hpp"

namespace hitdisk {

namespace {

CheckResult make_check(std::string name, double measured, double threshold, std::string detail = {}) {
  return {std::move(name), measured <= threshold, measured, threshold, std::move(detail)};
}

CheckResult check_normalization(const VerifyConfig& cfg, const ProblemSpec<double>& spec) {
  double worst = 0;
  std::string where;
  for (Method m : {Method::annulus, Method::elliptic, Method::superposition}) {
    const auto profile = density_profile(cfg.start, spec, m, cfg.series, cfg.grid);
    const double err = std::abs(profile.meta.normalization_residual);
    if (err >= worst) {
      worst = err;
      where = std::string(to_string(m));
    }
  }
  return make_check("normalization", worst, 5e-6, "worst method: " + where);
}

CheckResult check_method_agreement(const VerifyConfig& cfg, const ProblemSpec<double>& spec) {
  const auto base = density_profile(cfg.start, spec, Method::annulus, cfg.series, cfg.grid);
  double worst = 0;
  for (Method m : {Method::elliptic, Method::superposition}) {
    const auto other = density_profile(cfg.start, spec, m, cfg.series, cfg.grid);
    for (std::size_t i = 0; i < base.values.size(); ++i) {
      worst = std::max(worst, std::abs(base.values[i] - other.values[i]));
    }
  }
  return make_check("method_agreement", worst, 1e-7, "sup-norm over annulus/elliptic/superposition profiles");
}

CheckResult check_elliptic_equivalence(const VerifyConfig& cfg, const EllipseGeometry<double>& g) {
  if (g.degenerate()) return make_check("annulus_elliptic_equivalence", 0, 1e-10, "skipped: rho = 0");
  constexpr int n = 8;
  double worst = 0;
  SeriesControl swapped = cfg.series;
  swapped.max_terms = 64;
  for (int i = 0; i < n; ++i) {
    const double eta = g.eta_hat * (i + 0.5) / n * 0.95;
    const double r = g.q * std::exp(eta);
    for (int j = 0; j < n; ++j) {
      const double phi = kTwoPi<double> * (j + 0.25) / n;
      for (int k = 0; k < n; ++k) {
        const double tau = kTwoPi<double> * (k + 0.6) / n;
        const double ref = annulus_kernel(r, phi, tau, g, cfg.series).value;
        const double val = cfg.corrupt_elliptic_display
                               ? elliptic_kernel_swapped_hyperbolic(eta, phi, tau, g, swapped).value
                               : elliptic_kernel(eta, phi, tau, g, cfg.series).value;
        worst = std::max(worst, std::abs(ref - val));
      }
    }
  }
  return make_check("annulus_elliptic_equivalence", worst, 1e-10,
                    cfg.corrupt_elliptic_display ? "elliptic series evaluated with swapped hyperbolic factors"
                                                 : "");
}

CheckResult check_superposition(const VerifyConfig& cfg, const EllipseGeometry<double>& g) {
  constexpr int n = 8;
  double worst = 0;
  for (int i = 0; i < n; ++i) {
    const double r = g.q + (0.95 - g.q) * i / (n - 1);
    for (int j = 0; j < n; ++j) {
      const double theta = kTwoPi<double> * (j + 0.1) / n;
      for (int k = 0; k < n; ++k) {
        const double tau = kTwoPi<double> * (k + 0.7) / n;
        const double a = annulus_kernel(r, theta, tau, g, cfg.series).value;
        const double b = poisson_superposition_kernel(r, theta, tau, g, cfg.series).value;
        worst = std::max(worst, std::abs(a - b));
      }
    }
  }
  return make_check("superposition_equivalence", worst, 1e-8);
}

CheckResult check_round_trips(const ProblemSpec<double>& spec, const EllipseGeometry<double>& g) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0;
  for (int i = 0; i < 2000; ++i) {
    const double rad = spec.radius() * std::sqrt(unit(rng)) * 0.999;
    const double ang = kTwoPi<double> * unit(rng);
    const CartesianPoint<double> p{rad * std::cos(ang), rad * std::sin(ang)};
    const auto e = forward_linear(p, spec);
    const auto back = inverse_linear(e, spec);
    worst = std::max(worst, std::hypot(back.x - p.x, back.y - p.y) / spec.radius());
    const auto e2 = annulus_to_ellipse(ellipse_to_annulus(e, g), g);
    worst = std::max(worst, std::hypot(e2.w - e.w, e2.z - e.z) / g.a);
    if (!g.degenerate()) {
      const auto e3 = elliptic_to_ellipse(ellipse_to_elliptic(e, g), g);
      worst = std::max(worst, std::hypot(e3.w - e.w, e3.z - e.z) / g.a);
    }
  }
  return make_check("round_trips", worst, 1e-10, "linear, annulus and elliptic inverses");
}

std::vector<CheckResult> check_parity(const VerifyConfig& cfg, const EllipseGeometry<double>& g) {
  if (g.degenerate()) {
    return {make_check("focal_evenness", 0, 1e-10, "skipped: rho = 0"),
            make_check("focal_derivative_oddness", 0, 1e-6, "skipped: rho = 0")};
  }
  double even_worst = 0, odd_worst = 0;
  const double h = 1e-5 * g.q;
  const double tau = 1.3;
  auto dr = [&](double th) {
    return (detail::annulus_series(g.q + h, th, tau, g, cfg.series).value -
            detail::annulus_series(g.q - h, th, tau, g, cfg.series).value) / (2 * h);
  };
  for (int j = 1; j < 16; ++j) {
    const double theta = kTwoPi<double> * j / 16 + 0.05;
    even_worst = std::max(even_worst, std::abs(annulus_kernel(g.q, theta, tau, g, cfg.series).value -
                                               annulus_kernel(g.q, -theta, tau, g, cfg.series).value));
    odd_worst = std::max(odd_worst, std::abs(dr(theta) + dr(-theta)));
  }
  return {make_check("focal_evenness", even_worst, 1e-10, "f(q, theta) - f(q, -theta)"),
          make_check("focal_derivative_oddness", odd_worst, 1e-6, "central differences across r = q")};
}

CheckResult check_montecarlo(const VerifyConfig& cfg, const ProblemSpec<double>& spec) {
  const auto samples = simulate_exits(cfg.start, spec, cfg.sim);
  const auto emp = empirical_masses(samples, cfg.mc_bins);
  const auto ref = bin_masses(cfg.start, spec, Method::annulus, cfg.series, cfg.mc_bins);
  return make_check("montecarlo_total_variation", total_variation(emp, ref), 0.02,
                    std::to_string(cfg.sim.n_paths) + " paths");
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyConfig& cfg) {
  const ProblemSpec<double> spec(cfg.rho, cfg.radius);
  const auto g = make_ellipse_geometry(spec);
  if (!inside_disk(cfg.start, spec)) throw DomainError("verify: start point is not inside the disk");
  std::vector<CheckResult> out;
  out.push_back(check_normalization(cfg, spec));
  out.push_back(check_method_agreement(cfg, spec));
  out.push_back(check_elliptic_equivalence(cfg, g));
  out.push_back(check_superposition(cfg, g));
  out.push_back(check_round_trips(spec, g));
  for (auto& c : check_parity(cfg, g)) out.push_back(std::move(c));
  if (cfg.run_montecarlo) out.push_back(check_montecarlo(cfg, spec));
  return out;
}

nlohmann::json verification_report(const VerifyConfig& cfg, const std::vector<CheckResult>& results) {
  nlohmann::json checks = nlohmann::json::array();
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    checks.push_back({{"name", r.name},
                      {"passed", r.passed},
                      {"measured", r.measured},
                      {"threshold", r.threshold},
                      {"detail", r.detail}});
  }
  return {{"rho", cfg.rho},
          {"R", cfg.radius},
          {"start", {cfg.start.x, cfg.start.y}},
          {"all_passed", all},
          {"checks", checks}};
}

}  // namespace hitdisk
