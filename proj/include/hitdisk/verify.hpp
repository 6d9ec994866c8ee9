#pragma once

// Cross-method verification suite behind the `verify` command.

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hitdisk/density.hpp"
#include "hitdisk/montecarlo.hpp"

namespace hitdisk {

struct VerifyConfig {
  double rho = 0.5;
  double radius = 1.0;
  CartesianPoint<double> start{0.3, -0.2};
  SeriesControl series{};
  int grid = 1024;
  SimConfig sim{200000, 1e-5, 12345, BoundaryMode::interpolate, true, 0};
  int mc_bins = 72;
  bool run_montecarlo = true;
  // Test hook: evaluate the elliptic series with k-independent, swapped hyperbolic
  // factors. The annulus/elliptic equivalence check must then fail.
  bool corrupt_elliptic_display = false;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0;
  double threshold = 0;
  std::string detail;
};

std::vector<CheckResult> run_verification(const VerifyConfig& cfg);

nlohmann::json verification_report(const VerifyConfig& cfg, const std::vector<CheckResult>& results);

}  // namespace hitdisk
