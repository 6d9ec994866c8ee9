#pragma once

// Exit-point density on the original circle of radius R, as a density in the
// exit angle alpha (per radian). The start point is pushed through the linear
// transform and the annulus (or elliptic) coordinates; the kernel is evaluated
// at the ellipse parameter tau(alpha) and multiplied by d tau / d alpha.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hitdisk/annulus_map.hpp"
#include "hitdisk/elliptic.hpp"
#include "hitdisk/geometry.hpp"
#include "hitdisk/kernels.hpp"

namespace hitdisk {

enum class Method { annulus, elliptic, superposition, montecarlo };

std::string_view to_string(Method m);
/// Throws InvalidArgument for unknown names.
Method parse_method(std::string_view name);

struct ProfileMeta {
  Method method = Method::annulus;
  double rho = 0;
  double radius = 1;
  CartesianPoint<double> start{0, 0};
  SeriesControl series{};
  double normalization_residual = 0;  // trapezoid integral minus 1
  bool near_boundary = false;         // annulus radius in [0.999, 1): series converge slowly
  bool series_truncated = false;      // some evaluation hit max_terms
  std::size_t n_samples = 0;          // Monte Carlo only
};

struct DensityProfile {
  std::vector<double> alphas;
  std::vector<double> values;
  ProfileMeta meta;

  /// Periodic trapezoid integral, assuming a uniform grid over [0, 2 pi).
  double integral() const;
};

/// Precomputed state for one start point; evaluates the exit density for any alpha.
class ExitDensity {
 public:
  static constexpr double kNearBoundaryRadius = 0.999;

  /// Throws DomainError unless the start lies strictly inside the disk.
  ExitDensity(const CartesianPoint<double>& start, const ProblemSpec<double>& spec, Method method,
              const SeriesControl& ctl = {});

  /// Density per radian of exit angle, before clamping.
  double raw(double alpha) const;
  /// Density per radian of exit angle, with truncation residue below zero clamped.
  double operator()(double alpha) const;
  /// Kernel in the ellipse parameter tau (density per radian of tau).
  double in_tau(double tau) const;

  const AnnulusCoord<double>& annulus() const { return annulus_; }
  const std::optional<EllipticCoord<double>>& elliptic() const { return elliptic_; }
  const EllipseGeometry<double>& geometry() const { return geometry_; }
  bool near_boundary() const { return annulus_.r >= kNearBoundaryRadius; }
  bool truncated() const { return truncated_; }

 private:
  KernelValue<double> kernel(double tau) const;

  ProblemSpec<double> spec_;
  Method method_;
  SeriesControl ctl_;
  EllipseGeometry<double> geometry_;
  CartesianPoint<double> start_;
  AnnulusCoord<double> annulus_{};
  std::optional<EllipticCoord<double>> elliptic_;
  mutable bool truncated_ = false;
};

double hitting_density(const CartesianPoint<double>& start, double alpha, const ProblemSpec<double>& spec,
                       Method method, const SeriesControl& ctl = {});

/// Uniform grid alpha_i = 2 pi i / n_grid, n_grid >= 16. Evaluation is spread over
/// worker threads; the result does not depend on the thread count.
DensityProfile density_profile(const CartesianPoint<double>& start, const ProblemSpec<double>& spec,
                               Method method, const SeriesControl& ctl, int n_grid);

/// E[h(tau_exit)] for boundary data sampled on the uniform tau grid 2 pi i / n, n >= 64.
double boundary_functional(const CartesianPoint<double>& start, const ProblemSpec<double>& spec,
                           std::span<const double> h_samples, const SeriesControl& ctl = {},
                           Method method = Method::annulus);

/// Probability of each of n_bins equal exit-angle bins [2 pi i / n, 2 pi (i+1) / n).
std::vector<double> bin_masses(const CartesianPoint<double>& start, const ProblemSpec<double>& spec,
                               Method method, const SeriesControl& ctl, int n_bins, int nodes_per_bin = 16);

/// Half the L1 distance between two discrete distributions of equal length.
double total_variation(std::span<const double> p, std::span<const double> q);

/// Worker count: hardware concurrency, capped by HITDISK_THREADS when set.
unsigned worker_threads();

/// Runs fn(i) for i in [0, n) across worker_threads() threads.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace hitdisk
