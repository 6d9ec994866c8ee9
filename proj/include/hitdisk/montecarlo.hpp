#pragma once

// Monte Carlo reference for the exit point: Euler paths of the correlated
// Brownian motion in the ORIGINAL (x, y) frame, stopped at the first step that
// leaves the disk.

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <boost/random/normal_distribution.hpp>

#include "hitdisk/density.hpp"
#include "hitdisk/geometry.hpp"

namespace hitdisk {

enum class BoundaryMode {
  interpolate,       // exit point = crossing of the last step's segment with the circle
  reject_overshoot,  // exit angle = angle of the last inside point (overshooting point discarded)
};

struct SimConfig {
  std::int64_t n_paths = 100000;
  double dt = 1e-5;
  std::uint64_t seed = 12345;
  BoundaryMode boundary_mode = BoundaryMode::interpolate;
  // Far from the circle, advance many Euler steps at once with their exact summed
  // Gaussian increment. A leap spans at most T = d^2 / (kLeapSafety (1 + |rho|)),
  // d the distance to the circle, so a skipped intermediate point leaves the disk
  // with probability at most 4 exp(-kLeapSafety / 4), about 8e-9.
  bool leap = true;
  unsigned threads = 0;  // 0: worker_threads()

  void validate() const;
};

struct ExitSample {
  double alpha;   // exit angle in [0, 2 pi)
  double t_exit;  // exit time estimate
};

/// Per-path random stream: 64-bit Mersenne Twister seeded from (seed, path index),
/// uniforms from the top 53 bits, normals by Boost's ziggurat sampler.
class PathRng {
 public:
  PathRng(std::uint64_t seed, std::uint64_t path_index);
  /// Uniform on (0, 1].
  double uniform();
  /// Two independent standard normals.
  Eigen::Vector2d normal_pair();

 private:
  std::mt19937_64 engine_;
  boost::random::normal_distribution<double> normal_;
};

/// splitmix64 finalizer; mixes (seed, index) into a stream seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

/// Lower Cholesky factor of the increment covariance [[1, rho], [rho, 1]].
Eigen::Matrix2d increment_cholesky(double rho);

/// One increment with covariance [[dt, rho dt], [rho dt, dt]] given the Cholesky factor.
Eigen::Vector2d correlated_increment(PathRng& rng, const Eigen::Matrix2d& cholesky, double dt);

inline constexpr double kLeapSafety = 80.0;

std::vector<ExitSample> simulate_exits(const CartesianPoint<double>& start, const ProblemSpec<double>& spec,
                                       const SimConfig& cfg);

/// Normalized histogram (per radian) over n_bins >= 8 equal bins, alphas at bin centres.
DensityProfile empirical_profile(std::span<const ExitSample> samples, int n_bins);

/// Bin probabilities of the samples (counts / n).
std::vector<double> empirical_masses(std::span<const ExitSample> samples, int n_bins);

}  // namespace hitdisk
