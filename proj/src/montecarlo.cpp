#include "hitdisk/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

namespace hitdisk {

void SimConfig::validate() const {
  if (n_paths < 1) throw InvalidArgument("simulation: n_paths must be >= 1");
  if (!(dt > 0) || !std::isfinite(dt)) throw InvalidArgument("simulation: dt must be positive");
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

PathRng::PathRng(std::uint64_t seed, std::uint64_t path_index) : engine_(mix_seed(seed, path_index)) {}

double PathRng::uniform() {
  // (k + 1) / 2^53 for k in [0, 2^53)
  return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

Eigen::Vector2d PathRng::normal_pair() {
  const double x = normal_(engine_);
  return {x, normal_(engine_)};
}

Eigen::Matrix2d increment_cholesky(double rho) {
  const ProblemSpec<double> spec(rho, 1.0);
  const Eigen::LLT<Eigen::Matrix2d> llt(increment_covariance(spec));
  return llt.matrixL();
}

Eigen::Vector2d correlated_increment(PathRng& rng, const Eigen::Matrix2d& cholesky, double dt) {
  return std::sqrt(dt) * (cholesky * rng.normal_pair());
}

namespace {

/// Parameter s in (0, 1] where inside + s (outside - inside) meets the circle.
double crossing_fraction(const Eigen::Vector2d& inside, const Eigen::Vector2d& outside, double radius) {
  const Eigen::Vector2d d = outside - inside;
  const double a = d.squaredNorm();
  const double b = 2 * inside.dot(d);
  const double c = inside.squaredNorm() - radius * radius;  // < 0
  // root of a s^2 + b s + c with s > 0, in the cancellation-free form
  const double disc = std::sqrt(std::max(0.0, b * b - 4 * a * c));
  const double s = b >= 0 ? (2 * c) / (-b - disc) : (-b + disc) / (2 * a);
  return std::clamp(s, 0.0, 1.0);
}

ExitSample run_path(const Eigen::Vector2d& start, double radius, double rho, const Eigen::Matrix2d& chol,
                    const SimConfig& cfg, std::uint64_t index) {
  PathRng rng(cfg.seed, index);
  const double r2 = radius * radius;
  const double leap_scale = 1.0 / (kLeapSafety * (1.0 + std::abs(rho)) * cfg.dt);
  const Eigen::Matrix2d unit_step = std::sqrt(cfg.dt) * chol;
  // below this squared radius a leap spans at least two steps
  const double leap_inner = cfg.leap ? std::pow(std::max(0.0, radius - std::sqrt(2.0 / leap_scale)), 2) : -1.0;
  Eigen::Vector2d pos = start;
  std::int64_t steps = 0;
  for (;;) {
    std::int64_t m = 1;
    Eigen::Vector2d next;
    if (pos.squaredNorm() < leap_inner) {
      const double d = radius - pos.norm();
      m = static_cast<std::int64_t>(std::min(d * d * leap_scale, 1e15));
      next = pos + correlated_increment(rng, chol, static_cast<double>(m) * cfg.dt);
    } else {
      next = pos + unit_step * rng.normal_pair();
    }
    if (next.squaredNorm() < r2) {
      pos = next;
      steps += m;
      continue;
    }
    double s = 1.0;
    Eigen::Vector2d exit_point;
    if (cfg.boundary_mode == BoundaryMode::interpolate) {
      s = crossing_fraction(pos, next, radius);
      exit_point = pos + s * (next - pos);
    } else {
      exit_point = pos;
    }
    const double t = (static_cast<double>(steps) + s * static_cast<double>(m)) * cfg.dt;
    return {polar_angle(exit_point.y(), exit_point.x()), t};
  }
}

}  // namespace

std::vector<ExitSample> simulate_exits(const CartesianPoint<double>& start, const ProblemSpec<double>& spec,
                                       const SimConfig& cfg) {
  cfg.validate();
  if (!inside_disk(start, spec)) {
    std::ostringstream msg;
    msg << "simulate_exits: start (" << start.x << ", " << start.y << ") is not inside the disk";
    throw DomainError(msg.str());
  }
  const Eigen::Matrix2d chol = increment_cholesky(spec.rho());
  const auto n = static_cast<std::size_t>(cfg.n_paths);
  std::vector<ExitSample> out(n);
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(cfg.threads ? cfg.threads : worker_threads(), n));
  auto work = [&](unsigned w) {
    for (std::size_t i = w; i < n; i += workers) {
      out[i] = run_path(start.vec(), spec.radius(), spec.rho(), chol, cfg, i);
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  return out;
}

std::vector<double> empirical_masses(std::span<const ExitSample> samples, int n_bins) {
  if (samples.empty()) throw InvalidArgument("empirical profile: no samples");
  if (n_bins < 8) throw InvalidArgument("empirical profile: need at least 8 bins");
  std::vector<double> counts(static_cast<std::size_t>(n_bins), 0.0);
  const double width = kTwoPi<double> / n_bins;
  for (const auto& s : samples) {
    auto bin = static_cast<std::size_t>(wrap_angle(s.alpha) / width);
    counts[std::min(bin, counts.size() - 1)] += 1.0;
  }
  for (double& c : counts) c /= static_cast<double>(samples.size());
  return counts;
}

DensityProfile empirical_profile(std::span<const ExitSample> samples, int n_bins) {
  DensityProfile profile;
  const auto masses = empirical_masses(samples, n_bins);
  const double width = kTwoPi<double> / n_bins;
  for (std::size_t b = 0; b < masses.size(); ++b) {
    profile.alphas.push_back((static_cast<double>(b) + 0.5) * width);
    profile.values.push_back(masses[b] / width);
  }
  profile.meta.method = Method::montecarlo;
  profile.meta.n_samples = samples.size();
  profile.meta.normalization_residual = profile.integral() - 1;
  return profile;
}

}  // namespace hitdisk
