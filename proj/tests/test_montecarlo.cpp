#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "hitdisk/montecarlo.hpp"

namespace hitdisk {
namespace {

TEST(PathRng, UniformsInUnitInterval) {
  PathRng rng(1, 0);
  double sum = 0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LE(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000, 0.5, 5e-3);
}

TEST(PathRng, StreamsAreReproducibleAndDistinct) {
  PathRng a(7, 3), b(7, 3), c(7, 4), d(8, 3);
  const auto x = a.normal_pair();
  EXPECT_EQ(x, b.normal_pair());
  EXPECT_NE(x, c.normal_pair());
  EXPECT_NE(x, d.normal_pair());
  EXPECT_NE(mix_seed(0, 0), mix_seed(0, 1));
}

TEST(CorrelatedIncrement, SampleCovarianceMatches) {
  for (double rho : {-0.8, 0.0, 0.5}) {
    PathRng rng(11, 0);
    const Eigen::Matrix2d chol = increment_cholesky(rho);
    EXPECT_LT((chol * chol.transpose() - Eigen::Matrix2d{{1, rho}, {rho, 1}}).norm(), 1e-15);
    const int n = 200000;
    const double dt = 1e-3;
    Eigen::Matrix2d acc = Eigen::Matrix2d::Zero();
    Eigen::Vector2d mean = Eigen::Vector2d::Zero();
    for (int i = 0; i < n; ++i) {
      const Eigen::Vector2d d = correlated_increment(rng, chol, dt);
      acc += d * d.transpose();
      mean += d;
    }
    acc /= n * dt;
    mean /= n;
    // standard error of a (co)variance estimate is at most sqrt(2 / n)
    const double tol = 3 * std::sqrt(2.0 / n);
    EXPECT_NEAR(acc(0, 0), 1.0, tol);
    EXPECT_NEAR(acc(1, 1), 1.0, tol);
    EXPECT_NEAR(acc(0, 1), rho, tol);
    EXPECT_NEAR(mean.norm(), 0.0, 3 * std::sqrt(2 * dt / n));
  }
}

TEST(SimConfig, Validation) {
  SimConfig cfg;
  cfg.n_paths = 0;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg.n_paths = 10;
  cfg.dt = -1;
  EXPECT_THROW(cfg.validate(), InvalidArgument);
  cfg.dt = 1e-4;
  EXPECT_THROW(simulate_exits({1.0, 0.0}, ProblemSpec<double>(0.5, 1.0), cfg), DomainError);
}

TEST(SimulateExits, DeterministicAndThreadInvariant) {
  SimConfig cfg;
  cfg.n_paths = 2000;
  cfg.dt = 1e-4;
  cfg.threads = 1;
  const ProblemSpec<double> spec(0.3, 1.0);
  const auto serial = simulate_exits({0.1, 0.2}, spec, cfg);
  cfg.threads = 3;
  const auto parallel = simulate_exits({0.1, 0.2}, spec, cfg);
  ASSERT_EQ(serial.size(), parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    EXPECT_EQ(serial[i].alpha, parallel[i].alpha);
    EXPECT_EQ(serial[i].t_exit, parallel[i].t_exit);
  }
  cfg.seed += 1;
  EXPECT_NE(simulate_exits({0.1, 0.2}, spec, cfg)[0].alpha, serial[0].alpha);
}

TEST(SimulateExits, ExitAnglesAndTimes) {
  SimConfig cfg;
  cfg.n_paths = 5000;
  const auto exits = simulate_exits({0.5, 0.5}, ProblemSpec<double>(-0.4, 2.0), cfg);
  for (const auto& e : exits) {
    EXPECT_GE(e.alpha, 0.0);
    EXPECT_LT(e.alpha, 2 * M_PI);
    EXPECT_GT(e.t_exit, 0.0);
  }
}

TEST(SimulateExits, MeanExitTimeFromTheCentre) {
  // E[exit time] from the centre is R^2 / 2 for every rho
  for (double rho : {0.0, 0.6}) {
    SimConfig cfg;
    cfg.n_paths = 20000;
    const auto exits = simulate_exits({0, 0}, ProblemSpec<double>(rho, 1.0), cfg);
    double mean = 0, sq = 0;
    for (const auto& e : exits) {
      mean += e.t_exit;
      sq += e.t_exit * e.t_exit;
    }
    mean /= exits.size();
    const double sd = std::sqrt(sq / exits.size() - mean * mean);
    EXPECT_NEAR(mean, 0.5, 4 * sd / std::sqrt(static_cast<double>(exits.size())) + 5e-3) << "rho " << rho;
  }
}

TEST(SimulateExits, UniformFromTheCentreWithoutCorrelation) {
  SimConfig cfg;
  cfg.n_paths = 36000;
  const auto exits = simulate_exits({0, 0}, ProblemSpec<double>(0.0, 1.0), cfg);
  const int bins = 36;
  const auto masses = empirical_masses(exits, bins);
  double chi2 = 0;
  const double expected = static_cast<double>(cfg.n_paths) / bins;
  for (double m : masses) {
    const double count = m * static_cast<double>(cfg.n_paths);
    chi2 += (count - expected) * (count - expected) / expected;
  }
  // 35 degrees of freedom: P(chi2 > 70) is about 4e-4
  EXPECT_LT(chi2, 70.0);
}

TEST(SimulateExits, MatchesPoissonKernelWithoutCorrelation) {
  SimConfig cfg;
  cfg.n_paths = 100000;
  const ProblemSpec<double> spec(0.0, 1.0);
  const auto exits = simulate_exits({0.5, 0.1}, spec, cfg);
  const auto analytic = bin_masses({0.5, 0.1}, spec, Method::annulus, {}, 72);
  EXPECT_LT(total_variation(empirical_masses(exits, 72), analytic), 0.02);
}

TEST(SimulateExits, LeapingMatchesPlainEuler) {
  SimConfig cfg;
  cfg.n_paths = 20000;
  cfg.dt = 1e-4;
  const ProblemSpec<double> spec(0.5, 1.0);
  const auto leap = simulate_exits({0.4, -0.2}, spec, cfg);
  cfg.leap = false;
  const auto plain = simulate_exits({0.4, -0.2}, spec, cfg);
  const int bins = 24;
  // two independent samples of 20000: TV noise is about 0.02 over 24 bins
  EXPECT_LT(total_variation(empirical_masses(leap, bins), empirical_masses(plain, bins)), 0.03);
}

TEST(SimulateExits, BoundaryModesDifferOnlyByOvershoot) {
  SimConfig cfg;
  cfg.n_paths = 3000;
  cfg.dt = 1e-4;
  const ProblemSpec<double> spec(0.7, 1.0);
  const auto inter = simulate_exits({0.1, 0.1}, spec, cfg);
  cfg.boundary_mode = BoundaryMode::reject_overshoot;
  const auto reject = simulate_exits({0.1, 0.1}, spec, cfg);
  double worst = 0;
  for (std::size_t i = 0; i < inter.size(); ++i) {
    worst = std::max(worst, std::abs(angle_difference(inter[i].alpha, reject[i].alpha)));
    EXPECT_LE(inter[i].t_exit, reject[i].t_exit);
  }
  // same random stream; the final angles differ by at most a few step lengths
  EXPECT_LT(worst, 0.1);
}

TEST(SimulateExits, SmallerStepsApproachTheAnalyticProfile) {
  const ProblemSpec<double> spec(0.5, 1.0);
  const CartesianPoint<double> start{0.6, 0.2};
  const auto analytic = bin_masses(start, spec, Method::annulus, {}, 12);
  SimConfig cfg;
  cfg.n_paths = 40000;
  cfg.boundary_mode = BoundaryMode::reject_overshoot;
  cfg.dt = 1e-2;
  const double coarse = total_variation(empirical_masses(simulate_exits(start, spec, cfg), 12), analytic);
  cfg.dt = 1e-5;
  const double fine = total_variation(empirical_masses(simulate_exits(start, spec, cfg), 12), analytic);
  EXPECT_LT(fine, coarse);
}

TEST(EmpiricalProfile, NormalizedHistogram) {
  std::vector<ExitSample> samples;
  for (int i = 0; i < 1000; ++i) samples.push_back({2 * M_PI * (i + 0.5) / 1000, 1.0});
  const auto profile = empirical_profile(samples, 10);
  ASSERT_EQ(profile.values.size(), 10u);
  EXPECT_NEAR(profile.integral(), 1.0, 1e-14);
  EXPECT_EQ(profile.meta.method, Method::montecarlo);
  EXPECT_EQ(profile.meta.n_samples, 1000u);
  EXPECT_NEAR(profile.alphas.front(), M_PI / 10, 1e-15);
  for (double v : profile.values) EXPECT_NEAR(v, 1 / (2 * M_PI), 1e-12);
  const auto masses = empirical_masses(samples, 10);
  EXPECT_NEAR(std::accumulate(masses.begin(), masses.end(), 0.0), 1.0, 1e-15);
  EXPECT_THROW(empirical_profile(std::vector<ExitSample>{}, 10), InvalidArgument);
  EXPECT_THROW(empirical_profile(samples, 4), InvalidArgument);
}

}  // namespace
}  // namespace hitdisk
