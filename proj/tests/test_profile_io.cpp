#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "hitdisk/profile_io.hpp"

namespace hitdisk {
namespace {

DensityProfile sample_profile() {
  return density_profile({0.2, -0.1}, ProblemSpec<double>(0.5, 2.0), Method::annulus, {}, 64);
}

TEST(Csv, RoundTripsToFullPrecision) {
  const auto profile = sample_profile();
  std::stringstream io;
  write_csv(io, profile);
  const auto back = read_csv(io);
  EXPECT_EQ(back.alphas, profile.alphas);
  EXPECT_EQ(back.values, profile.values);
}

TEST(Csv, RoundTripsArbitraryDoubles) {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  DensityProfile p;
  for (int i = 0; i < 500; ++i) {
    p.alphas.push_back(u(rng));
    p.values.push_back(std::ldexp(u(rng), static_cast<int>(rng() % 200) - 100));
  }
  p.values.push_back(0.0);
  p.alphas.push_back(5e-324);
  std::stringstream io;
  write_csv(io, p);
  const auto back = read_csv(io);
  EXPECT_EQ(back.alphas, p.alphas);
  EXPECT_EQ(back.values, p.values);
}

TEST(Csv, HeaderAndLocaleIndependence) {
  const auto profile = sample_profile();
  std::ostringstream out;
  out.imbue(std::locale::classic());
  write_csv(out, profile);
  const std::string text = out.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "alpha,density");
  EXPECT_EQ(text.find(';'), std::string::npos);

  std::ostringstream per_length;
  write_csv(per_length, profile, true);
  const std::string scaled = per_length.str();
  EXPECT_EQ(scaled.substr(0, scaled.find('\n')), "alpha,density_per_length");
  std::istringstream in(scaled);
  const auto back = read_csv(in);
  for (std::size_t i = 0; i < back.values.size(); ++i) {
    EXPECT_DOUBLE_EQ(back.values[i], profile.values[i] / 2.0);
  }
}

TEST(Csv, RejectsMalformedRows) {
  std::istringstream missing("alpha,density\n0.1 0.2\n");
  EXPECT_THROW(read_csv(missing), InvalidArgument);
  std::istringstream bad("alpha,density\n0.1,abc\n");
  EXPECT_THROW(read_csv(bad), InvalidArgument);
  std::istringstream empty("");
  EXPECT_THROW(read_csv(empty), InvalidArgument);
}

TEST(Json, CarriesProfileAndMeta) {
  const auto profile = sample_profile();
  const auto j = to_json(profile);
  EXPECT_EQ(j.at("meta").at("method"), "annulus");
  EXPECT_EQ(j.at("meta").at("R"), 2.0);
  EXPECT_EQ(j.at("alpha").size(), 64u);
  const auto back = profile_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(back.alphas, profile.alphas);
  EXPECT_EQ(back.values, profile.values);
  EXPECT_EQ(back.meta.method, profile.meta.method);
  EXPECT_EQ(back.meta.rho, profile.meta.rho);
  EXPECT_EQ(back.meta.start.x, profile.meta.start.x);
  EXPECT_EQ(back.meta.series.max_terms, profile.meta.series.max_terms);
  EXPECT_EQ(back.meta.normalization_residual, profile.meta.normalization_residual);
  EXPECT_TRUE(to_json(profile, true).contains("density_per_length"));
}

}  // namespace
}  // namespace hitdisk
