#include "hitdisk/profile_io.hpp"

#include <charconv>
#include <istream>
#include <locale>
#include <ostream>
#include <sstream>
#include <string>

namespace hitdisk {

namespace {

double scale_for(const DensityProfile& profile, bool arc_length) {
  return arc_length ? 1.0 / profile.meta.radius : 1.0;
}

double parse_number(const std::string& field, std::size_t line) {
  double value = 0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  while (first < last && *first == ' ') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw InvalidArgument("read_csv: bad number '" + field + "' on line " + std::to_string(line));
  }
  return value;
}

}  // namespace

void write_csv(std::ostream& out, const DensityProfile& profile, bool arc_length) {
  std::ostringstream buf;
  buf.imbue(std::locale::classic());
  buf.precision(17);
  buf << "alpha," << (arc_length ? "density_per_length" : "density") << '\n';
  const double scale = scale_for(profile, arc_length);
  for (std::size_t i = 0; i < profile.alphas.size(); ++i) {
    buf << profile.alphas[i] << ',' << profile.values[i] * scale << '\n';
  }
  out << buf.str();
}

DensityProfile read_csv(std::istream& in) {
  DensityProfile profile;
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("read_csv: empty input");
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw InvalidArgument("read_csv: missing comma on line " + std::to_string(lineno));
    }
    profile.alphas.push_back(parse_number(line.substr(0, comma), lineno));
    profile.values.push_back(parse_number(line.substr(comma + 1), lineno));
  }
  return profile;
}

nlohmann::json meta_to_json(const ProfileMeta& meta) {
  return {
      {"method", std::string(to_string(meta.method))},
      {"rho", meta.rho},
      {"R", meta.radius},
      {"start", {meta.start.x, meta.start.y}},
      {"series", {{"max_terms", meta.series.max_terms}, {"tail_tol", meta.series.tail_tol}}},
      {"normalization_residual", meta.normalization_residual},
      {"near_boundary", meta.near_boundary},
      {"series_truncated", meta.series_truncated},
      {"n_samples", meta.n_samples},
  };
}

nlohmann::json to_json(const DensityProfile& profile, bool arc_length) {
  const double scale = scale_for(profile, arc_length);
  std::vector<double> values(profile.values);
  for (double& v : values) v *= scale;
  return {
      {"alpha", profile.alphas},
      {arc_length ? "density_per_length" : "density", values},
      {"meta", meta_to_json(profile.meta)},
  };
}

DensityProfile profile_from_json(const nlohmann::json& j) {
  DensityProfile profile;
  profile.alphas = j.at("alpha").get<std::vector<double>>();
  profile.values = j.at("density").get<std::vector<double>>();
  const auto& m = j.at("meta");
  profile.meta.method = parse_method(m.at("method").get<std::string>());
  profile.meta.rho = m.at("rho").get<double>();
  profile.meta.radius = m.at("R").get<double>();
  profile.meta.start = {m.at("start").at(0).get<double>(), m.at("start").at(1).get<double>()};
  profile.meta.series.max_terms = m.at("series").at("max_terms").get<int>();
  profile.meta.series.tail_tol = m.at("series").at("tail_tol").get<double>();
  profile.meta.normalization_residual = m.at("normalization_residual").get<double>();
  profile.meta.near_boundary = m.at("near_boundary").get<bool>();
  profile.meta.series_truncated = m.at("series_truncated").get<bool>();
  profile.meta.n_samples = m.at("n_samples").get<std::size_t>();
  return profile;
}

}  // namespace hitdisk
