#pragma once

#include <iosfwd>

#include <nlohmann/json.hpp>

#include "hitdisk/density.hpp"

namespace hitdisk {

/// CSV with header "alpha,density", '.' decimal separator, 17 significant digits.
/// With arc_length set the second column is density per unit length, "density_per_length".
void write_csv(std::ostream& out, const DensityProfile& profile, bool arc_length = false);

/// Reads the two columns written by write_csv; meta is left default.
DensityProfile read_csv(std::istream& in);

nlohmann::json meta_to_json(const ProfileMeta& meta);
nlohmann::json to_json(const DensityProfile& profile, bool arc_length = false);
DensityProfile profile_from_json(const nlohmann::json& j);

}  // namespace hitdisk
