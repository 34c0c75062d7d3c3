#pragma once

// Plot-ready CSV output: decimal point, 12 significant digits, "inf"/"-inf"
// for non-finite values.

#include <complex>
#include <filesystem>
#include <string>

#include "vanatta/emfield.hpp"
#include "vanatta/fmcw.hpp"

namespace vanatta::csv {

std::string number(double value);
/// 20 log10(magnitude); -inf for zero.
double to_db(double magnitude);

/// angle_deg,re_v_per_m,im_v_per_m,mag_v_per_m,mag_db
std::string pattern(const emfield::FieldPattern& pattern);
/// range_m,mag,mag_db
std::string range_profile(const fmcw::RangeProfile& profile);
/// range_m,velocity_mps,mag_db
std::string range_doppler(const fmcw::RangeDopplerMap& map);

void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace vanatta::csv
