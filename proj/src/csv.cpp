#include "vanatta/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "vanatta/errors.hpp"

namespace vanatta::csv {

std::string number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

double to_db(double magnitude) {
  return magnitude > 0.0 ? 20.0 * std::log10(magnitude) : -INFINITY;
}

std::string pattern(const emfield::FieldPattern& p) {
  std::string out = "angle_deg,re_v_per_m,im_v_per_m,mag_v_per_m,mag_db\n";
  for (const auto& s : p.samples) {
    const double mag = std::abs(s.field);
    out += number(s.angle_deg) + "," + number(s.field.real()) + "," + number(s.field.imag()) + "," +
           number(mag) + "," + number(to_db(mag)) + "\n";
  }
  return out;
}

std::string range_profile(const fmcw::RangeProfile& profile) {
  std::string out = "range_m,mag,mag_db\n";
  for (std::size_t k = 0; k < profile.size(); ++k) {
    const double mag = profile.magnitude(k);
    out += number(profile.range_of(k)) + "," + number(mag) + "," + number(to_db(mag)) + "\n";
  }
  return out;
}

std::string range_doppler(const fmcw::RangeDopplerMap& map) {
  std::string out = "range_m,velocity_mps,mag_db\n";
  for (std::size_t r = 0; r < map.range_bins; ++r) {
    for (std::size_t d = 0; d < map.doppler_bins; ++d) {
      out += number(map.range_of(r)) + "," + number(map.velocity_of(d)) + "," +
             number(to_db(std::abs(map.at(r, d)))) + "\n";
    }
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace vanatta::csv
