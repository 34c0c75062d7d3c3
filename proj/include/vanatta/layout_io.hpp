#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "vanatta/geometry.hpp"

namespace vanatta::geometry {

/// JSON document with wavelength_m, center_xy_m, absorption_efficiency,
/// elements[{id, x_m, y_m, pair_id}] and lines[{pair_id, base_length_m, has_switch}].
std::string export_layout(const SurfaceLayout& layout);

/// Inverse of export_layout. Throws IoError on malformed input.
SurfaceLayout import_layout(std::string_view text);

void save_layout(const SurfaceLayout& layout, const std::filesystem::path& path);
SurfaceLayout load_layout(const std::filesystem::path& path);

}  // namespace vanatta::geometry
