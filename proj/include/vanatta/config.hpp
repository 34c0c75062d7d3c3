#pragma once

// Scenario configuration: flat `key = value` text with dotted section names,
// `#` starts a comment. See configs/default.conf for the full schema.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vanatta/emfield.hpp"
#include "vanatta/fmcw.hpp"
#include "vanatta/geometry.hpp"

namespace vanatta::config {

struct ScenarioConfig {
  double frequency_hz = 24e9;
  double incidence_angle_deg = 30.0;
  double incident_amplitude = 1.0;  // V/m
  std::uint64_t seed = 1;
  std::string output_dir = "out";

  std::string layout_builder = "linear";  // linear | concentric | file
  int layout_pairs = 2;
  double layout_spacing_wavelengths = 0.5;
  int layout_rings = 2;
  double layout_base_radius_wavelengths = 1.0;
  std::string layout_file;

  double absorption_efficiency = geometry::kDefaultAbsorptionEfficiency;
  std::string element_pattern = "isotropic";  // isotropic | cosine
  double switch_loss_db = 0.0;

  double bandwidth_hz = 250e6;
  double chirp_s = 0.5e-3;
  double sample_rate_hz = 2e6;
  int chirps_per_frame = 64;
  double threshold_db = fmcw::kDefaultThresholdDb;
  std::string distance_scaling = "one_way";  // one_way | two_way

  double target_range_m = 50.0;
  double target_velocity_mps = 0.0;

  double plate_width_m = 0.025;
  double plate_normalization = 1.0;

  std::string link_bits;  // explicit payload; random when empty
  int link_n_bits = 1024;
  double switch_interval_s = 1e-3;

  double snr_db = 10.0;               // per-chirp SNR of the constructive echo
  std::optional<double> noise_power;  // overrides snr_db when set

  double grid_step_deg = emfield::kDefaultGridStepDeg;

  double range_min_m = 1.0;
  double range_max_m = 100.0;
  int range_points = 100;
  std::optional<double> range_gain_db;

  std::vector<int> scale_n_elements{2, 4, 8, 16};

  std::string sweep_kind = "ber";  // ber | angle
  std::vector<double> sweep_snr_db{-45.0, -40.0, -35.0, -30.0, -25.0, -20.0};
  int sweep_seeds = 30;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Throws IoError on unknown keys or malformed values.
ScenarioConfig parse(std::string_view text);
/// Every key, one per line; parse(render(c)) == c.
std::string render(const ScenarioConfig& config);
ScenarioConfig load(const std::filesystem::path& path);

/// Layout described by the config (file layouts are loaded, not validated).
geometry::SurfaceLayout make_layout(const ScenarioConfig& config);
emfield::ResponseOptions response_options(const ScenarioConfig& config);
emfield::PlaneWave plane_wave(const ScenarioConfig& config);
fmcw::ChirpParams chirp_params(const ScenarioConfig& config);
fmcw::DistanceScaling distance_scaling(const ScenarioConfig& config);

}  // namespace vanatta::config
