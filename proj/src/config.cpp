#include "vanatta/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <type_traits>

#include "vanatta/errors.hpp"
#include "vanatta/layout_io.hpp"

namespace vanatta::config {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
  throw IoError("invalid value '" + std::string(value) + "' for key '" + std::string(key) + "'");
}

template <class T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) bad_value(key, text);
  return value;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class T>
std::vector<T> parse_list(std::string_view key, std::string_view text) {
  std::vector<T> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    out.push_back(parse_number<T>(key, trim(text.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

template <class T>
std::string format_list(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ",";
    if constexpr (std::is_floating_point_v<T>) {
      out += format_double(values[i]);
    } else {
      out += std::to_string(values[i]);
    }
  }
  return out;
}

struct Field {
  std::string_view key;
  std::function<void(ScenarioConfig&, std::string_view)> set;
  // nullopt: omitted from the rendered document
  std::function<std::optional<std::string>(const ScenarioConfig&)> get;
};

template <class T>
Field field(std::string_view key, T ScenarioConfig::*member) {
  Field f{key, nullptr, nullptr};
  f.set = [key, member](ScenarioConfig& c, std::string_view v) {
    if constexpr (std::is_same_v<T, std::string>) {
      c.*member = std::string(v);
    } else if constexpr (std::is_same_v<T, std::optional<double>>) {
      c.*member = v.empty() ? std::nullopt : std::optional<double>(parse_number<double>(key, v));
    } else if constexpr (std::is_same_v<T, std::vector<int>>) {
      c.*member = parse_list<int>(key, v);
    } else if constexpr (std::is_same_v<T, std::vector<double>>) {
      c.*member = parse_list<double>(key, v);
    } else {
      c.*member = parse_number<T>(key, v);
    }
  };
  f.get = [member](const ScenarioConfig& c) -> std::optional<std::string> {
    const T& v = c.*member;
    if constexpr (std::is_same_v<T, std::string>) {
      return v;
    } else if constexpr (std::is_same_v<T, std::optional<double>>) {
      if (!v) return std::nullopt;
      return format_double(*v);
    } else if constexpr (std::is_same_v<T, std::vector<int>> || std::is_same_v<T, std::vector<double>>) {
      return format_list(v);
    } else if constexpr (std::is_floating_point_v<T>) {
      return format_double(v);
    } else {
      return std::to_string(v);
    }
  };
  return f;
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      field("frequency_hz", &ScenarioConfig::frequency_hz),
      field("incidence_angle_deg", &ScenarioConfig::incidence_angle_deg),
      field("incident_amplitude_v_per_m", &ScenarioConfig::incident_amplitude),
      field("seed", &ScenarioConfig::seed),
      field("output.dir", &ScenarioConfig::output_dir),
      field("layout.builder", &ScenarioConfig::layout_builder),
      field("layout.n_pairs", &ScenarioConfig::layout_pairs),
      field("layout.spacing_wavelengths", &ScenarioConfig::layout_spacing_wavelengths),
      field("layout.n_rings", &ScenarioConfig::layout_rings),
      field("layout.base_radius_wavelengths", &ScenarioConfig::layout_base_radius_wavelengths),
      field("layout.file", &ScenarioConfig::layout_file),
      field("surface.absorption_efficiency", &ScenarioConfig::absorption_efficiency),
      field("surface.element_pattern", &ScenarioConfig::element_pattern),
      field("surface.switch_loss_db", &ScenarioConfig::switch_loss_db),
      field("radar.bandwidth_hz", &ScenarioConfig::bandwidth_hz),
      field("radar.chirp_s", &ScenarioConfig::chirp_s),
      field("radar.sample_rate_hz", &ScenarioConfig::sample_rate_hz),
      field("radar.chirps_per_frame", &ScenarioConfig::chirps_per_frame),
      field("radar.threshold_db", &ScenarioConfig::threshold_db),
      field("radar.distance_scaling", &ScenarioConfig::distance_scaling),
      field("target.range_m", &ScenarioConfig::target_range_m),
      field("target.velocity_mps", &ScenarioConfig::target_velocity_mps),
      field("plate.width_m", &ScenarioConfig::plate_width_m),
      field("plate.normalization", &ScenarioConfig::plate_normalization),
      field("link.bits", &ScenarioConfig::link_bits),
      field("link.n_bits", &ScenarioConfig::link_n_bits),
      field("link.switch_interval_s", &ScenarioConfig::switch_interval_s),
      field("noise.snr_db", &ScenarioConfig::snr_db),
      field("noise.power", &ScenarioConfig::noise_power),
      field("pattern.grid_step_deg", &ScenarioConfig::grid_step_deg),
      field("range.min_m", &ScenarioConfig::range_min_m),
      field("range.max_m", &ScenarioConfig::range_max_m),
      field("range.points", &ScenarioConfig::range_points),
      field("range.gain_db", &ScenarioConfig::range_gain_db),
      field("scale.n_elements", &ScenarioConfig::scale_n_elements),
      field("sweep.kind", &ScenarioConfig::sweep_kind),
      field("sweep.snr_db", &ScenarioConfig::sweep_snr_db),
      field("sweep.seeds", &ScenarioConfig::sweep_seeds),
  };
  return table;
}

}  // namespace

ScenarioConfig parse(std::string_view text) {
  ScenarioConfig config;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw IoError("config line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    const auto& table = fields();
    auto it = std::find_if(table.begin(), table.end(), [key](const Field& f) { return f.key == key; });
    if (it == table.end()) {
      throw IoError("config line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
    }
    it->set(config, value);
  }
  return config;
}

std::string render(const ScenarioConfig& config) {
  std::string out;
  for (const auto& f : fields()) {
    if (auto value = f.get(config)) {
      out += std::string(f.key) + " = " + *value + "\n";
    }
  }
  return out;
}

ScenarioConfig load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

geometry::SurfaceLayout make_layout(const ScenarioConfig& c) {
  geometry::SurfaceLayout layout;
  if (c.layout_builder == "file") {
    if (c.layout_file.empty()) throw IoError("layout.builder = file needs layout.file");
    layout = geometry::load_layout(c.layout_file);
  } else {
    const double wl = geometry::wavelength_of(c.frequency_hz);
    if (c.layout_builder == "linear") {
      layout = geometry::build_linear_array(c.layout_pairs, c.layout_spacing_wavelengths * wl, wl);
    } else if (c.layout_builder == "concentric") {
      layout = geometry::build_concentric_surface(c.layout_rings,
                                                  c.layout_base_radius_wavelengths * wl, wl);
    } else {
      throw IoError("unknown layout.builder '" + c.layout_builder + "'");
    }
    layout.absorption_efficiency = c.absorption_efficiency;
  }
  return layout;
}

emfield::ResponseOptions response_options(const ScenarioConfig& c) {
  emfield::ResponseOptions o;
  if (c.element_pattern == "isotropic") {
    o.element_pattern = emfield::ElementPattern::isotropic;
  } else if (c.element_pattern == "cosine") {
    o.element_pattern = emfield::ElementPattern::cosine;
  } else {
    throw IoError("unknown surface.element_pattern '" + c.element_pattern + "'");
  }
  o.switch_loss_db = c.switch_loss_db;
  return o;
}

emfield::PlaneWave plane_wave(const ScenarioConfig& c) {
  return {c.frequency_hz, c.incidence_angle_deg, c.incident_amplitude};
}

fmcw::ChirpParams chirp_params(const ScenarioConfig& c) {
  fmcw::ChirpParams p;
  p.start_frequency = c.frequency_hz;
  p.bandwidth = c.bandwidth_hz;
  p.chirp_duration = c.chirp_s;
  p.sample_rate = c.sample_rate_hz;
  p.chirps_per_frame = c.chirps_per_frame;
  return p;
}

fmcw::DistanceScaling distance_scaling(const ScenarioConfig& c) {
  if (c.distance_scaling == "one_way") return fmcw::DistanceScaling::one_way;
  if (c.distance_scaling == "two_way") return fmcw::DistanceScaling::two_way;
  throw IoError("unknown radar.distance_scaling '" + c.distance_scaling + "'");
}

}  // namespace vanatta::config
