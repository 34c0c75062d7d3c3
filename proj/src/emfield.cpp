#include "vanatta/emfield.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "vanatta/constants.hpp"
#include "vanatta/errors.hpp"

namespace vanatta::emfield {

namespace {

constexpr double kGridEps = 1e-9;

void check_observation_grid(std::span<const double> grid) {
  if (grid.empty()) throw DomainError("angle grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= -90.0 && grid[i] <= 90.0)) {
      throw DomainError("observation angle " + std::to_string(grid[i]) + " outside [-90, 90]");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) throw DomainError("angle grid must be strictly increasing");
  }
}

double sinc(double x) { return x == 0.0 ? 1.0 : std::sin(x) / x; }

}  // namespace

double PlaneWave::wavelength() const { return geometry::wavelength_of(frequency); }
double PlaneWave::wavenumber() const { return kTwoPi / wavelength(); }

std::size_t FieldPattern::argmax() const {
  if (samples.empty()) throw DomainError("empty pattern");
  auto it = std::max_element(samples.begin(), samples.end(), [](const auto& a, const auto& b) {
    return std::abs(a.field) < std::abs(b.field);
  });
  return static_cast<std::size_t>(it - samples.begin());
}

Surface::Surface(geometry::SurfaceLayout layout, ResponseOptions options)
    : layout_(std::move(layout)), options_(options) {
  const auto report = geometry::validate_layout(layout_);
  if (!report.passed()) {
    std::ostringstream msg;
    msg << "layout fails validation:";
    for (const auto& v : report.violations) {
      msg << ' ' << geometry::rule_name(v.rule) << "(dev=" << v.deviation << " m)";
    }
    throw PreconditionError(msg.str());
  }
  if (!(layout_.absorption_efficiency >= 0.0 && layout_.absorption_efficiency <= 1.0)) {
    throw PreconditionError("absorption_efficiency must lie in [0, 1]");
  }
  if (!(options_.switch_loss_db >= 0.0)) throw DomainError("switch_loss_db must be >= 0");
  if (!(options_.reference_distance > 0.0)) throw DomainError("reference_distance must be > 0");
}

void Surface::check_config(const SwitchConfig& config) const {
  for (int pair : config.toggled) {
    const auto* line = layout_.line_for(pair);
    if (line == nullptr) throw ConfigurationError("toggled pair " + std::to_string(pair) + " does not exist");
    if (!line->has_switch) throw ConfigurationError("pair " + std::to_string(pair) + " has no switch");
  }
}

void Surface::check_wave(const PlaneWave& wave) const {
  if (!(std::abs(wave.incidence_angle_deg) < 90.0)) {
    throw DomainError("incidence angle must satisfy |theta| < 90 deg");
  }
  if (!(wave.amplitude > 0.0)) throw DomainError("incident amplitude must be > 0");
  const double detuning = std::abs(wave.wavelength() - layout_.wavelength) / layout_.wavelength;
  if (!options_.allow_detuned && detuning > kMaxDetuning) {
    throw DetunedError("wave wavelength differs from the design wavelength by " +
                       std::to_string(100.0 * detuning) + " %");
  }
}

double Surface::element_factor(double incidence_deg, double observation_deg) const {
  if (options_.element_pattern == ElementPattern::isotropic) return 1.0;
  return std::cos(deg2rad(incidence_deg)) * std::cos(deg2rad(observation_deg));
}

std::vector<kernels::PropagationPath> Surface::paths(const SwitchConfig& config) const {
  check_config(config);
  const double engaged_weight = std::pow(10.0, -options_.switch_loss_db / 20.0);
  std::vector<kernels::PropagationPath> out;
  out.reserve(2 * layout_.lines.size());
  for (const auto& line : layout_.lines) {
    auto [a, b] = layout_.pair_elements(line.pair_id);
    const bool on = config.toggled.contains(line.pair_id);
    const double length = line.base_length + (on ? line.switched_extra_length : 0.0);
    const double weight = on ? engaged_weight : 1.0;
    const double xa = a->position.x - layout_.center.x;
    const double xb = b->position.x - layout_.center.x;
    out.push_back({xa, xb, length, weight});
    out.push_back({xb, xa, length, weight});
  }
  return out;
}

double Surface::single_element_amplitude(const PlaneWave& wave, double observation_angle_deg) const {
  return wave.amplitude * std::sqrt(layout_.absorption_efficiency) *
         element_factor(wave.incidence_angle_deg, observation_angle_deg) *
         (kReferenceDistance / options_.reference_distance);
}

Complex Surface::response(const SwitchConfig& config, const PlaneWave& wave,
                          double observation_angle_deg) const {
  const double grid[] = {observation_angle_deg};
  return pattern(config, wave, grid).samples.front().field;
}

FieldPattern Surface::pattern(const SwitchConfig& config, const PlaneWave& wave,
                              std::span<const double> angle_grid_deg) const {
  check_wave(wave);
  check_observation_grid(angle_grid_deg);
  const auto route = paths(config);
  std::vector<double> sin_obs(angle_grid_deg.size());
  std::transform(angle_grid_deg.begin(), angle_grid_deg.end(), sin_obs.begin(),
                 [](double a) { return std::sin(deg2rad(a)); });
  std::vector<Complex> sums(angle_grid_deg.size());
  kernels::omp::path_sum(route, wave.wavenumber(), std::sin(deg2rad(wave.incidence_angle_deg)),
                         sin_obs, sums);

  FieldPattern result;
  result.reference_distance = options_.reference_distance;
  result.samples.reserve(sums.size());
  for (std::size_t i = 0; i < sums.size(); ++i) {
    result.samples.push_back(
        {angle_grid_deg[i], sums[i] * single_element_amplitude(wave, angle_grid_deg[i])});
  }
  return result;
}

Complex roundtrip_response(const geometry::SurfaceLayout& layout, const SwitchConfig& config,
                           const PlaneWave& wave, double observation_angle_deg,
                           const ResponseOptions& options) {
  return Surface(layout, options).response(config, wave, observation_angle_deg);
}

FieldPattern field_pattern(const geometry::SurfaceLayout& layout, const SwitchConfig& config,
                           const PlaneWave& wave, std::span<const double> angle_grid_deg,
                           const ResponseOptions& options) {
  return Surface(layout, options).pattern(config, wave, angle_grid_deg);
}

std::vector<double> angle_grid(double lo_deg, double hi_deg, double step_deg) {
  if (!(step_deg > 0.0)) throw DomainError("grid step must be > 0");
  if (!(hi_deg >= lo_deg)) throw DomainError("grid upper bound below lower bound");
  const auto count = static_cast<std::size_t>(std::floor((hi_deg - lo_deg) / step_deg + kGridEps)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = lo_deg + static_cast<double>(i) * step_deg;
  return grid;
}

std::vector<double> default_grid(double step_deg) { return angle_grid(-90.0, 90.0, step_deg); }

double plate_monostatic(double width, const PlaneWave& wave, const PlateOptions& options) {
  if (!(width > 0.0)) throw DomainError("plate width must be > 0");
  if (!(std::abs(wave.incidence_angle_deg) <= 90.0)) throw DomainError("incidence outside [-90, 90]");
  const double theta = deg2rad(wave.incidence_angle_deg);
  const double arg = wave.wavenumber() * width * std::sin(theta);
  return wave.amplitude * options.normalization * std::cos(theta) * sinc(arg) *
         (kReferenceDistance / options.reference_distance);
}

FieldPattern plate_baseline_pattern(double width, const PlaneWave& wave,
                                    std::span<const double> angle_grid_deg,
                                    const PlateOptions& options) {
  check_observation_grid(angle_grid_deg);
  FieldPattern result;
  result.reference_distance = options.reference_distance;
  for (double angle : angle_grid_deg) {
    PlaneWave w = wave;
    w.incidence_angle_deg = angle;
    result.samples.push_back({angle, Complex(plate_monostatic(width, w, options), 0.0)});
  }
  return result;
}

double far_field_amplitude(double amplitude_at_ref, double reference_distance, double distance) {
  if (!(reference_distance > 0.0) || !(distance > 0.0)) {
    throw DomainError("distances must be > 0");
  }
  return amplitude_at_ref * reference_distance / distance;
}

Gain monostatic_gain_db(const geometry::SurfaceLayout& layout, const SwitchConfig& config,
                        const PlaneWave& wave, double plate_width, const ResponseOptions& options,
                        const PlateOptions& plate) {
  const double surface =
      std::abs(roundtrip_response(layout, config, wave, wave.incidence_angle_deg, options));
  const double reference = std::abs(plate_monostatic(plate_width, wave, plate));
  if (reference == 0.0) return {std::numeric_limits<double>::infinity(), true};
  return {20.0 * std::log10(surface / reference), false};
}

double modulation_depth_db(const Surface& surface, const SwitchConfig& on, const SwitchConfig& off,
                           const PlaneWave& wave) {
  const double a = std::abs(surface.response(on, wave, wave.incidence_angle_deg));
  const double b = std::abs(surface.response(off, wave, wave.incidence_angle_deg));
  if (b == 0.0) return std::numeric_limits<double>::infinity();
  return 20.0 * std::log10(a / b);
}

double range_extension(double gain_db) {
  if (!std::isfinite(gain_db)) throw DomainError("gain must be finite");
  return std::pow(10.0, gain_db / 20.0);
}

std::vector<ScalingPoint> scaling_sweep(std::span<const int> n_elements, double spacing,
                                        const PlaneWave& wave, const ResponseOptions& options) {
  std::vector<ScalingPoint> out;
  for (int n : n_elements) {
    if (n < 2 || n % 2 != 0) {
      throw DomainError("element count must be even and >= 2, got " + std::to_string(n));
    }
  }
  for (int n : n_elements) {
    const Surface surface(geometry::build_linear_array(n / 2, spacing, wave.wavelength()), options);
    const double retro = std::abs(surface.response({}, wave, wave.incidence_angle_deg));
    const double single = surface.single_element_amplitude(wave, wave.incidence_angle_deg);
    out.push_back({n, retro, retro / single});
  }
  return out;
}

double switch_loss_for_depth_db(double depth_db) {
  const double ratio = std::pow(10.0, depth_db / 20.0);
  if (!(ratio > 2.0)) throw DomainError("depth must exceed 20 log10(2) dB");
  // constructive / destructive = n / ((n/2)(1 - a))  =>  a = 1 - 2 / ratio
  const double weight = 1.0 - 2.0 / ratio;
  return -20.0 * std::log10(weight);
}

}  // namespace vanatta::emfield
