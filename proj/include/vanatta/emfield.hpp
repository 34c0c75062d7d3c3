#pragma once

// Reflected far field of a Van Atta surface and of a flat metal plate, in
// the azimuth cut (observation direction in the plane spanned by the array
// x axis and the surface normal).

#include <complex>
#include <cstddef>
#include <set>
#include <span>
#include <vector>

#include "vanatta/geometry.hpp"
#include "vanatta/kernels.hpp"

namespace vanatta::emfield {

using Complex = std::complex<double>;

inline constexpr double kReferenceDistance = 1.0;  // meters
inline constexpr double kDefaultGridStepDeg = 0.25;
/// Largest relative mismatch between wave and design wavelength accepted by default.
inline constexpr double kMaxDetuning = 0.10;

struct PlaneWave {
  double frequency = 24e9;          // Hz
  double incidence_angle_deg = 0.0; // from the surface normal
  double amplitude = 1.0;           // incident E, V/m

  double wavelength() const;
  double wavenumber() const;
};

/// Pair ids whose λ/2 switch is engaged.
struct SwitchConfig {
  std::set<int> toggled;

  friend bool operator==(const SwitchConfig&, const SwitchConfig&) = default;
};

enum class ElementPattern { isotropic, cosine };

struct ResponseOptions {
  ElementPattern element_pattern = ElementPattern::isotropic;
  /// Extra loss of an engaged switch path, dB (>= 0). Zero in the ideal model.
  double switch_loss_db = 0.0;
  double reference_distance = kReferenceDistance;
  /// Skip the ±10 % wavelength-match precondition.
  bool allow_detuned = false;
};

struct PatternSample {
  double angle_deg = 0.0;
  Complex field;  // V/m at reference_distance
};

struct FieldPattern {
  double reference_distance = kReferenceDistance;
  std::vector<PatternSample> samples;

  /// Index of the sample with the largest magnitude.
  std::size_t argmax() const;
  double peak_angle_deg() const { return samples.at(argmax()).angle_deg; }
};

/// A validated layout with its propagation paths precomputed. Construction
/// throws PreconditionError if validate_layout fails.
class Surface {
 public:
  explicit Surface(geometry::SurfaceLayout layout, ResponseOptions options = {});

  const geometry::SurfaceLayout& layout() const { return layout_; }
  const ResponseOptions& options() const { return options_; }

  /// Complex reflected field toward observation_angle_deg.
  Complex response(const SwitchConfig& config, const PlaneWave& wave,
                   double observation_angle_deg) const;

  FieldPattern pattern(const SwitchConfig& config, const PlaneWave& wave,
                       std::span<const double> angle_grid_deg) const;

  /// |field| of one absorb/re-radiate path with unit weight, i.e. the
  /// contribution of a single element.
  double single_element_amplitude(const PlaneWave& wave, double observation_angle_deg) const;

  /// All absorb->re-radiate paths for a configuration (2 per pair).
  std::vector<kernels::PropagationPath> paths(const SwitchConfig& config) const;

 private:
  void check_config(const SwitchConfig& config) const;
  void check_wave(const PlaneWave& wave) const;
  double element_factor(double incidence_deg, double observation_deg) const;

  geometry::SurfaceLayout layout_;
  ResponseOptions options_;
};

/// Free-function form of Surface::response (validates the layout on every call).
Complex roundtrip_response(const geometry::SurfaceLayout& layout, const SwitchConfig& config,
                           const PlaneWave& wave, double observation_angle_deg,
                           const ResponseOptions& options = {});

FieldPattern field_pattern(const geometry::SurfaceLayout& layout, const SwitchConfig& config,
                           const PlaneWave& wave, std::span<const double> angle_grid_deg,
                           const ResponseOptions& options = {});

/// Inclusive grid lo, lo+step, ..., hi (hi included when it lies on the grid).
std::vector<double> angle_grid(double lo_deg, double hi_deg, double step_deg);
/// Default pattern grid: -90..90 step 0.25 (endpoints excluded for field_pattern use).
std::vector<double> default_grid(double step_deg = kDefaultGridStepDeg);

struct PlateOptions {
  /// |E'| / |E| at normal incidence and reference distance.
  double normalization = 1.0;
  double reference_distance = kReferenceDistance;
};

/// Monostatic physical-optics return of a flat strip of the given width:
/// amplitude * normalization * cos(theta) * sinc(k w sin(theta)), sinc(x) = sin x / x.
/// The value is real and may be negative (sinc sign).
double plate_monostatic(double width, const PlaneWave& wave, const PlateOptions& options = {});

/// Monostatic plate return evaluated with the incidence angle set to each grid angle.
FieldPattern plate_baseline_pattern(double width, const PlaneWave& wave,
                                    std::span<const double> angle_grid_deg,
                                    const PlateOptions& options = {});

/// amplitude_at_ref * reference_distance / distance (far-field 1/r).
double far_field_amplitude(double amplitude_at_ref, double reference_distance, double distance);

struct Gain {
  double db = 0.0;
  bool plate_null = false;  // plate return exactly zero; db is +inf
};

/// 20 log10(|surface retro| / |plate monostatic|) at the wave's incidence angle.
Gain monostatic_gain_db(const geometry::SurfaceLayout& layout, const SwitchConfig& config,
                        const PlaneWave& wave, double plate_width,
                        const ResponseOptions& options = {}, const PlateOptions& plate = {});

/// 20 log10 of the retro-direction amplitude ratio between two configurations.
double modulation_depth_db(const Surface& surface, const SwitchConfig& on, const SwitchConfig& off,
                           const PlaneWave& wave);

/// 10^(gain_db / 20): detection-range factor under one-way 1/r accounting.
double range_extension(double gain_db);

struct ScalingPoint {
  int n_elements = 0;
  double retro_amplitude = 0.0;  // V/m at reference distance
  double gain_over_element = 0.0;
};

/// Constructive retro gain of linear arrays with n_elements each (even, >= 2).
std::vector<ScalingPoint> scaling_sweep(std::span<const int> n_elements, double spacing,
                                        const PlaneWave& wave, const ResponseOptions& options = {});

/// Switch insertion loss (dB) that leaves the given constructive/destructive
/// depth when exactly half of equal-weight pairs are toggled. depth_db > 6.02.
double switch_loss_for_depth_db(double depth_db);

}  // namespace vanatta::emfield
