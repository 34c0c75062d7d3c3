#pragma once

// Sawtooth FMCW radar chain: dechirped beat synthesis, Hann-windowed range
// and Doppler DFTs, median-floor peak detection and link-budget range.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "vanatta/emfield.hpp"
#include "vanatta/modulation.hpp"

namespace vanatta::fmcw {

using Complex = std::complex<double>;

inline constexpr double kDefaultThresholdDb = 13.0;
/// The noise floor never drops below this fraction of the profile peak, so a
/// noiseless profile does not turn rounding residue into detections.
inline constexpr double kMinFloorRelative = 1e-6;
inline constexpr double kMaxTargetSpeed = 100.0;  // m/s

struct ChirpParams {
  double start_frequency = 24e9;  // Hz
  double bandwidth = 250e6;       // Hz
  double chirp_duration = 0.5e-3; // s
  double sample_rate = 2e6;       // Hz
  int chirps_per_frame = 64;

  std::size_t samples_per_chirp() const;
  double wavelength() const;
  double range_bin_width() const;     // c / 2B
  double velocity_bin_width() const;  // λ / (2 N T)
  double beat_frequency(double range) const;  // 2 B r / (c T)
  double nyquist() const { return sample_rate / 2.0; }
  /// Largest |v| whose per-chirp Doppler phase step stays within ±π.
  double max_unambiguous_velocity() const;
  /// True for the 24 GHz and 76-81 GHz automotive families.
  bool supported_band() const;
  /// Throws ConfigurationError / DomainError on invalid values.
  void validate() const;

  friend bool operator==(const ChirpParams&, const ChirpParams&) = default;
};

enum class DistanceScaling {
  one_way,  // field ∝ 1/r, the accounting used for the headline range figures
  two_way,  // field ∝ 1/r^2 (radar equation); not used for the headline figures
};

/// Van Atta surface, either static or driven by an OOK schedule.
struct SurfaceSource {
  std::shared_ptr<const emfield::Surface> surface;
  std::optional<modulation::SwitchSchedule> schedule;
  emfield::SwitchConfig static_config;  // used when no schedule is set
};

struct PlateSource {
  double width = 0.025;
  emfield::PlateOptions options;
};

/// Point scatterer with a fixed field at the reference distance.
struct PointSource {
  Complex field_at_ref{1.0, 0.0};
};

struct Target {
  double range = 50.0;           // m
  double radial_velocity = 0.0;  // m/s, positive maps to positive Doppler bins
  std::variant<SurfaceSource, PlateSource, PointSource> source = PointSource{};
  double incidence_angle_deg = 0.0;
  double incident_amplitude = 1.0;  // V/m
};

/// Reflected field at the reference distance for a chirp starting at t.
Complex reference_field(const Target& target, const ChirpParams& params, double t);

/// Echo field at the target's range under the chosen distance scaling.
Complex echo_field(const Target& target, const ChirpParams& params, double t,
                   DistanceScaling scaling = DistanceScaling::one_way);

struct BeatSignal {
  ChirpParams params;
  std::size_t samples_per_chirp = 0;
  std::vector<double> samples;     // chirp-major, volts
  std::vector<double> timestamps;  // chirp start times, s

  std::size_t chirp_count() const { return timestamps.size(); }
  std::span<const double> chirp(std::size_t index) const;
};

/// Beat signal for n_chirps chirps (default: params.chirps_per_frame) starting
/// at chirp index first_chirp. Each target adds a cosine at its beat
/// frequency whose phase carries the reflection phase, the two-way carrier
/// delay and the Doppler advance; noise_power is the per-sample variance.
/// Identical arguments give bit-identical output.
BeatSignal synthesize_beat(const ChirpParams& params, std::span<const Target> targets,
                           double noise_power, std::uint64_t seed,
                           std::optional<std::size_t> n_chirps = std::nullopt,
                           DistanceScaling scaling = DistanceScaling::one_way,
                           std::uint64_t first_chirp = 0);

struct RangeBin {
  double range = 0.0;
  Complex amplitude;
};

/// One-sided range profile of one chirp. amplitude[k] is the Hann-windowed
/// DFT scaled so a cosine of amplitude a centred on bin k reads |a|.
struct RangeProfile {
  double bin_width = 0.0;
  std::vector<Complex> amplitude;
  double window_sum = 0.0;     // sum w[n]
  double window_energy = 0.0;  // sum w[n]^2
  std::size_t samples = 0;     // time-domain length N

  std::size_t size() const { return amplitude.size(); }
  double range_of(std::size_t bin) const { return static_cast<double>(bin) * bin_width; }
  double magnitude(std::size_t bin) const { return std::abs(amplitude[bin]); }
  std::vector<RangeBin> bins() const;
  /// Raw (unscaled) windowed DFT coefficient X_k.
  Complex raw(std::size_t bin) const;
};

/// Periodic Hann window of length n: w[k] = 0.5 - 0.5 cos(2πk/n).
std::vector<double> hann_window(std::size_t n);

RangeProfile range_profile(const BeatSignal& beat, std::size_t chirp_index);
std::vector<RangeProfile> range_profiles(const BeatSignal& beat);

struct RangeDopplerMap {
  std::size_t range_bins = 0;
  std::size_t doppler_bins = 0;
  std::vector<Complex> bins;  // range-major; Doppler axis shifted so 0 m/s sits at doppler_bins/2
  double range_bin_width = 0.0;
  double velocity_bin_width = 0.0;

  Complex at(std::size_t range_bin, std::size_t doppler_bin) const {
    return bins[range_bin * doppler_bins + doppler_bin];
  }
  double range_of(std::size_t r) const { return static_cast<double>(r) * range_bin_width; }
  double velocity_of(std::size_t d) const;
  /// (range_bin, doppler_bin) of the largest magnitude.
  std::pair<std::size_t, std::size_t> peak() const;
};

/// Second (Hann-windowed) DFT across chirps per range bin. Needs >= 2 chirps.
RangeDopplerMap range_doppler(const BeatSignal& beat);

struct Detection {
  double range = 0.0;
  double velocity = 0.0;
  double amplitude = 0.0;
  double snr_db = 0.0;
  std::size_t bin = 0;
};

/// Median-magnitude noise floor of a profile (clamped at kMinFloorRelative * peak).
double noise_floor(const RangeProfile& profile, double min_floor_relative = kMinFloorRelative);

/// Interior local maxima at least threshold_db above the noise floor, with
/// parabolic range interpolation.
std::vector<Detection> detect(const RangeProfile& profile, double threshold_db = kDefaultThresholdDb,
                              double min_floor_relative = kMinFloorRelative);

/// Expected profile SNR (dB over the median noise floor) of an on-bin echo
/// with the given amplitude, for per-sample noise variance noise_power.
double expected_detection_snr_db(const ChirpParams& params, double amplitude, double noise_power);

/// Largest range whose expected SNR meets threshold_db, by bisection; nullopt
/// when the target is undetectable at min_range.
std::optional<double> max_detection_range(const ChirpParams& params, const Target& target,
                                          double threshold_db, double noise_power,
                                          DistanceScaling scaling = DistanceScaling::one_way,
                                          double min_range = 1.0);

}  // namespace vanatta::fmcw
