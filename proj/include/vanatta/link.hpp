#pragma once

// End-to-end OOK identification link and the concurrency / Doppler analyses
// around it.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "vanatta/emfield.hpp"
#include "vanatta/fmcw.hpp"
#include "vanatta/modulation.hpp"

namespace vanatta::link {

struct LinkScenario {
  fmcw::ChirpParams radar;
  double radar_angle_deg = 30.0;  // incidence angle at the surface
  double incident_amplitude = 1.0;
  std::shared_ptr<const emfield::Surface> surface;
  modulation::SwitchSchedule schedule;
  double range = 50.0;
  double velocity = 0.0;
  double noise_power = 0.0;  // per-sample variance of the beat signal
  std::uint64_t seed = 1;
  fmcw::DistanceScaling scaling = fmcw::DistanceScaling::one_way;

  /// switch_interval / chirp_duration; throws SchedulingError unless a positive integer.
  std::size_t chirps_per_bit() const;
  fmcw::Target target() const;
};

struct LinkResult {
  std::vector<double> per_chirp_amplitudes;
  std::vector<double> chirp_times;
  modulation::Bits transmitted;
  modulation::Bits decoded;
  std::size_t chirps_per_bit = 0;
  std::size_t bit_errors = 0;
  double ber = 0.0;
  double snr_db = 0.0;  // per-chirp SNR of the constructive state
  double threshold = 0.0;
  std::size_t range_bin = 0;
  /// All amplitudes were equal, so no threshold could be formed. decoded is
  /// then all zeros for a silent surface and all ones otherwise.
  bool degenerate = false;
};

/// Run every chirp of the schedule through the radar chain and decode.
LinkResult run_link(const LinkScenario& scenario);

/// Midpoint between the two centers of a 1-D two-cluster (Lloyd) split.
/// Throws DecodingError when all amplitudes are equal.
double two_cluster_threshold(std::span<const double> amplitudes);

/// Per-bit mean amplitude compared against threshold (two-cluster midpoint when absent).
modulation::Bits decode_ook(std::span<const double> per_chirp_amplitudes,
                            std::size_t chirps_per_bit, std::optional<double> threshold = std::nullopt);

/// Per-chirp SNR (dB) of the constructive state: (a^2 / 2) / noise_power,
/// with a the echo amplitude in the beat signal.
double per_chirp_snr_db(const LinkScenario& scenario);

/// Noise variance that gives the requested per-chirp SNR.
double noise_power_for_snr(const LinkScenario& scenario, double snr_db);

/// Two-way Doppler phase (degrees) accumulated over `interval`.
double doppler_phase_drift(double velocity_delta, double wavelength, double interval);

/// 20 log10(|response toward theta1| / |response toward theta2|) under
/// illumination from theta1 = wave.incidence_angle_deg.
double cross_angle_isolation(const emfield::Surface& surface, const emfield::SwitchConfig& config,
                             const emfield::PlaneWave& wave, double theta2_deg);
double cross_angle_isolation(const geometry::SurfaceLayout& layout,
                             const emfield::SwitchConfig& config, const emfield::PlaneWave& wave,
                             double theta2_deg);

struct BerPoint {
  double snr_db = 0.0;
  std::vector<double> ber_per_seed;
  double mean = 0.0;
  double std_error = 0.0;  // standard error of the mean across seeds
};

/// BER over a grid of per-chirp SNRs, one link run per (snr, seed).
std::vector<BerPoint> ber_sweep(const LinkScenario& base, std::span<const double> snr_db,
                                std::size_t seeds);

}  // namespace vanatta::link
