#include "vanatta/link.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "vanatta/constants.hpp"
#include "vanatta/errors.hpp"

namespace vanatta::link {

namespace {

// Chirps processed per synthesis block; bounds memory for long frames. The
// noise streams are indexed by absolute chirp number, so results do not
// depend on this value.
constexpr std::size_t kBlockChirps = 256;
constexpr int kMaxLloydIterations = 100;

}  // namespace

std::size_t LinkScenario::chirps_per_bit() const {
  const double ratio = schedule.switch_interval / radar.chirp_duration;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * rounded) {
    throw SchedulingError("switch interval must be a positive integer number of chirps (got " +
                          std::to_string(ratio) + ")");
  }
  return static_cast<std::size_t>(rounded);
}

fmcw::Target LinkScenario::target() const {
  fmcw::Target t;
  t.range = range;
  t.radial_velocity = velocity;
  t.incidence_angle_deg = radar_angle_deg;
  t.incident_amplitude = incident_amplitude;
  t.source = fmcw::SurfaceSource{surface, schedule, {}};
  return t;
}

double two_cluster_threshold(std::span<const double> amplitudes) {
  if (amplitudes.empty()) throw DecodingError("no amplitudes to cluster");
  const auto [lo_it, hi_it] = std::minmax_element(amplitudes.begin(), amplitudes.end());
  double low = *lo_it;
  double high = *hi_it;
  if (!(high - low > 1e-12 * std::max(std::abs(high), std::numeric_limits<double>::min()))) {
    throw DecodingError("all amplitudes are equal; the two states cannot be separated");
  }
  for (int iter = 0; iter < kMaxLloydIterations; ++iter) {
    const double split = 0.5 * (low + high);
    double sum_low = 0.0, sum_high = 0.0;
    std::size_t n_low = 0, n_high = 0;
    for (double a : amplitudes) {
      if (a > split) {
        sum_high += a;
        ++n_high;
      } else {
        sum_low += a;
        ++n_low;
      }
    }
    const double new_low = sum_low / static_cast<double>(n_low);
    const double new_high = sum_high / static_cast<double>(n_high);
    if (new_low == low && new_high == high) break;
    low = new_low;
    high = new_high;
  }
  return 0.5 * (low + high);
}

modulation::Bits decode_ook(std::span<const double> per_chirp_amplitudes, std::size_t chirps_per_bit,
                            std::optional<double> threshold) {
  if (chirps_per_bit == 0) throw DomainError("chirps_per_bit must be >= 1");
  if (per_chirp_amplitudes.size() % chirps_per_bit != 0) {
    throw DomainError("amplitude count is not a multiple of chirps_per_bit");
  }
  const double cut = threshold ? *threshold : two_cluster_threshold(per_chirp_amplitudes);
  const std::size_t n_bits = per_chirp_amplitudes.size() / chirps_per_bit;
  modulation::Bits bits(n_bits);
  for (std::size_t b = 0; b < n_bits; ++b) {
    const auto group = per_chirp_amplitudes.subspan(b * chirps_per_bit, chirps_per_bit);
    const double mean = std::accumulate(group.begin(), group.end(), 0.0) /
                        static_cast<double>(chirps_per_bit);
    bits[b] = mean > cut ? 1 : 0;
  }
  return bits;
}

double per_chirp_snr_db(const LinkScenario& scenario) {
  fmcw::Target t = scenario.target();
  t.source = fmcw::SurfaceSource{scenario.surface, std::nullopt, {}};
  const double a = std::abs(fmcw::echo_field(t, scenario.radar, 0.0, scenario.scaling));
  if (scenario.noise_power <= 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(0.5 * a * a / scenario.noise_power);
}

double noise_power_for_snr(const LinkScenario& scenario, double snr_db) {
  fmcw::Target t = scenario.target();
  t.source = fmcw::SurfaceSource{scenario.surface, std::nullopt, {}};
  const double a = std::abs(fmcw::echo_field(t, scenario.radar, 0.0, scenario.scaling));
  return 0.5 * a * a / std::pow(10.0, snr_db / 10.0);
}

LinkResult run_link(const LinkScenario& scenario) {
  if (!scenario.surface) throw PreconditionError("link scenario has no surface");
  if (scenario.schedule.states.empty()) throw PreconditionError("link schedule is empty");
  if (scenario.schedule.states.size() != scenario.schedule.bits.size()) {
    throw PreconditionError("schedule states and bits differ in length");
  }
  scenario.radar.validate();

  LinkResult result;
  result.chirps_per_bit = scenario.chirps_per_bit();
  result.transmitted = scenario.schedule.bits;
  result.snr_db = per_chirp_snr_db(scenario);
  result.range_bin = static_cast<std::size_t>(
      std::llround(scenario.range / scenario.radar.range_bin_width()));

  const std::size_t total = scenario.schedule.bits.size() * result.chirps_per_bit;
  result.per_chirp_amplitudes.reserve(total);
  result.chirp_times.reserve(total);
  const fmcw::Target target = scenario.target();
  for (std::size_t first = 0; first < total; first += kBlockChirps) {
    const std::size_t count = std::min(kBlockChirps, total - first);
    const auto beat = fmcw::synthesize_beat(scenario.radar, std::span(&target, 1),
                                            scenario.noise_power, scenario.seed, count,
                                            scenario.scaling, first);
    if (result.range_bin >= beat.samples_per_chirp / 2 + 1) {
      throw ConfigurationError("target range bin lies outside the range profile");
    }
    for (const auto& profile : fmcw::range_profiles(beat)) {
      result.per_chirp_amplitudes.push_back(profile.magnitude(result.range_bin));
    }
    result.chirp_times.insert(result.chirp_times.end(), beat.timestamps.begin(), beat.timestamps.end());
  }

  try {
    result.threshold = two_cluster_threshold(result.per_chirp_amplitudes);
    result.decoded = decode_ook(result.per_chirp_amplitudes, result.chirps_per_bit, result.threshold);
  } catch (const DecodingError&) {
    result.degenerate = true;
    const double level = result.per_chirp_amplitudes.front();
    result.threshold = level;
    result.decoded.assign(result.transmitted.size(), level > 0.0 ? 1 : 0);
  }
  for (std::size_t i = 0; i < result.decoded.size(); ++i) {
    if (result.decoded[i] != result.transmitted[i]) ++result.bit_errors;
  }
  result.ber = static_cast<double>(result.bit_errors) / static_cast<double>(result.decoded.size());
  return result;
}

double doppler_phase_drift(double velocity_delta, double wavelength, double interval) {
  if (velocity_delta < 0.0 || !(wavelength > 0.0) || interval < 0.0) {
    throw DomainError("doppler_phase_drift expects non-negative inputs and positive wavelength");
  }
  return 360.0 * (2.0 * velocity_delta / wavelength) * interval;
}

double cross_angle_isolation(const emfield::Surface& surface, const emfield::SwitchConfig& config,
                             const emfield::PlaneWave& wave, double theta2_deg) {
  if (theta2_deg == wave.incidence_angle_deg) throw DomainError("theta1 and theta2 must differ");
  const double own = std::abs(surface.response(config, wave, wave.incidence_angle_deg));
  const double other = std::abs(surface.response(config, wave, theta2_deg));
  if (other == 0.0) return std::numeric_limits<double>::infinity();
  return 20.0 * std::log10(own / other);
}

double cross_angle_isolation(const geometry::SurfaceLayout& layout,
                             const emfield::SwitchConfig& config, const emfield::PlaneWave& wave,
                             double theta2_deg) {
  return cross_angle_isolation(emfield::Surface(layout), config, wave, theta2_deg);
}

std::vector<BerPoint> ber_sweep(const LinkScenario& base, std::span<const double> snr_db,
                                std::size_t seeds) {
  if (seeds == 0) throw DomainError("ber_sweep needs at least one seed");
  std::vector<BerPoint> out;
  for (double snr : snr_db) {
    BerPoint point;
    point.snr_db = snr;
    LinkScenario scenario = base;
    scenario.noise_power = noise_power_for_snr(base, snr);
    for (std::size_t s = 0; s < seeds; ++s) {
      scenario.seed = base.seed + s;
      point.ber_per_seed.push_back(run_link(scenario).ber);
    }
    const double n = static_cast<double>(seeds);
    point.mean = std::accumulate(point.ber_per_seed.begin(), point.ber_per_seed.end(), 0.0) / n;
    double var = 0.0;
    for (double b : point.ber_per_seed) var += (b - point.mean) * (b - point.mean);
    point.std_error = seeds > 1 ? std::sqrt(var / (n - 1.0) / n) : 0.0;
    out.push_back(std::move(point));
  }
  return out;
}

}  // namespace vanatta::link
