#include "vanatta/fmcw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "vanatta/constants.hpp"
#include "vanatta/errors.hpp"
#include "vanatta/geometry.hpp"
#include "vanatta/kernels.hpp"

namespace vanatta::fmcw {

namespace {

double reference_distance_of(const Target& target) {
  if (const auto* s = std::get_if<SurfaceSource>(&target.source); s != nullptr && s->surface) {
    return s->surface->options().reference_distance;
  }
  if (const auto* p = std::get_if<PlateSource>(&target.source)) return p->options.reference_distance;
  return emfield::kReferenceDistance;
}

void check_target(const Target& target, std::size_t index) {
  if (!(target.range > 0.0)) {
    throw DomainError("target " + std::to_string(index) + ": range must be > 0");
  }
  if (!(std::abs(target.radial_velocity) < kMaxTargetSpeed)) {
    throw DomainError("target " + std::to_string(index) + ": |velocity| must be < 100 m/s");
  }
}

// Scale factors mapping raw DFT bins to cosine amplitudes.
double bin_scale(std::size_t bin, std::size_t n, double window_sum) {
  const bool edge = bin == 0 || (n % 2 == 0 && bin == n / 2);
  return (edge ? 1.0 : 2.0) / window_sum;
}

RangeProfile make_profile(const ChirpParams& params, std::span<const Complex> raw,
                          std::span<const double> window) {
  RangeProfile p;
  p.samples = window.size();
  p.bin_width = params.range_bin_width();
  p.window_sum = std::accumulate(window.begin(), window.end(), 0.0);
  p.window_energy = std::inner_product(window.begin(), window.end(), window.begin(), 0.0);
  p.amplitude.resize(raw.size());
  for (std::size_t k = 0; k < raw.size(); ++k) {
    p.amplitude[k] = raw[k] * bin_scale(k, p.samples, p.window_sum);
  }
  return p;
}

std::vector<Complex> raw_spectra(const BeatSignal& beat, std::span<const double> window) {
  const std::size_t bins = beat.samples_per_chirp / 2 + 1;
  std::vector<Complex> raw(beat.chirp_count() * bins);
  kernels::omp::range_spectra(beat.samples, beat.chirp_count(), window, raw);
  return raw;
}

}  // namespace

std::size_t ChirpParams::samples_per_chirp() const {
  return static_cast<std::size_t>(std::llround(chirp_duration * sample_rate));
}

double ChirpParams::wavelength() const { return geometry::wavelength_of(start_frequency); }

double ChirpParams::range_bin_width() const { return kSpeedOfLight / (2.0 * bandwidth); }

double ChirpParams::velocity_bin_width() const {
  return wavelength() / (2.0 * chirps_per_frame * chirp_duration);
}

double ChirpParams::beat_frequency(double range) const {
  return 2.0 * bandwidth * range / (kSpeedOfLight * chirp_duration);
}

double ChirpParams::max_unambiguous_velocity() const { return wavelength() / (4.0 * chirp_duration); }

bool ChirpParams::supported_band() const {
  return (start_frequency >= 21.65e9 && start_frequency <= 26.65e9) ||
         (start_frequency >= 76e9 && start_frequency <= 81e9);
}

void ChirpParams::validate() const {
  if (!(start_frequency > 0.0)) throw DomainError("start frequency must be > 0");
  if (!(bandwidth > 0.0)) throw DomainError("bandwidth must be > 0");
  if (!(chirp_duration > 0.0)) throw DomainError("chirp duration must be > 0");
  if (!(sample_rate > 0.0)) throw DomainError("sample rate must be > 0");
  if (chirps_per_frame < 1) throw DomainError("chirps_per_frame must be >= 1");
  if (samples_per_chirp() < 2) throw ConfigurationError("fewer than 2 samples per chirp");
}

Complex reference_field(const Target& target, const ChirpParams& params, double t) {
  const emfield::PlaneWave wave{params.start_frequency, target.incidence_angle_deg,
                                target.incident_amplitude};
  if (const auto* s = std::get_if<SurfaceSource>(&target.source)) {
    if (!s->surface) throw PreconditionError("surface target without a surface");
    const auto& config = s->schedule ? modulation::config_at(*s->schedule, t) : s->static_config;
    return s->surface->response(config, wave, target.incidence_angle_deg);
  }
  if (const auto* p = std::get_if<PlateSource>(&target.source)) {
    return {emfield::plate_monostatic(p->width, wave, p->options), 0.0};
  }
  return std::get<PointSource>(target.source).field_at_ref * target.incident_amplitude;
}

Complex echo_field(const Target& target, const ChirpParams& params, double t,
                   DistanceScaling scaling) {
  const double ref = reference_distance_of(target);
  const double one_way = emfield::far_field_amplitude(1.0, ref, target.range);
  const double factor = scaling == DistanceScaling::one_way ? one_way : one_way * one_way;
  return reference_field(target, params, t) * factor;
}

std::span<const double> BeatSignal::chirp(std::size_t index) const {
  if (index >= chirp_count()) throw DomainError("chirp index out of range");
  return std::span<const double>(samples).subspan(index * samples_per_chirp, samples_per_chirp);
}

BeatSignal synthesize_beat(const ChirpParams& params, std::span<const Target> targets,
                           double noise_power, std::uint64_t seed,
                           std::optional<std::size_t> n_chirps, DistanceScaling scaling,
                           std::uint64_t first_chirp) {
  params.validate();
  if (!(noise_power >= 0.0)) throw DomainError("noise power must be >= 0");
  for (std::size_t i = 0; i < targets.size(); ++i) {
    check_target(targets[i], i);
    const double fb = params.beat_frequency(targets[i].range);
    if (!(fb < params.nyquist())) {
      throw ConfigurationError("target " + std::to_string(i) + " at " +
                               std::to_string(targets[i].range) + " m has beat frequency " +
                               std::to_string(fb) + " Hz above Nyquist (" +
                               std::to_string(params.nyquist()) + " Hz)");
    }
  }

  const std::size_t chirps = n_chirps.value_or(static_cast<std::size_t>(params.chirps_per_frame));
  BeatSignal beat;
  beat.params = params;
  beat.samples_per_chirp = params.samples_per_chirp();
  beat.timestamps.resize(chirps);
  beat.samples.assign(chirps * beat.samples_per_chirp, 0.0);

  const double wl = params.wavelength();
  std::vector<kernels::ChirpEcho> echoes(chirps * targets.size());
  for (std::size_t c = 0; c < chirps; ++c) {
    const double t = static_cast<double>(first_chirp + c) * params.chirp_duration;
    beat.timestamps[c] = t;
    for (std::size_t i = 0; i < targets.size(); ++i) {
      const Target& tg = targets[i];
      const Complex field = echo_field(tg, params, t, scaling);
      const double carrier = 4.0 * kPi * tg.range / wl;
      const double doppler = 4.0 * kPi * tg.radial_velocity * t / wl;
      echoes[c * targets.size() + i] = {std::abs(field), params.beat_frequency(tg.range),
                                        std::arg(field) + carrier + doppler};
    }
  }
  kernels::omp::synthesize_chirps(echoes, targets.size(), beat.samples_per_chirp,
                                  params.sample_rate, std::sqrt(noise_power), seed, first_chirp,
                                  beat.samples);
  return beat;
}

std::vector<RangeBin> RangeProfile::bins() const {
  std::vector<RangeBin> out(amplitude.size());
  for (std::size_t k = 0; k < amplitude.size(); ++k) out[k] = {range_of(k), amplitude[k]};
  return out;
}

Complex RangeProfile::raw(std::size_t bin) const {
  return amplitude[bin] / bin_scale(bin, samples, window_sum);
}

std::vector<double> hann_window(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t k = 0; k < n; ++k) {
    w[k] = 0.5 - 0.5 * std::cos(kTwoPi * static_cast<double>(k) / static_cast<double>(n));
  }
  return w;
}

RangeProfile range_profile(const BeatSignal& beat, std::size_t chirp_index) {
  const auto window = hann_window(beat.samples_per_chirp);
  std::vector<Complex> raw(beat.samples_per_chirp / 2 + 1);
  kernels::serial::range_spectra(beat.chirp(chirp_index), 1, window, raw);
  return make_profile(beat.params, raw, window);
}

std::vector<RangeProfile> range_profiles(const BeatSignal& beat) {
  const auto window = hann_window(beat.samples_per_chirp);
  const auto raw = raw_spectra(beat, window);
  const std::size_t bins = beat.samples_per_chirp / 2 + 1;
  std::vector<RangeProfile> out;
  out.reserve(beat.chirp_count());
  for (std::size_t c = 0; c < beat.chirp_count(); ++c) {
    out.push_back(make_profile(beat.params, std::span<const Complex>(raw).subspan(c * bins, bins), window));
  }
  return out;
}

double RangeDopplerMap::velocity_of(std::size_t d) const {
  return (static_cast<double>(d) - static_cast<double>(doppler_bins / 2)) * velocity_bin_width;
}

std::pair<std::size_t, std::size_t> RangeDopplerMap::peak() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < bins.size(); ++i) {
    if (std::abs(bins[i]) > std::abs(bins[best])) best = i;
  }
  return {best / doppler_bins, best % doppler_bins};
}

RangeDopplerMap range_doppler(const BeatSignal& beat) {
  const std::size_t chirps = beat.chirp_count();
  if (chirps < 2) throw DomainError("range-Doppler processing needs at least 2 chirps");
  const auto range_window = hann_window(beat.samples_per_chirp);
  auto spectra = raw_spectra(beat, range_window);
  const std::size_t bins = beat.samples_per_chirp / 2 + 1;
  const double range_sum = std::accumulate(range_window.begin(), range_window.end(), 0.0);
  for (std::size_t c = 0; c < chirps; ++c) {
    for (std::size_t k = 0; k < bins; ++k) {
      spectra[c * bins + k] *= bin_scale(k, beat.samples_per_chirp, range_sum);
    }
  }

  const auto doppler_window = hann_window(chirps);
  const double doppler_sum = std::accumulate(doppler_window.begin(), doppler_window.end(), 0.0);
  std::vector<Complex> unshifted(bins * chirps);
  kernels::omp::doppler_spectra(spectra, chirps, bins, doppler_window, unshifted);

  RangeDopplerMap map;
  map.range_bins = bins;
  map.doppler_bins = chirps;
  map.range_bin_width = beat.params.range_bin_width();
  map.velocity_bin_width = beat.params.wavelength() / (2.0 * static_cast<double>(chirps) *
                                                       beat.params.chirp_duration);
  map.bins.resize(bins * chirps);
  const std::size_t half = chirps / 2;
  for (std::size_t r = 0; r < bins; ++r) {
    for (std::size_t d = 0; d < chirps; ++d) {
      map.bins[r * chirps + d] = unshifted[r * chirps + (d + chirps - half) % chirps] / doppler_sum;
    }
  }
  return map;
}

double noise_floor(const RangeProfile& profile, double min_floor_relative) {
  if (profile.amplitude.empty()) return 0.0;
  std::vector<double> mags(profile.size());
  for (std::size_t k = 0; k < mags.size(); ++k) mags[k] = profile.magnitude(k);
  const double peak = *std::max_element(mags.begin(), mags.end());
  const auto mid = mags.begin() + static_cast<std::ptrdiff_t>(mags.size() / 2);
  std::nth_element(mags.begin(), mid, mags.end());
  double median = *mid;
  if (mags.size() % 2 == 0) {
    median = 0.5 * (median + *std::max_element(mags.begin(), mid));
  }
  return std::max(median, peak * min_floor_relative);
}

std::vector<Detection> detect(const RangeProfile& profile, double threshold_db,
                              double min_floor_relative) {
  std::vector<Detection> out;
  const double floor = noise_floor(profile, min_floor_relative);
  if (!(floor > 0.0) || profile.size() < 3) return out;
  const double level = floor * std::pow(10.0, threshold_db / 20.0);
  for (std::size_t k = 1; k + 1 < profile.size(); ++k) {
    const double left = profile.magnitude(k - 1);
    const double mid = profile.magnitude(k);
    const double right = profile.magnitude(k + 1);
    if (!(mid > left && mid >= right && mid >= level)) continue;
    const double denom = left - 2.0 * mid + right;
    const double offset = denom != 0.0 ? 0.5 * (left - right) / denom : 0.0;
    out.push_back({(static_cast<double>(k) + offset) * profile.bin_width, 0.0, mid,
                   20.0 * std::log10(mid / floor), k});
  }
  return out;
}

double expected_detection_snr_db(const ChirpParams& params, double amplitude, double noise_power) {
  if (noise_power <= 0.0) return std::numeric_limits<double>::infinity();
  const auto w = hann_window(params.samples_per_chirp());
  const double sum = std::accumulate(w.begin(), w.end(), 0.0);
  const double energy = std::inner_product(w.begin(), w.end(), w.begin(), 0.0);
  // Interior bins carry complex Gaussian noise; the median of its magnitude
  // is sqrt(ln 2) times the rms.
  const double rms = std::sqrt(4.0 * noise_power * energy) / sum;
  const double median = std::sqrt(std::log(2.0)) * rms;
  return 20.0 * std::log10(amplitude / median);
}

std::optional<double> max_detection_range(const ChirpParams& params, const Target& target,
                                          double threshold_db, double noise_power,
                                          DistanceScaling scaling, double min_range) {
  if (!(noise_power > 0.0)) throw DomainError("noise power must be > 0 for a finite range");
  if (!(min_range > 0.0)) throw DomainError("min_range must be > 0");
  auto detectable = [&](double r) {
    Target probe = target;
    probe.range = r;
    const double amplitude = std::abs(echo_field(probe, params, 0.0, scaling));
    return expected_detection_snr_db(params, amplitude, noise_power) >= threshold_db;
  };
  if (!detectable(min_range)) return std::nullopt;
  constexpr double kCeiling = 1e15;
  double lo = min_range;
  double hi = 2.0 * min_range;
  while (detectable(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > kCeiling) return kCeiling;
  }
  for (int i = 0; i < 200 && (hi - lo) > 1e-12 * lo; ++i) {
    const double mid = 0.5 * (lo + hi);
    (detectable(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace vanatta::fmcw
