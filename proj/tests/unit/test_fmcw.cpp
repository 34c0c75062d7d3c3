#include <doctest.h>

#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "vanatta/errors.hpp"
#include "vanatta/fmcw.hpp"

using namespace vanatta;
using namespace vanatta::fmcw;

namespace {

Target point(double range, double velocity = 0.0, double amplitude = 1.0) {
  Target t;
  t.range = range;
  t.radial_velocity = velocity;
  t.source = PointSource{Complex(amplitude, 0.0)};
  return t;
}

BeatSignal one(const ChirpParams& p, const Target& t, double noise = 0.0, std::uint64_t seed = 1,
               std::size_t chirps = 1) {
  return synthesize_beat(p, std::span(&t, 1), noise, seed, chirps);
}

}  // namespace

TEST_SUITE("fmcw") {

TEST_CASE("chirp parameter arithmetic") {
  const ChirpParams p;
  CHECK(p.samples_per_chirp() == 1000);
  CHECK(p.range_bin_width() == doctest::Approx(0.5996).epsilon(1e-4));
  CHECK(std::abs(p.beat_frequency(50.0) - 166.67e3) < 2e3);  // within one 2 kHz bin
  CHECK(p.beat_frequency(50.0) == doctest::Approx(2 * 250e6 * 50 / (299792458.0 * 0.5e-3)));
  CHECK(p.velocity_bin_width() == doctest::Approx(p.wavelength() / (2 * 64 * 0.5e-3)));
  CHECK(p.max_unambiguous_velocity() == doctest::Approx(p.wavelength() / (4 * 0.5e-3)));
  CHECK(p.supported_band());
  ChirpParams radar77 = p;
  radar77.start_frequency = 77e9;
  CHECK(radar77.supported_band());
  radar77.start_frequency = 60e9;
  CHECK_FALSE(radar77.supported_band());
  ChirpParams bad = p;
  bad.bandwidth = 0.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("noiseless 50 m target: beat bin, range estimate, static Doppler") {
  ChirpParams p;
  const auto t = point(50.0);
  const auto beat = one(p, t, 0.0, 1, 64);
  const auto prof = range_profile(beat, 0);
  std::size_t peak = 0;
  for (std::size_t k = 1; k < prof.size(); ++k) if (prof.magnitude(k) > prof.magnitude(peak)) peak = k;
  const double bin_hz = p.sample_rate / static_cast<double>(p.samples_per_chirp());
  CHECK(std::abs(peak * bin_hz - 166.67e3) <= bin_hz);
  const auto dets = detect(prof);
  REQUIRE(dets.size() == 1);
  CHECK(std::abs(dets[0].range - 50.0) <= 0.6);
  const auto rd = range_doppler(beat);
  CHECK(rd.peak().second == rd.doppler_bins / 2);
  CHECK(rd.velocity_of(rd.peak().second) == 0.0);
}

TEST_CASE("on-bin cosine reads its amplitude") {
  ChirpParams p;
  const double r = 80 * p.range_bin_width();
  const auto prof = range_profile(one(p, point(r, 0.0, 1.0)), 0);
  // echo amplitude is the 1 m field scaled by 1/r
  CHECK(prof.magnitude(80) == doctest::Approx(1.0 / r).epsilon(1e-9));
  CHECK(prof.range_of(80) == doctest::Approx(r));
}

TEST_CASE("range spectrum equals a naive windowed DFT; Parseval holds") {
  ChirpParams p;
  p.sample_rate = 256e3;
  p.chirp_duration = 1e-3;  // 256 samples
  Target targets[] = {point(20.0), point(35.5, 0.0, 3.0)};
  const auto beat = synthesize_beat(p, targets, 1e-4, 5, 1);
  const auto prof = range_profile(beat, 0);
  const auto w = hann_window(256);
  std::vector<oracle::cd> x(256);
  for (std::size_t n = 0; n < 256; ++n) x[n] = beat.chirp(0)[n] * w[n];
  const auto ref = oracle::naive_dft(x);
  for (std::size_t k = 0; k < prof.size(); ++k) {
    CHECK(std::abs(prof.raw(k) - ref[k]) <= 1e-9 * std::max(1.0, std::abs(ref[k])));
  }
  double time_energy = 0.0;
  for (auto v : x) time_energy += std::norm(v);
  double freq_energy = std::norm(prof.raw(0)) + std::norm(prof.raw(128));
  for (std::size_t k = 1; k < 128; ++k) freq_energy += 2.0 * std::norm(prof.raw(k));
  CHECK(freq_energy / 256.0 == doctest::Approx(time_energy).epsilon(1e-10));
}

TEST_CASE("moving target lands in its Doppler bin") {
  ChirpParams p;
  p.chirp_duration = 0.1e-3;
  REQUIRE(p.max_unambiguous_velocity() > 10.0);
  for (double v : {10.0, -5.0, 0.0}) {
    const auto beat = one(p, point(20.0, v), 0.0, 1, 64);
    const auto rd = range_doppler(beat);
    const auto [r, d] = rd.peak();
    CHECK(std::abs(rd.range_of(r) - 20.0) <= p.range_bin_width());
    CHECK(std::abs(rd.velocity_of(d) - v) <= rd.velocity_bin_width);
  }
}

TEST_CASE("noise statistics and determinism") {
  ChirpParams p;
  const auto t = point(30.0, 0.0, 0.0);
  const auto a = synthesize_beat(p, {}, 0.25, 42, 8);
  const double mean = std::accumulate(a.samples.begin(), a.samples.end(), 0.0) / a.samples.size();
  double var = 0.0;
  for (double s : a.samples) var += (s - mean) * (s - mean);
  var /= a.samples.size();
  CHECK(var == doctest::Approx(0.25).epsilon(0.03));
  CHECK(std::abs(mean) < 0.02);

  const auto b = synthesize_beat(p, {}, 0.25, 42, 8);
  CHECK(a.samples == b.samples);
  const auto c = synthesize_beat(p, {}, 0.25, 43, 8);
  CHECK(a.samples != c.samples);

  // a later block continues the same per-chirp streams
  const auto tail = synthesize_beat(p, {}, 0.25, 42, 3, DistanceScaling::one_way, 5);
  for (std::size_t i = 0; i < tail.samples.size(); ++i) {
    CHECK(tail.samples[i] == a.samples[5 * a.samples_per_chirp + i]);
  }
  (void)t;
}

TEST_CASE("expected detection SNR predicts the measured peak over floor") {
  ChirpParams p;
  const double noise = 0.01;
  const double amp_at_ref = 50.0 * 0.5;  // 0.5 V at 50 m
  const auto t = point(50.0 * 0 + 83 * p.range_bin_width(), 0.0, amp_at_ref);
  const double amplitude = amp_at_ref / t.range;
  double acc = 0.0;
  const int runs = 40;
  const auto beat = one(p, t, noise, 11, runs);
  for (const auto& prof : range_profiles(beat)) {
    acc += 20.0 * std::log10(prof.magnitude(83) / noise_floor(prof));
  }
  CHECK(acc / runs == doctest::Approx(expected_detection_snr_db(p, amplitude, noise)).epsilon(0.05));
}

TEST_CASE("max detection range scales with the field ratio under 1/r") {
  ChirpParams p;
  const double noise = 1e-6;
  const auto base = max_detection_range(p, point(1.0, 0.0, 1.0), 13.0, noise);
  REQUIRE(base.has_value());
  for (double g : {0.0, 6.0, 11.2, 20.0}) {
    const auto r = max_detection_range(p, point(1.0, 0.0, std::pow(10.0, g / 20)), 13.0, noise);
    REQUIRE(r.has_value());
    CHECK(*r / *base == doctest::Approx(std::pow(10.0, g / 20)).epsilon(1e-6));
  }
  CHECK_FALSE(max_detection_range(p, point(1.0, 0.0, 1e-9), 13.0, noise).has_value());
  CHECK_THROWS_AS(max_detection_range(p, point(1.0), 13.0, 0.0), DomainError);
  // two-way accounting: ratio is the square root
  const auto b2 = max_detection_range(p, point(1.0, 0.0, 1.0), 13.0, noise, DistanceScaling::two_way);
  const auto r2 = max_detection_range(p, point(1.0, 0.0, 4.0), 13.0, noise, DistanceScaling::two_way);
  CHECK(*r2 / *b2 == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("input checks") {
  ChirpParams p;
  CHECK_THROWS_AS(one(p, point(400.0)), ConfigurationError);  // beat above Nyquist
  CHECK_THROWS_AS(one(p, point(0.0)), DomainError);
  CHECK_THROWS_AS(one(p, point(10.0, 150.0)), DomainError);
  CHECK_THROWS_AS(one(p, point(10.0), -1.0), DomainError);
  CHECK_THROWS_AS(range_doppler(one(p, point(10.0))), DomainError);
}

TEST_CASE("two targets are both detected") {
  ChirpParams p;
  Target ts[] = {point(20.0), point(60.0, 0.0, 2.0)};
  const auto beat = synthesize_beat(p, ts, 1e-8, 3, 1);
  const auto dets = detect(range_profile(beat, 0));
  REQUIRE(dets.size() == 2);
  CHECK(std::abs(dets[0].range - 20.0) < 0.6);
  CHECK(std::abs(dets[1].range - 60.0) < 0.6);
}

}  // TEST_SUITE
