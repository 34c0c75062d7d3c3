#include <cmath>

#include "kernel_detail.hpp"
#include "vanatta/kernels.hpp"

namespace vanatta::kernels {

std::uint64_t chirp_stream_seed(std::uint64_t seed, std::uint64_t chirp_index) {
  // splitmix64 finalizer over a golden-ratio stride.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (chirp_index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace serial {

void path_sum(std::span<const PropagationPath> paths, double wavenumber, double sin_incidence,
              std::span<const double> sin_observation, std::span<std::complex<double>> out) {
  for (std::size_t i = 0; i < sin_observation.size(); ++i) {
    std::complex<double> acc{0.0, 0.0};
    for (const auto& p : paths) {
      const double length = p.x_in * sin_incidence + p.line_length + p.x_out * sin_observation[i];
      acc += p.weight * std::polar(1.0, -wavenumber * length);
    }
    out[i] = acc;
  }
}

void synthesize_chirps(std::span<const ChirpEcho> echoes, std::size_t echoes_per_chirp,
                       std::size_t samples_per_chirp, double sample_rate, double noise_sigma,
                       std::uint64_t seed, std::uint64_t first_chirp, std::span<double> out) {
  const std::size_t n_chirps = out.size() / samples_per_chirp;
  for (std::size_t c = 0; c < n_chirps; ++c) {
    detail::synthesize_one(echoes.subspan(c * echoes_per_chirp, echoes_per_chirp), sample_rate,
                           noise_sigma, chirp_stream_seed(seed, first_chirp + c),
                           out.subspan(c * samples_per_chirp, samples_per_chirp));
  }
}

void range_spectra(std::span<const double> samples, std::size_t n_chirps,
                   std::span<const double> window, std::span<std::complex<double>> out) {
  const std::size_t n = window.size();
  const std::size_t bins = n / 2 + 1;
  std::vector<double> scratch;
  for (std::size_t c = 0; c < n_chirps; ++c) {
    detail::range_spectrum_one(samples.subspan(c * n, n), window, scratch,
                               out.subspan(c * bins, bins));
  }
}

void doppler_spectra(std::span<const std::complex<double>> spectra, std::size_t n_chirps,
                     std::size_t n_bins, std::span<const double> window,
                     std::span<std::complex<double>> out) {
  std::vector<std::complex<double>> scratch;
  for (std::size_t b = 0; b < n_bins; ++b) {
    detail::doppler_one(spectra, n_chirps, n_bins, b, window, scratch,
                        out.subspan(b * n_chirps, n_chirps));
  }
}

}  // namespace serial
}  // namespace vanatta::kernels
