#pragma once

// Per-item bodies shared by the serial and OpenMP kernels.

#include <cmath>
#include <complex>
#include <random>
#include <span>
#include <vector>

#include "fft.hpp"
#include "vanatta/constants.hpp"
#include "vanatta/kernels.hpp"

namespace vanatta::kernels::detail {

inline void synthesize_one(std::span<const ChirpEcho> echoes, double sample_rate,
                           double noise_sigma, std::uint64_t stream_seed, std::span<double> row) {
  for (std::size_t n = 0; n < row.size(); ++n) {
    const double t = static_cast<double>(n) / sample_rate;
    double v = 0.0;
    for (const auto& e : echoes) {
      if (e.amplitude != 0.0) v += e.amplitude * std::cos(kTwoPi * e.frequency * t + e.phase);
    }
    row[n] = v;
  }
  if (noise_sigma > 0.0) {
    std::mt19937_64 rng(stream_seed);
    std::normal_distribution<double> gauss(0.0, noise_sigma);
    for (double& v : row) v += gauss(rng);
  }
}

inline void range_spectrum_one(std::span<const double> row, std::span<const double> window,
                               std::vector<double>& scratch, std::span<std::complex<double>> out) {
  scratch.resize(row.size());
  for (std::size_t n = 0; n < row.size(); ++n) scratch[n] = row[n] * window[n];
  fft::forward_real(scratch, out);
}

inline void doppler_one(std::span<const std::complex<double>> spectra, std::size_t n_chirps,
                        std::size_t n_bins, std::size_t bin, std::span<const double> window,
                        std::vector<std::complex<double>>& scratch,
                        std::span<std::complex<double>> out) {
  scratch.resize(n_chirps);
  for (std::size_t m = 0; m < n_chirps; ++m) scratch[m] = spectra[m * n_bins + bin] * window[m];
  fft::forward(scratch, out);
}

}  // namespace vanatta::kernels::detail
