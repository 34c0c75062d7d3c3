#pragma once

// Data-parallel inner loops. Every kernel exists twice with identical
// signatures: `serial` is the plain reference implementation kept for tests
// and benchmarks, `omp` is the OpenMP version used by the library. Each
// output element is produced by exactly one thread in a fixed order, so the
// OpenMP results do not depend on the thread count.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>

namespace vanatta::kernels {

/// One absorb -> line -> re-radiate route through an antenna pair.
/// x_in / x_out are element coordinates projected on the azimuth-cut axis.
struct PropagationPath {
  double x_in = 0.0;
  double x_out = 0.0;
  double line_length = 0.0;  // total electrical length incl. switched extra
  double weight = 1.0;       // linear amplitude (switch insertion loss etc.)
};

/// A single sinusoidal echo inside one dechirped chirp.
struct ChirpEcho {
  double amplitude = 0.0;
  double frequency = 0.0;  // beat frequency, Hz
  double phase = 0.0;      // radians at the first sample
};

/// Seed of the noise stream owned by one chirp (splitmix64 of seed and index).
std::uint64_t chirp_stream_seed(std::uint64_t seed, std::uint64_t chirp_index);

namespace serial {

/// out[i] = sum_p w_p * exp(-j k (x_in sin_inc + l_p + x_out sin_obs[i]))
void path_sum(std::span<const PropagationPath> paths, double wavenumber, double sin_incidence,
              std::span<const double> sin_observation, std::span<std::complex<double>> out);

/// Fill out (n_chirps x samples_per_chirp, row-major) with the echoes of each
/// chirp (echoes is n_chirps x echoes_per_chirp) plus white Gaussian noise.
/// Chirp c draws its noise from chirp_stream_seed(seed, first_chirp + c).
void synthesize_chirps(std::span<const ChirpEcho> echoes, std::size_t echoes_per_chirp,
                       std::size_t samples_per_chirp, double sample_rate, double noise_sigma,
                       std::uint64_t seed, std::uint64_t first_chirp, std::span<double> out);

/// Windowed one-sided DFT of each chirp row: out is n_chirps x (n/2 + 1).
void range_spectra(std::span<const double> samples, std::size_t n_chirps,
                   std::span<const double> window, std::span<std::complex<double>> out);

/// Windowed DFT across chirps for each range bin: spectra is n_chirps x
/// n_bins, out is n_bins x n_chirps (unshifted Doppler order).
void doppler_spectra(std::span<const std::complex<double>> spectra, std::size_t n_chirps,
                     std::size_t n_bins, std::span<const double> window,
                     std::span<std::complex<double>> out);

}  // namespace serial

namespace omp {

void path_sum(std::span<const PropagationPath> paths, double wavenumber, double sin_incidence,
              std::span<const double> sin_observation, std::span<std::complex<double>> out);

void synthesize_chirps(std::span<const ChirpEcho> echoes, std::size_t echoes_per_chirp,
                       std::size_t samples_per_chirp, double sample_rate, double noise_sigma,
                       std::uint64_t seed, std::uint64_t first_chirp, std::span<double> out);

void range_spectra(std::span<const double> samples, std::size_t n_chirps,
                   std::span<const double> window, std::span<std::complex<double>> out);

void doppler_spectra(std::span<const std::complex<double>> spectra, std::size_t n_chirps,
                     std::size_t n_bins, std::span<const double> window,
                     std::span<std::complex<double>> out);

}  // namespace omp

}  // namespace vanatta::kernels
