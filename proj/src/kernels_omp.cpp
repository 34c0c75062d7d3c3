#include <cmath>
#include <vector>

#include "kernel_detail.hpp"
#include "vanatta/kernels.hpp"

namespace vanatta::kernels::omp {

void path_sum(std::span<const PropagationPath> paths, double wavenumber, double sin_incidence,
              std::span<const double> sin_observation, std::span<std::complex<double>> out) {
  // The incidence and line terms do not depend on the observation angle.
  std::vector<std::complex<double>> fixed(paths.size());
  for (std::size_t p = 0; p < paths.size(); ++p) {
    fixed[p] = paths[p].weight *
               std::polar(1.0, -wavenumber * (paths[p].x_in * sin_incidence + paths[p].line_length));
  }
  const auto n = static_cast<std::ptrdiff_t>(sin_observation.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t p = 0; p < paths.size(); ++p) {
      acc += fixed[p] * std::polar(1.0, -wavenumber * paths[p].x_out * sin_observation[i]);
    }
    out[i] = acc;
  }
}

void synthesize_chirps(std::span<const ChirpEcho> echoes, std::size_t echoes_per_chirp,
                       std::size_t samples_per_chirp, double sample_rate, double noise_sigma,
                       std::uint64_t seed, std::uint64_t first_chirp, std::span<double> out) {
  const auto n_chirps = static_cast<std::ptrdiff_t>(out.size() / samples_per_chirp);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < n_chirps; ++c) {
    const auto uc = static_cast<std::size_t>(c);
    detail::synthesize_one(echoes.subspan(uc * echoes_per_chirp, echoes_per_chirp), sample_rate,
                           noise_sigma, chirp_stream_seed(seed, first_chirp + uc),
                           out.subspan(uc * samples_per_chirp, samples_per_chirp));
  }
}

void range_spectra(std::span<const double> samples, std::size_t n_chirps,
                   std::span<const double> window, std::span<std::complex<double>> out) {
  const std::size_t n = window.size();
  const std::size_t bins = n / 2 + 1;
#pragma omp parallel
  {
    std::vector<double> scratch;
#pragma omp for schedule(static)
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(n_chirps); ++c) {
      const auto uc = static_cast<std::size_t>(c);
      detail::range_spectrum_one(samples.subspan(uc * n, n), window, scratch,
                                 out.subspan(uc * bins, bins));
    }
  }
}

void doppler_spectra(std::span<const std::complex<double>> spectra, std::size_t n_chirps,
                     std::size_t n_bins, std::span<const double> window,
                     std::span<std::complex<double>> out) {
#pragma omp parallel
  {
    std::vector<std::complex<double>> scratch;
#pragma omp for schedule(static)
    for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(n_bins); ++b) {
      const auto ub = static_cast<std::size_t>(b);
      detail::doppler_one(spectra, n_chirps, n_bins, ub, window, scratch,
                          out.subspan(ub * n_chirps, n_chirps));
    }
  }
}

}  // namespace vanatta::kernels::omp
