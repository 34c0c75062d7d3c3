#include <doctest.h>

#include <omp.h>

#include <complex>
#include <random>
#include <vector>

#include "vanatta/fmcw.hpp"
#include "vanatta/kernels.hpp"

using namespace vanatta::kernels;
using cd = std::complex<double>;

namespace {

std::vector<PropagationPath> random_paths(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.1, 0.1);
  std::vector<PropagationPath> paths(n);
  for (auto& p : paths) p = {u(rng), u(rng), 0.15 + u(rng), 1.0 + u(rng)};
  return paths;
}

struct ThreadCount {
  int saved = omp_get_max_threads();
  explicit ThreadCount(int n) { omp_set_num_threads(n); }
  ~ThreadCount() { omp_set_num_threads(saved); }
};

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("path_sum: OpenMP equals serial") {
  const auto paths = random_paths(64, 1);
  std::vector<double> sin_obs(997);
  for (std::size_t i = 0; i < sin_obs.size(); ++i) sin_obs[i] = -1.0 + 2.0 * i / (sin_obs.size() - 1);
  std::vector<cd> a(sin_obs.size()), b(sin_obs.size());
  serial::path_sum(paths, 503.0, 0.3, sin_obs, a);
  for (int threads : {1, 3, 4}) {
    ThreadCount tc(threads);
    omp::path_sum(paths, 503.0, 0.3, sin_obs, b);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= 1e-12 * std::max(1.0, std::abs(a[i])));
  }
}

TEST_CASE("synthesize_chirps: identical output for any thread count") {
  const std::size_t chirps = 9, n = 500;
  std::vector<ChirpEcho> echoes(chirps * 2);
  for (std::size_t i = 0; i < echoes.size(); ++i) echoes[i] = {0.5 + i * 0.01, 1e4 * (i % 2 + 1), 0.1 * i};
  std::vector<double> ref(chirps * n), out(chirps * n);
  serial::synthesize_chirps(echoes, 2, n, 1e6, 0.3, 77, 10, ref);
  for (int threads : {1, 2, 4}) {
    ThreadCount tc(threads);
    omp::synthesize_chirps(echoes, 2, n, 1e6, 0.3, 77, 10, out);
    CHECK(out == ref);
  }
  CHECK(chirp_stream_seed(1, 0) != chirp_stream_seed(1, 1));
  CHECK(chirp_stream_seed(1, 0) != chirp_stream_seed(2, 0));
}

TEST_CASE("range and Doppler spectra: OpenMP equals serial") {
  const std::size_t chirps = 16, n = 256, bins = n / 2 + 1;
  std::vector<double> samples(chirps * n);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (auto& s : samples) s = g(rng);
  const auto w = vanatta::fmcw::hann_window(n);
  std::vector<cd> a(chirps * bins), b(chirps * bins);
  serial::range_spectra(samples, chirps, w, a);
  omp::range_spectra(samples, chirps, w, b);
  CHECK(a == b);
  const auto wd = vanatta::fmcw::hann_window(chirps);
  std::vector<cd> da(bins * chirps), db(bins * chirps);
  serial::doppler_spectra(a, chirps, bins, wd, da);
  omp::doppler_spectra(a, chirps, bins, wd, db);
  CHECK(da == db);
}

}  // TEST_SUITE
