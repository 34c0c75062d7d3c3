// Serial reference vs OpenMP kernels on representative problem sizes.

#include <benchmark/benchmark.h>

#include <complex>
#include <random>
#include <vector>

#include "vanatta/fmcw.hpp"
#include "vanatta/kernels.hpp"

namespace k = vanatta::kernels;
using cd = std::complex<double>;

namespace {

struct PatternData {
  std::vector<k::PropagationPath> paths;
  std::vector<double> sin_obs;
  std::vector<cd> out;
  explicit PatternData(std::size_t n_paths, std::size_t n_angles) : paths(n_paths), sin_obs(n_angles), out(n_angles) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-0.1, 0.1);
    for (auto& p : paths) p = {u(rng), u(rng), 0.15 + u(rng), 1.0};
    for (std::size_t i = 0; i < n_angles; ++i) sin_obs[i] = -1.0 + 2.0 * i / (n_angles - 1);
  }
};

template <auto Kernel>
void BM_path_sum(benchmark::State& state) {
  PatternData d(static_cast<std::size_t>(state.range(0)), 721);
  for (auto _ : state) {
    Kernel(d.paths, 503.0, 0.5, d.sin_obs, d.out);
    benchmark::DoNotOptimize(d.out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 721);
}

template <auto Kernel>
void BM_synthesize(benchmark::State& state) {
  const std::size_t chirps = static_cast<std::size_t>(state.range(0)), n = 1000;
  std::vector<k::ChirpEcho> echoes(chirps, {1.0, 166e3, 0.3});
  std::vector<double> out(chirps * n);
  for (auto _ : state) {
    Kernel(echoes, 1, n, 2e6, 0.1, 7, 0, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(chirps * n));
}

template <auto Kernel>
void BM_range_spectra(benchmark::State& state) {
  const std::size_t chirps = static_cast<std::size_t>(state.range(0)), n = 1000;
  std::vector<double> samples(chirps * n);
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  for (auto& s : samples) s = g(rng);
  const auto w = vanatta::fmcw::hann_window(n);
  std::vector<cd> out(chirps * (n / 2 + 1));
  for (auto _ : state) {
    Kernel(samples, chirps, w, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(chirps * n));
}

template <auto Kernel>
void BM_doppler_spectra(benchmark::State& state) {
  const std::size_t chirps = static_cast<std::size_t>(state.range(0)), bins = 501;
  std::vector<cd> spectra(chirps * bins, cd(1.0, -0.5));
  const auto w = vanatta::fmcw::hann_window(chirps);
  std::vector<cd> out(bins * chirps);
  for (auto _ : state) {
    Kernel(spectra, chirps, bins, w, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(chirps * bins));
}

}  // namespace

BENCHMARK(BM_path_sum<k::serial::path_sum>)->Name("path_sum/serial")->Arg(8)->Arg(64)->Arg(512);
BENCHMARK(BM_path_sum<k::omp::path_sum>)->Name("path_sum/omp")->Arg(8)->Arg(64)->Arg(512)->UseRealTime();
BENCHMARK(BM_synthesize<k::serial::synthesize_chirps>)->Name("synthesize/serial")->Arg(64)->Arg(256);
BENCHMARK(BM_synthesize<k::omp::synthesize_chirps>)->Name("synthesize/omp")->Arg(64)->Arg(256)->UseRealTime();
BENCHMARK(BM_range_spectra<k::serial::range_spectra>)->Name("range_spectra/serial")->Arg(64)->Arg(256);
BENCHMARK(BM_range_spectra<k::omp::range_spectra>)->Name("range_spectra/omp")->Arg(64)->Arg(256)->UseRealTime();
BENCHMARK(BM_doppler_spectra<k::serial::doppler_spectra>)->Name("doppler_spectra/serial")->Arg(64)->Arg(256);
BENCHMARK(BM_doppler_spectra<k::omp::doppler_spectra>)->Name("doppler_spectra/omp")->Arg(64)->Arg(256)->UseRealTime();

BENCHMARK_MAIN();
