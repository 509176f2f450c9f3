// Serial reference kernels against their OpenMP counterparts.
// Sizes are sample counts; 441000 is ten seconds at 44.1 kHz.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "asrjudge/fft.hpp"
#include "asrjudge/kernels.hpp"
#include "asrjudge/spectrum.hpp"

namespace {

namespace k = asrjudge::kernels;

std::vector<double> noise(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> x(n);
  for (auto& v : x) v = u(rng);
  return x;
}

std::vector<std::int16_t> pcm(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> u(-32768, 32767);
  std::vector<std::int16_t> x(n);
  for (auto& v : x) v = static_cast<std::int16_t>(u(rng));
  return x;
}

template <bool Parallel>
void BM_Covariance(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = noise(n, 1), y = noise(n, 2);
  for (auto _ : state) {
    auto c = Parallel ? k::parallel::covariance(x, y, 0.0, 0.0) : k::serial::covariance(x, y, 0.0, 0.0);
    benchmark::DoNotOptimize(c);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_IcaStatistics(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto z0 = noise(n, 3), z1 = noise(n, 4);
  const asrjudge::Mat2 w{0.8, 0.6, -0.6, 0.8};
  for (auto _ : state) {
    auto s = Parallel ? k::parallel::ica_statistics(z0, z1, w, k::Contrast::LogCosh)
                      : k::serial::ica_statistics(z0, z1, w, k::Contrast::LogCosh);
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_Subtract(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = pcm(n, 5), b = pcm(n, 6);
  std::vector<std::int16_t> out(n);
  for (auto _ : state) {
    if (Parallel) {
      k::parallel::subtract_saturating(a, b, out);
    } else {
      k::serial::subtract_saturating(a, b, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_PowerGrid(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = noise(n, 7);
  const asrjudge::FftPlan plan(256);
  const auto window = asrjudge::make_window(asrjudge::Window::Hann, 256);
  for (auto _ : state) {
    auto g = Parallel ? k::parallel::power_grid(x, plan, window, 128) : k::serial::power_grid(x, plan, window, 128);
    benchmark::DoNotOptimize(g.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Parallel>
void BM_MeanPower(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto x = noise(n, 8);
  const asrjudge::FftPlan plan(2048);
  const auto window = asrjudge::make_window(asrjudge::Window::Hann, 2048);
  for (auto _ : state) {
    auto p = Parallel ? k::parallel::mean_power(x, plan, window, 1024) : k::serial::mean_power(x, plan, window, 1024);
    benchmark::DoNotOptimize(p.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

#define ASRJUDGE_PAIR(fn)                                                                      \
  BENCHMARK(fn<false>)->Name(#fn "/serial")->RangeMultiplier(10)->Range(44100, 4410000);       \
  BENCHMARK(fn<true>)->Name(#fn "/parallel")->RangeMultiplier(10)->Range(44100, 4410000)

ASRJUDGE_PAIR(BM_Covariance);
ASRJUDGE_PAIR(BM_IcaStatistics);
ASRJUDGE_PAIR(BM_Subtract);
ASRJUDGE_PAIR(BM_PowerGrid);
ASRJUDGE_PAIR(BM_MeanPower);

BENCHMARK_MAIN();
