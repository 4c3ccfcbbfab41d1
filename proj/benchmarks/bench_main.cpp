#include <benchmark/benchmark.h>

#include "dplr/dyson.hpp"
#include "dplr/eigen.hpp"
#include "dplr/ensemble.hpp"
#include "dplr/mechanism.hpp"

namespace {

void BM_Eigh(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  dplr::RngStream rng(1, 0);
  const auto m = dplr::sample_noise(d, dplr::NoiseEnsemble::GUE, rng);
  for (auto _ : state) benchmark::DoNotOptimize(dplr::eigh(m));
}
BENCHMARK(BM_Eigh)->Arg(4)->Arg(16)->Arg(32)->Arg(64);

void BM_ComplexMechanism(benchmark::State& state) {
  const auto d = static_cast<std::size_t>(state.range(0));
  std::vector<double> spec(d);
  for (std::size_t i = 0; i < d; ++i) spec[i] = 100.0 * static_cast<double>(d - i);
  const auto m = dplr::HermitianMatrix::diagonal(spec);
  const auto p = dplr::privacy_time(1.0, 0.05);
  dplr::RngStream rng(2, 0);
  for (auto _ : state) benchmark::DoNotOptimize(dplr::complex_gaussian_mechanism(m, 2, p, rng));
}
BENCHMARK(BM_ComplexMechanism)->Arg(8)->Arg(32);

void BM_SdePath(benchmark::State& state) {
  const std::vector<double> g0{3.0, 1.0, -1.0, -3.0};
  const dplr::TimeGrid grid(0.0, 1.0, static_cast<std::size_t>(state.range(0)));
  dplr::RngStream rng(3, 0);
  for (auto _ : state)
    benchmark::DoNotOptimize(dplr::eigenvalue_sde_path(g0, dplr::NoiseEnsemble::GUE, grid, rng));
}
BENCHMARK(BM_SdePath)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
