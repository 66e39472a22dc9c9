// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include "tms/rigidity.hpp"
#include "tms/spectrum.hpp"

namespace {

tms::GibbsChain bench_chain() {
  return tms::GibbsChain::from_stochastic(tms::snr_example_matrix(), tms::example_q_matrix({0.2, 0.3, 0.5, 0.4, 0.6}));
}

void BM_SpectrumCurve(benchmark::State& state) {
  const auto chain = bench_chain();
  const int steps = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tms::spectrum_curve(chain, -3.0, 3.0, steps));
}

void BM_SpectrumCurveSerial(benchmark::State& state) {
  const auto chain = bench_chain();
  const int steps = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(tms::serial::spectrum_curve(chain, -3.0, 3.0, steps));
}

void BM_CharPolyFamily(benchmark::State& state) {
  const auto f = bench_chain();
  const auto g = tms::counterexample_chain(f);
  const auto grid = tms::q_grid(-3.0, 3.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tms::char_poly_family_equal(f, g, grid, 1e-10));
}

void BM_CharPolyFamilySerial(benchmark::State& state) {
  const auto f = bench_chain();
  const auto g = tms::counterexample_chain(f);
  const auto grid = tms::q_grid(-3.0, 3.0, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tms::serial::char_poly_family_equal(f, g, grid, 1e-10));
}

void BM_SampleG(benchmark::State& state) {
  const auto a = tms::snr_example_matrix();
  for (auto _ : state) benchmark::DoNotOptimize(tms::sample_G(a, static_cast<int>(state.range(0)), 0));
}

void BM_SampleGSerial(benchmark::State& state) {
  const auto a = tms::snr_example_matrix();
  for (auto _ : state) benchmark::DoNotOptimize(tms::serial::sample_G(a, static_cast<int>(state.range(0)), 0));
}

}  // namespace

BENCHMARK(BM_SpectrumCurve)->Arg(25)->Arg(201);
BENCHMARK(BM_SpectrumCurveSerial)->Arg(25)->Arg(201);
BENCHMARK(BM_CharPolyFamily)->Arg(25)->Arg(201);
BENCHMARK(BM_CharPolyFamilySerial)->Arg(25)->Arg(201);
BENCHMARK(BM_SampleG)->Arg(1000);
BENCHMARK(BM_SampleGSerial)->Arg(1000);

BENCHMARK_MAIN();
