// Monte Carlo sampler: OpenMP kernel against the serial reference.
//
//   fmeda_bench --benchmark_counters_tabular=true
//
// Both produce the same draws; the items/s column is samples per second.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "fmeda/mc_oracle.hpp"
#include "fmeda/mc_reference.hpp"
#include "support/random_tables.hpp"

namespace {

struct Fixture {
  std::vector<fmeda::ModeInputs> modes;
  double total = 0.0;
};

Fixture make_fixture(int mode_count) {
  fmeda::testing::TableGenerator gen(2024);
  auto shape = fmeda::testing::small_sigma_shape();
  shape.min_modes = shape.max_modes = mode_count;
  const auto table = gen.table(shape);
  return {fmeda::flatten(table), fmeda::total_lambda(table)};
}

fmeda::McConfig config(std::int64_t samples) {
  fmeda::McConfig c;
  c.samples = static_cast<std::uint64_t>(samples);
  c.seed = 7;
  return c;
}

void BM_Parallel(benchmark::State& state) {
  const auto f = make_fixture(static_cast<int>(state.range(0)));
  const auto cfg = config(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(fmeda::estimate_sigma(f.modes, f.total, fmeda::MetricKind::LFM, cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
  state.counters["threads"] = omp_get_max_threads();
}

void BM_Serial(benchmark::State& state) {
  const auto f = make_fixture(static_cast<int>(state.range(0)));
  const auto cfg = config(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(fmeda::reference::estimate_sigma_serial(f.modes, f.total, fmeda::MetricKind::LFM, cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

}  // namespace

BENCHMARK(BM_Parallel)->ArgsProduct({{5, 50}, {100000, 1000000}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Serial)->ArgsProduct({{5, 50}, {100000, 1000000}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
