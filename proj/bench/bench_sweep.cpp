// OpenMP grid kernels against their serial references.

#include <benchmark/benchmark.h>

#include <numbers>

#include "turandet/estimator.hpp"
#include "turandet/oracle.hpp"
#include "turandet/parallel.hpp"
#include "turandet/reference.hpp"

using namespace turandet;

namespace {

const auto kGrid = linspace(-2.0, 2.0, 512);

template <bool Parallel>
void turan_grid(benchmark::State& state) {
  const auto seq = CoefficientSequence::meixner_pollaczek(0.5, std::numbers::pi / 4);
  const auto est = make_estimator(seq, EstimatorKind::Regular, 1, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto v = Parallel ? estimate_on_grid(seq, est, kGrid) : estimate_on_grid_serial(seq, est, kGrid);
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(kGrid.size()));
}

template <bool Parallel>
void christoffel_grid(benchmark::State& state) {
  const auto seq = CoefficientSequence::gen_hermite(0.0);
  const auto est = make_estimator(seq, EstimatorKind::Christoffel, 1, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    auto v = Parallel ? estimate_on_grid(seq, est, kGrid) : estimate_on_grid_serial(seq, est, kGrid);
    benchmark::DoNotOptimize(v.data());
  }
}

template <bool Parallel>
void reference_grid(benchmark::State& state) {
  const auto ref = *ReferenceDensity::for_sequence(CoefficientSequence::meixner_pollaczek(0.5, 1.0));
  const auto f = [&](double x) { return ref(x); };
  for (auto _ : state) {
    auto v = Parallel ? sweep(kGrid, f) : sweep_serial(kGrid, f);
    benchmark::DoNotOptimize(v.data());
  }
}

}  // namespace

BENCHMARK(turan_grid<false>)->Arg(100)->Arg(1000);
BENCHMARK(turan_grid<true>)->Arg(100)->Arg(1000);
BENCHMARK(christoffel_grid<false>)->Arg(2000);
BENCHMARK(christoffel_grid<true>)->Arg(2000);
BENCHMARK(reference_grid<false>);
BENCHMARK(reference_grid<true>);

BENCHMARK_MAIN();
