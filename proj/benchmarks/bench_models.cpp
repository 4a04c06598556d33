#include <benchmark/benchmark.h>

#include <vector>

#include "griphand/alignment.hpp"
#include "griphand/mechkin.hpp"
#include "griphand/screwarr.hpp"
#include "griphand/sizing.hpp"

using namespace griphand;

static void BM_CrankTravel(benchmark::State& state) {
  const mechkin::CrankSpec spec{10, 20};
  double a = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mechkin::crank_travel(spec, a));
    a = a > 1.5 ? 0.0 : a + 1e-3;
  }
}
BENCHMARK(BM_CrankTravel);

static void BM_InvertTravel(benchmark::State& state) {
  const mechkin::CrankSpec spec{10, 20};
  const double top = mechkin::crank_travel(spec, kHalfPi);
  double s = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(mechkin::invert_travel(spec, s));
    s = s > top - 0.1 ? 0.0 : s + 0.01;
  }
}
BENCHMARK(BM_InvertTravel);

static void BM_GridExperiment(benchmark::State& state) {
  alignment::ObjectSpec obj;
  obj.outer_D = 20;
  obj.hole_d = 10;
  const std::vector<double> rings{4.8, 2.4};
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(alignment::run_grid_experiment(
        alignment::Strategy::Stretch, obj, {}, {}, {}, rings, n));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(2 * n));
}
BENCHMARK(BM_GridExperiment)->Arg(8)->Arg(64)->Arg(512);

static void BM_FingertipDeflection(benchmark::State& state) {
  const screwarr::FingerGeometry geom;
  const MaterialSpec mat;
  double F = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(screwarr::fingertip_deflection(geom, mat, F));
    F = F > 10 ? 1.0 : F + 0.01;
  }
}
BENCHMARK(BM_FingertipDeflection);

static void BM_SimulateArrange(benchmark::State& state) {
  const screwarr::ScrewSpec screw;
  const screwarr::FingerGeometry geom;
  const MaterialSpec mat;
  for (auto _ : state) {
    benchmark::DoNotOptimize(screwarr::simulate_arrange(screw, {}, geom, mat));
  }
}
BENCHMARK(BM_SimulateArrange);

static void BM_PullCurve(benchmark::State& state) {
  const sizing::HoldingChain chain;
  const sizing::PullTestConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        sizing::emulate_pull_curve(chain, cfg, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_PullCurve)->Arg(101)->Arg(10001);

BENCHMARK_MAIN();
