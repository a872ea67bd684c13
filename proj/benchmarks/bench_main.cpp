#include <benchmark/benchmark.h>

#include "bgeom/curvature.hpp"
#include "bgeom/diskbounds.hpp"
#include "bgeom/domain.hpp"
#include "bgeom/frame.hpp"
#include "bgeom/metric.hpp"

using namespace bgeom;

namespace {

const DomainParams kParams = DomainParams::make(0.5, 2);
const SlicePoint kSlice = SlicePoint::make(0.35, 0.45, kParams);

void BM_Kernel(benchmark::State& state) {
  const NuPoint nu{0.01, 0.12, 0.2};
  for (auto _ : state) benchmark::DoNotOptimize(bergman_kernel(nu, kParams));
}
BENCHMARK(BM_Kernel);

void BM_KernelFactored(benchmark::State& state) {
  const NuPoint nu{0.01, 0.12, 0.2};
  for (auto _ : state) benchmark::DoNotOptimize(kernel_factored(nu, kParams));
}
BENCHMARK(BM_KernelFactored);

void BM_MetricClosed(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(metric_closed(kSlice, kParams));
}
BENCHMARK(BM_MetricClosed);

void BM_MetricNumeric(benchmark::State& state) {
  const auto mode = static_cast<DiffMode>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(metric_numeric(kSlice.point(), kParams, mode));
}
BENCHMARK(BM_MetricNumeric)
    ->Arg(static_cast<int>(DiffMode::reinhardt))
    ->Arg(static_cast<int>(DiffMode::real6))
    ->Unit(benchmark::kMicrosecond);

// Fourth-order jet plus tensor assembly.
void BM_CurvatureNumeric(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(curvature_numeric(kSlice.point(), kParams));
}
BENCHMARK(BM_CurvatureNumeric)->Unit(benchmark::kMillisecond);

void BM_HSCReport(benchmark::State& state) {
  const auto source = state.range(0) == 0 ? HSCSource::closed : HSCSource::numeric;
  for (auto _ : state) benchmark::DoNotOptimize(hsc_report(kSlice, kParams, source));
}
BENCHMARK(BM_HSCReport)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Phi(benchmark::State& state) {
  const double R = 0.5;
  switch (state.range(0)) {
    case 0:
      for (auto _ : state) benchmark::DoNotOptimize(phi_closed(R));
      break;
    case 1:
      for (auto _ : state) benchmark::DoNotOptimize(phi_reduction_1d(R));
      break;
    default:
      for (auto _ : state) benchmark::DoNotOptimize(phi_quadrature_2d(R));
  }
}
BENCHMARK(BM_Phi)->DenseRange(0, 2)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
