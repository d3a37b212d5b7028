#include <benchmark/benchmark.h>

#include <cmath>

#include "lmgdtc/floquet.hpp"
#include "lmgdtc/observables.hpp"
#include "lmgdtc/scaling.hpp"

using namespace lmgdtc;

namespace {

void BM_PropagatorSetup(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(FloquetPropagator(SpinSystem(n), {}, 0.6));
}
BENCHMARK(BM_PropagatorSetup)->Arg(100)->Arg(300)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_FloquetPeriod(benchmark::State& state) {
  const FloquetPropagator prop(SpinSystem(static_cast<int>(state.range(0))), {}, 0.6);
  const int steps = 100;
  for (auto _ : state) {
    double acc = 0.0;
    prop.run(0.1, steps, [&](int, const Eigen::VectorXcd& psi) { acc += std::norm(psi(0)); }, steps);
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * steps);
}
BENCHMARK(BM_FloquetPeriod)->Arg(100)->Arg(300)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Qfi(benchmark::State& state) {
  const FloquetPropagator prop(SpinSystem(static_cast<int>(state.range(0))), {}, 0.6);
  for (auto _ : state) benchmark::DoNotOptimize(qfi(prop, 0.13, 50).value);
}
BENCHMARK(BM_Qfi)->Arg(100)->Arg(300)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_OrderParameter(benchmark::State& state) {
  const FloquetPropagator prop(SpinSystem(static_cast<int>(state.range(0))), {}, 0.6);
  for (auto _ : state) benchmark::DoNotOptimize(order_parameter(prop, 0.13, 100));
}
BENCHMARK(BM_OrderParameter)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

ScalingDataset synthetic_dataset() {
  ScalingDataset data;
  for (int n : {60, 100, 200, 400, 600, 1000}) {
    std::vector<CurvePoint> pts;
    for (int i = 0; i <= 50; ++i) {
      const double x = 0.005 * i;
      pts.push_back({x, std::pow(n, 0.0625) / (1.0 + std::exp(std::pow(n, 1.0 / 2.4) * (x - 0.13))), std::nullopt});
    }
    data.add_curve(n, std::move(pts));
  }
  return data;
}

void BM_CollapseQuality(benchmark::State& state) {
  const ScalingDataset data = synthetic_dataset();
  for (auto _ : state)
    benchmark::DoNotOptimize(collapse_quality(data, {0.13, 2.4, -0.15}, ScalingTransform::NegativeExponent));
}
BENCHMARK(BM_CollapseQuality);

void BM_CollapseFit(benchmark::State& state) {
  const ScalingDataset data = synthetic_dataset();
  CollapseOptions opts;
  opts.restarts = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(fss_collapse(data, {0.12, 2.0, -0.1}, ScalingTransform::NegativeExponent, opts).quality);
}
BENCHMARK(BM_CollapseFit)->Arg(1)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
