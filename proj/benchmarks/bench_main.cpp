#include <benchmark/benchmark.h>

#include "asyncbcd/builtins.hpp"
#include "asyncbcd/sampling.hpp"
#include "asyncbcd/simulator.hpp"

using namespace asyncbcd;

namespace {

const ObjectiveInstance& logistic() {
  static const ObjectiveInstance obj =
      make_builtin(LogisticParams{preprocess(generate_synthetic({2000, 200, 1.0, 1, 1})), 0.01});
  return obj;
}

void BM_ScheduleStream(benchmark::State& state) {
  const auto B = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    ScheduleStream s({20, 10000, B, ScheduleMode::uniform_random, 1, 1});
    for (std::size_t t = 0; t < 10000; ++t) benchmark::DoNotOptimize(s.slice(t).active.data());
  }
  state.SetItemsProcessed(state.iterations() * 10000);
}
BENCHMARK(BM_ScheduleStream)->Arg(10)->Arg(100)->Arg(1000);

void BM_GenerateSchedule(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(generate_schedule({8, 2000, 10, ScheduleMode::uniform_random, 1, 3}));
}
BENCHMARK(BM_GenerateSchedule);

void BM_QuadraticSteps(benchmark::State& state) {
  const auto obj = make_builtin(DiagonalQuadraticParams{Vector(64, 1.0)});
  const auto part = make_partition(64, EqualSplit{8});
  const Vector x0(64, 1.0);
  for (auto _ : state) {
    ScheduleStream s({8, 5000, 5, ScheduleMode::uniform_random, 1, 2});
    benchmark::DoNotOptimize(run(obj, part, s, x0, 1e-3).final_value);
  }
  state.SetItemsProcessed(state.iterations() * 5000);
}
BENCHMARK(BM_QuadraticSteps);

void BM_LogisticSteps(benchmark::State& state) {
  const bool cache = state.range(0) != 0;
  const auto& obj = logistic();
  const auto part = make_partition(obj.dimension(), EqualSplit{20});
  const Vector x0(obj.dimension(), 0.0);
  SimulationOptions opts;
  opts.margin_cache = cache;
  opts.record_every = 100;
  for (auto _ : state) {
    ScheduleStream s({20, 200, 10, ScheduleMode::uniform_random, 1, 1});
    benchmark::DoNotOptimize(run(obj, part, s, x0, 1e-3, opts).final_value);
  }
  state.SetItemsProcessed(state.iterations() * 200);
  state.SetLabel(cache ? "margin cache" : "generic");
}
BENCHMARK(BM_LogisticSteps)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_LogisticPartialGradient(benchmark::State& state) {
  const auto& obj = logistic();
  const Vector x = sample_gaussian(obj.dimension(), 0.1, 1, 4).front();
  Vector out(10);
  for (auto _ : state) {
    obj.fn->partial_gradient(x, 30, out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_LogisticPartialGradient);

void BM_LogisticGradientFromMargins(benchmark::State& state) {
  const auto& obj = logistic();
  const auto* model = obj.fn->margin_model();
  const Vector x = sample_gaussian(obj.dimension(), 0.1, 1, 4).front();
  Vector margins(model->samples(), 0.0), part(model->samples()), out(10);
  for (std::size_t b = 0; b < 20; ++b) {
    model->block_margins(b * 10, std::span<const double>(x).subspan(b * 10, 10), part);
    for (std::size_t k = 0; k < margins.size(); ++k) margins[k] += part[k];
  }
  for (auto _ : state) {
    model->block_gradient_from_margins(margins, 30, std::span<const double>(x).subspan(30, 10), out);
    benchmark::DoNotOptimize(out.data());
  }
}
BENCHMARK(BM_LogisticGradientFromMargins);

}  // namespace

BENCHMARK_MAIN();
