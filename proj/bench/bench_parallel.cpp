// Serial reference vs OpenMP kernels: numeric residual sampling and fuzz trials.
#include <benchmark/benchmark.h>

#include "tpdde/fuzz.hpp"

namespace {

using namespace tpdde;

struct Subject {
  TrinomialPDDE eq;
  ExpPoly f;
};

Subject subject() {
  const FuzzDraw d = draw_admissible({Theorem::T22, CaseId::IV}, 7);
  return {d.eq, construct(d.eq, d.params).first.f};
}

void BM_verify_numeric(benchmark::State& state, Exec exec) {
  const Subject s = subject();
  const auto samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_numeric(s.eq, s.f, samples, 0, 1e-8, exec));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_fuzz(benchmark::State& state, Exec exec) {
  FuzzOptions o;
  o.trials = static_cast<std::size_t>(state.range(0));
  o.exec = exec;
  for (auto _ : state) benchmark::DoNotOptimize(run_fuzz(o));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 7);
}

}  // namespace

BENCHMARK_CAPTURE(BM_verify_numeric, serial, Exec::Serial)->Arg(100)->Arg(10000);
BENCHMARK_CAPTURE(BM_verify_numeric, parallel, Exec::Parallel)->Arg(100)->Arg(10000);
BENCHMARK_CAPTURE(BM_fuzz, serial, Exec::Serial)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_fuzz, parallel, Exec::Parallel)->Arg(20)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
