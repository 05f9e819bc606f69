// Serial reference against the OpenMP kernel for each parallel stage.

#include <benchmark/benchmark.h>

#include "entropic/domain.hpp"
#include "entropic/entropy.hpp"
#include "entropic/event_index.hpp"
#include "entropic/models.hpp"
#include "entropic/named_sets.hpp"
#include "entropic/words.hpp"

using namespace entropic;

namespace {

Exec exec_of(const benchmark::State& state) {
  return state.range(0) == 0 ? Exec::Serial : Exec::Parallel;
}

void BM_Domain(benchmark::State& state) {
  for (auto _ : state) {
    Domain dom(OracleKind::MaxPs, 12, 3, kDefaultEnumerationCap, exec_of(state));
    benchmark::DoNotOptimize(dom.range_size());
  }
}

void BM_EventIndexXor(benchmark::State& state) {
  const Program program = builtin_program(ModelId::Xor);
  const Domain dom = build_domain(ModelId::Xor, 14, 2);
  IndexOptions options;
  options.exec = exec_of(state);
  for (auto _ : state) {
    const EventIndex index = build_event_index(program, dom, options);
    benchmark::DoNotOptimize(index.classes().size());
  }
}

void BM_EventIndexA0(benchmark::State& state) {
  const Program program = builtin_program(ModelId::MaxPsA0);
  const Domain dom = build_domain(ModelId::MaxPsA0, 10, 3);
  IndexOptions options;
  options.filter = EventFilter::Weeded;
  options.exec = exec_of(state);
  for (auto _ : state) {
    const EventIndex index = build_event_index(program, dom, options);
    benchmark::DoNotOptimize(index.classes().size());
  }
}

void BM_ClassWeights(benchmark::State& state) {
  const Program program = builtin_program(ModelId::MaxPsA0);
  const Domain dom = build_domain(ModelId::MaxPsA0, 10, 3);
  IndexOptions options;
  options.filter = EventFilter::Weeded;
  const EventIndex index = build_event_index(program, dom, options);
  for (auto _ : state) {
    benchmark::DoNotOptimize(class_weights(dom, index, exec_of(state)));
  }
}

void BM_SatisfactionSet(benchmark::State& state) {
  const Program program = builtin_program(ModelId::MaxPsA0);
  const Domain dom = build_domain(ModelId::MaxPsA0, 12, 3);
  ImagePool pool(program);
  const Trace trace = run(program, dom.input(0), default_step_budget(dom.n()));
  const WeededTrace weeded = weed(program, pool, trace);
  std::vector<LitId> lits;
  for (const auto& e : weeded.entries) lits.push_back(e.literal);
  lits.resize(std::min<std::size_t>(lits.size(), 4));
  for (auto _ : state) {
    benchmark::DoNotOptimize(satisfaction_set(dom, pool, lits, exec_of(state)).count());
  }
}

void BM_BrutePrimitive(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        brute_primitive(12, 4, WordConstraint::FirstEqualsThird, std::size_t{1} << 26,
                        exec_of(state)));
  }
}

void BM_PreimageCounts(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(preimage_counts(12, 3, std::size_t{1} << 26, exec_of(state)));
  }
}

}  // namespace

// Argument 0 is the serial reference, 1 the parallel kernel.
BENCHMARK(BM_Domain)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EventIndexXor)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EventIndexA0)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClassWeights)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SatisfactionSet)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BrutePrimitive)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PreimageCounts)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
