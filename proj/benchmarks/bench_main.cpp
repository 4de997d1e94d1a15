#include <benchmark/benchmark.h>

#include "hbk/bounds.hpp"
#include "hbk/builders.hpp"
#include "hbk/coloring.hpp"
#include "hbk/moves.hpp"

namespace {

using namespace hbk;
namespace b = hbk::builders;

AlexanderBiquandle gf9() {
  Field f = Field::make(3, {2, 1, 1});
  return AlexanderBiquandle::make(f, f.element({1, 1}));
}

void BM_FieldMul(benchmark::State& state) {
  Field f = Field::make(3, {1, 2, 1, 2, 1});
  FieldElement a = f.element({1, 2, 0, 1});
  FieldElement x = f.element({2, 1, 1});
  for (auto _ : state) {
    x = x * a;
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_FieldMul);

void BM_FieldInv(benchmark::State& state) {
  Field f = Field::make(3, {1, 2, 1, 2, 1});
  FieldElement x = f.element({2, 1, 1});
  for (auto _ : state) {
    benchmark::DoNotOptimize(x.inv());
  }
}
BENCHMARK(BM_FieldInv);

void BM_ColoringMatrixRank(benchmark::State& state) {
  Diagram d = b::two_crossing_genus2();
  AlexanderBiquandle ab = gf9();
  Flow flow = make_flow(d, 8, {{"x2", 1}, {"x4", 2}, {"x1", 2}, {"x6", 1}, {"x5", 3}});
  for (auto _ : state) {
    ColoringMatrix mx = coloring_matrix(d, flow, ab);
    benchmark::DoNotOptimize(rank(mx));
  }
}
BENCHMARK(BM_ColoringMatrixRank);

void BM_FlowEnumeration(benchmark::State& state) {
  Diagram d = b::two_crossing_genus2();
  for (auto _ : state) {
    size_t count = 0;
    flow_space(d, 8).for_each_flow([&](const Flow&) { ++count; });
    benchmark::DoNotOptimize(count);
  }
}
BENCHMARK(BM_FlowEnumeration);

void BM_Residual(benchmark::State& state) {
  Diagram d = b::two_crossing_genus2();
  AlexanderBiquandle ab = gf9();
  Flow flow = make_flow(d, 8, {{"x2", 1}, {"x4", 2}, {"x1", 2}, {"x6", 1}, {"x5", 3}});
  for (auto _ : state) {
    benchmark::DoNotOptimize(relation_residual(d, flow, ab));
  }
}
BENCHMARK(BM_Residual);

void BM_UnknottingBound(benchmark::State& state) {
  Diagram d = b::two_crossing_genus2();
  AlexanderBiquandle ab = gf9();
  for (auto _ : state) {
    benchmark::DoNotOptimize(unknotting_lower_bound(d, ab, 8));
  }
}
BENCHMARK(BM_UnknottingBound);

void BM_BruteForceColorings(benchmark::State& state) {
  Diagram d = b::trefoil();
  Field f = Field::make(2, {1, 1, 1});
  AlexanderBiquandle ab = AlexanderBiquandle::make(f, f.one());
  Flow one = make_flow(d, 3, {{"l1", 1}, {"l2", 1}, {"l3", 1}});
  for (auto _ : state) {
    benchmark::DoNotOptimize(coloring_count_bruteforce(d, one, ab, 1 << 20));
  }
}
BENCHMARK(BM_BruteForceColorings);

}  // namespace

BENCHMARK_MAIN();
