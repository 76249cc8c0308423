#include "bvw/bivariant/axioms.hpp"
#include "bvw/extend/extend.hpp"
#include "bvw/instances/instances.hpp"
#include "bvw/simple/simple.hpp"
#include "bvw/site/builders.hpp"

#include <benchmark/benchmark.h>

using namespace bvw;

namespace {

TheoryPtr counting(int n, CoeffRing ring) { return build_simple_theory(counting_instance(build_finset_site(n), ring), "F"); }

void BM_BuildFinSetSite(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_finset_site(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_BuildFinSetSite)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_CheckSB(benchmark::State& state) {
  const auto d = counting_instance(build_finset_site(static_cast<int>(state.range(0))), CoeffRing::integers());
  for (auto _ : state) benchmark::DoNotOptimize(check_sb(d));
}
BENCHMARK(BM_CheckSB)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_CheckAxioms(benchmark::State& state) {
  const auto t = counting(static_cast<int>(state.range(0)), CoeffRing::integers());
  for (auto _ : state) benchmark::DoNotOptimize(check_axioms(*t));
}
BENCHMARK(BM_CheckAxioms)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_EulerAxioms(benchmark::State& state) {
  const auto t = build_simple_theory(euler_instance(build_graded_site({{0}, {1}, {0, 0}, {0, 1}}), CoeffRing::integers()), "E");
  for (auto _ : state) benchmark::DoNotOptimize(check_axioms(*t));
}
BENCHMARK(BM_EulerAxioms)->Unit(benchmark::kMillisecond);

void BM_RunExtensionMod2(benchmark::State& state) {
  auto site = build_finset_site(static_cast<int>(state.range(0)));
  auto F = build_simple_theory(counting_instance(site, CoeffRing::integers()), "F");
  auto H = build_simple_theory(counting_instance(site, CoeffRing::prime_field(2)), "H");
  const auto c = mod2_transform(F, H);
  const auto o = unit_orientation(*F);
  for (auto _ : state) benchmark::DoNotOptimize(run_extension(c, o));
}
BENCHMARK(BM_RunExtensionMod2)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

void BM_ComputeFprimeScaled(benchmark::State& state) {
  auto F = counting(static_cast<int>(state.range(0)), CoeffRing::rationals());
  Extender e(scaled_transform(F, Scalar(2)), unit_orientation(*F));
  const auto maps = e.o_allowable_morphisms();
  for (auto _ : state)
    for (MorId f : maps) benchmark::DoNotOptimize(e.compute_Fprime(f));
}
BENCHMARK(BM_ComputeFprimeScaled)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
