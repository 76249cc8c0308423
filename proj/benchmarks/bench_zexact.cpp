#include "bvw/zexact/linalg.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace bvw;

namespace {

Matrix random_matrix(const CoeffRing& ring, std::size_t rows, std::size_t cols, std::uint32_t seed) {
  std::mt19937 gen(seed);
  std::uniform_int_distribution<int> d(-9, 9);
  std::vector<std::vector<Scalar>> data(rows, std::vector<Scalar>(cols));
  for (auto& r : data)
    for (auto& x : r) x = Scalar(d(gen));
  return Matrix::from_rows(ring, data, cols);
}

void BM_SmithNormalForm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix m = random_matrix(CoeffRing::integers(), n, n, 7);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SmithNormalForm)->RangeMultiplier(2)->Range(4, 32)->Complexity();

void BM_HermiteSpan(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Matrix m = random_matrix(CoeffRing::integers(), 2 * n, n, 11);
  for (auto _ : state) benchmark::DoNotOptimize(Submodule::row_span(m));
}
BENCHMARK(BM_HermiteSpan)->RangeMultiplier(2)->Range(4, 32);

void BM_KernelOverField(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const CoeffRing q = CoeffRing::rationals();
  const Matrix m = random_matrix(q, n, 2 * n, 13);
  const ModuleMap f(Module::free(q, 2 * n), Module::free(q, n), m);
  for (auto _ : state) benchmark::DoNotOptimize(kernel(f));
}
BENCHMARK(BM_KernelOverField)->RangeMultiplier(2)->Range(4, 32);

void BM_KernelIntegersToF2(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const CoeffRing f2 = CoeffRing::prime_field(2);
  const Matrix m = random_matrix(f2, n, n, 17);
  const ModuleMap f(Module::free(CoeffRing::integers(), n), Module::free(f2, n), m);
  for (auto _ : state) benchmark::DoNotOptimize(kernel(f));
}
BENCHMARK(BM_KernelIntegersToF2)->RangeMultiplier(2)->Range(4, 32);

}  // namespace

BENCHMARK_MAIN();
