#include "bvw/frontend/document.hpp"
#include "bvw/frontend/workspace.hpp"

#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

using namespace bvw;

namespace {

std::string fixture(const char* name) {
  std::ifstream in(std::string(BVW_FIXTURE_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void BM_ParsePrint(benchmark::State& state, const char* name) {
  const std::string text = fixture(name);
  if (!dsl::parse(text).document) {
    state.SkipWithError("fixture does not parse");
    return;
  }
  for (auto _ : state) {
    auto r = dsl::parse(text);
    benchmark::DoNotOptimize(dsl::print(*r.document));
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK_CAPTURE(BM_ParsePrint, dual, "dual.bvw");
BENCHMARK_CAPTURE(BM_ParsePrint, smith, "smith.bvw");
BENCHMARK_CAPTURE(BM_ParsePrint, counting, "counting.bvw");

void BM_LoadWorkspace(benchmark::State& state) {
  const auto doc = *dsl::parse(fixture("mod2.bvw")).document;
  for (auto _ : state) {
    dsl::Workspace ws(doc);
    benchmark::DoNotOptimize(ws.transform("c"));
  }
}
BENCHMARK(BM_LoadWorkspace)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
