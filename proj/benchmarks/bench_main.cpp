#include <benchmark/benchmark.h>

#include "gdesign/corpus.hpp"
#include "gdesign/nonexistence.hpp"
#include "gdesign/spectrum.hpp"

using namespace gdesign;

namespace {

const Corpus& corpus() {
  static const Corpus c = Corpus::load_directory(GDESIGN_BENCH_DATA_DIR, false);
  return c;
}

BaseDecomposition k156() { return corpus().lookup(ShapeKey::complete(156), GraphId::n13).value(); }

void BM_Develop(benchmark::State& state) {
  const auto base = k156();
  for (auto _ : state) benchmark::DoNotOptimize(develop(base));
}
BENCHMARK(BM_Develop);

void BM_Verify(benchmark::State& state) {
  const auto base = k156();
  const auto method = state.range(0) == 0 ? CountingMethod::Triangular : CountingMethod::Hashed;
  for (auto _ : state) benchmark::DoNotOptimize(verify_decomposition(base, method));
}
BENCHMARK(BM_Verify)->Arg(0)->Arg(1);

void BM_LoadCorpusStrict(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(Corpus::load_directory(GDESIGN_BENCH_DATA_DIR, true));
}
BENCHMARK(BM_LoadCorpusStrict)->Unit(benchmark::kMillisecond);

void BM_Feasibility(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(feasibility_check(GraphId::n3, state.range(0)));
}
BENCHMARK(BM_Feasibility)->Arg(16)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_FindGdd(benchmark::State& state) {
  FindOptions o;
  o.use_bundled = false;
  for (auto _ : state) benchmark::DoNotOptimize(find_gdd(4, parse_group_type("2^13"), o));
}
BENCHMARK(BM_FindGdd);

void BM_BuildFresh(benchmark::State& state) {
  auto shared = std::make_shared<const Corpus>(corpus());
  BuildOptions o;
  o.data_dir = GDESIGN_BENCH_DATA_DIR;
  for (auto _ : state) {
    SpectrumBuilder b(shared, o);
    benchmark::DoNotOptimize(b.design(GraphId::n13, state.range(0)));
  }
}
BENCHMARK(BM_BuildFresh)->Arg(185)->Arg(296)->Arg(300)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
