// Serial vs OpenMP strategy search, and the level-by-level G search.

#include <benchmark/benchmark.h>

#include <map>
#include <string>

#include "atlir/atl.hpp"
#include "atlir/io.hpp"
#include "atlir/mc.hpp"
#include "atlir/reduction.hpp"

using namespace atlir;

namespace {

const ReductionCgs& compiled(const std::string& name) {
  static std::map<std::string, ReductionCgs> cache;
  auto it = cache.find(name);
  if (it == cache.end())
    it = cache.emplace(name, build_cgs(load_machine(std::string(ATLIR_DATA_DIR) + "/machines/" + name + ".json"))).first;
  return it->second;
}

void run_check(benchmark::State& state, const std::string& name, int jobs) {
  const auto& r = compiled(name);
  auto f = parse_formula("<<1,2>> G ok");
  const int bound = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(check(r.cgs, r.init, f, bound, CheckOptions{jobs}).value);
}

void run_levels(benchmark::State& state, const std::string& name) {
  const auto& r = compiled(name);
  const int bound = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(check_box_atomic(r.cgs, r.init, {AgentId(1), AgentId(2)}, r.ok, bound).value);
}

void BM_serial_halt(benchmark::State& s) { run_check(s, "M_halt", 1); }
void BM_parallel_halt(benchmark::State& s) { run_check(s, "M_halt", 0); }
void BM_levels_halt(benchmark::State& s) { run_levels(s, "M_halt"); }
void BM_serial_ext(benchmark::State& s) { run_check(s, "M5_ext", 1); }
void BM_parallel_ext(benchmark::State& s) { run_check(s, "M5_ext", 0); }
void BM_levels_ext(benchmark::State& s) { run_levels(s, "M5_ext"); }

}  // namespace

BENCHMARK(BM_serial_halt)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_parallel_halt)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_levels_halt)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_serial_ext)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_parallel_ext)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_levels_ext)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
