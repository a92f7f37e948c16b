#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "atasim/data_array.hpp"
#include "atasim/generator.hpp"
#include "atasim/simulator.hpp"
#include "atasim/tag_array.hpp"

using namespace atasim;

static void BM_AggregatedLookup(benchmark::State& state) {
  const CacheGeometry g;
  const auto caches = static_cast<std::uint32_t>(state.range(0));
  std::mt19937_64 rng(1);
  std::vector<TagArray> arrays;
  for (std::uint32_t i = 0; i < caches; ++i) {
    arrays.emplace_back(i, g);
    for (int k = 0; k < 400; ++k) {
      arrays.back().install_line(decode_address((rng() % 2048) * g.line_size, g), 0);
    }
  }
  std::vector<const TagArray*> ptrs;
  for (auto& a : arrays) ptrs.push_back(&a);
  std::vector<LookupRequest> reqs;
  for (std::uint32_t i = 0; i < caches; ++i) {
    reqs.push_back({i, decode_address((rng() % 2048) * g.line_size, g)});
  }
  for (auto _ : state) benchmark::DoNotOptimize(aggregated_lookup(reqs, ptrs));
  state.SetItemsProcessed(state.iterations() * caches);
}
BENCHMARK(BM_AggregatedLookup)->Arg(2)->Arg(5)->Arg(10);

static void BM_BankSchedule(benchmark::State& state) {
  const CacheGeometry g;
  DataArray d(0, g);
  std::vector<BankAccess> acc;
  for (std::uint32_t i = 0; i < 10; ++i) acc.push_back({i, i, i % g.sets()});
  Cycle now = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(d.bank_schedule(acc, now));
    now += 10;
  }
  state.SetItemsProcessed(state.iterations() * acc.size());
}
BENCHMARK(BM_BankSchedule);

static void BM_Simulate(benchmark::State& state) {
  GenParams p;
  p.cores = 10;
  p.requests_per_core = 2048;
  p.shared_prob = 0.8;
  const auto trace = generate(p);
  SimConfig c;
  c.num_cores = 10;
  c.architecture = static_cast<Architecture>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(simulate(c, trace).total_cycles);
  state.SetItemsProcessed(state.iterations() * trace.size());
  state.SetLabel(std::string(to_string(c.architecture)));
}
BENCHMARK(BM_Simulate)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
