// Serial vs OpenMP kernels on a synthetic workload.
//   bench_kernels --benchmark_filter=cost_matrix

#include <benchmark/benchmark.h>

#include "bji/kernels.hpp"
#include "bji/pipeline.hpp"
#include "bji/synth.hpp"

namespace {

using namespace bji;

struct Setup {
  SchemaCatalog catalog;
  std::vector<Query> queries;
  QueryAttributeMatrix matrix;
  CandidateSet candidates;
  std::vector<Bitset> tids;
  CostMatrix costs;
  std::vector<std::size_t> all;
};

// Larger than the default fixture so the parallel loops have work to share.
const Setup& setup() {
  static const Setup s = [] {
    Setup s;
    const auto f = generate_synthetic(42, 1, 400);
    s.catalog = parse_catalog(f.catalog_json);
    s.queries = load_workload(f.workload_sql, s.catalog).queries;
    s.matrix = build_matrix(s.queries, s.catalog);
    const auto sets = mine_closed(s.matrix, 0.002, Exec::serial);
    s.candidates = build_candidate_set(sets, s.matrix, s.catalog);
    for (const auto& f : sets) {
      Bitset t(s.matrix.row_count());
      t.set();
      for (auto c : f.items) t &= s.matrix.tidset(c);
      s.tids.push_back(t);
    }
    s.costs = build_cost_matrix(s.queries, s.candidates.candidates, s.catalog, Exec::serial);
    for (std::size_t c = 0; c < s.costs.candidates; ++c) s.all.push_back(c);
    return s;
  }();
  return s;
}

Exec exec_of(const benchmark::State& state) { return state.range(0) ? Exec::parallel : Exec::serial; }

void closures(benchmark::State& state) {
  const auto& s = setup();
  for (auto _ : state) benchmark::DoNotOptimize(closure_batch(s.matrix, s.tids, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.tids.size()));
}

void cost_matrix(benchmark::State& state) {
  const auto& s = setup();
  for (auto _ : state)
    benchmark::DoNotOptimize(build_cost_matrix(s.queries, s.candidates.candidates, s.catalog, exec_of(state)));
  state.SetItemsProcessed(state.iterations() *
                          static_cast<std::int64_t>(s.queries.size() * s.candidates.candidates.size()));
}

void scenarios(benchmark::State& state) {
  const auto& s = setup();
  for (auto _ : state)
    benchmark::DoNotOptimize(scenario_costs(s.costs, s.costs.baseline, s.all, exec_of(state)));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.all.size()));
}

}  // namespace

// Arg 0 = serial reference, 1 = OpenMP.
BENCHMARK(closures)->Arg(0)->Arg(1);
BENCHMARK(cost_matrix)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(scenarios)->Arg(0)->Arg(1);

BENCHMARK_MAIN();
