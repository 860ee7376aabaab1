#include "bji/kernels.hpp"

#include <algorithm>

namespace bji {

namespace kernels::serial {

std::vector<Bitset> closures(const QueryAttributeMatrix& m, std::span<const Bitset> tidsets) {
  std::vector<Bitset> out;
  out.reserve(tidsets.size());
  for (const auto& tids : tidsets) {
    Bitset closed(m.column_count());
    for (std::size_t c = 0; c < m.column_count(); ++c)
      if (tids.is_subset_of(m.tidset(c))) closed.set(c);
    out.push_back(std::move(closed));
  }
  return out;
}

CostMatrix cost_matrix(std::span<const Query> queries, std::span<const CandidateIndex> candidates,
                       const SchemaCatalog& catalog) {
  CostMatrix out;
  out.queries = queries.size();
  out.candidates = candidates.size();
  for (const auto& q : queries) out.baseline.push_back(baseline_cost(q, catalog));
  out.cells.assign(out.queries * out.candidates, kNotApplicable);
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    for (std::size_t q = 0; q < queries.size(); ++q) {
      if (auto cost = index_query_cost(queries[q], candidates[c], catalog))
        out.cells[c * out.queries + q] = cost->total();
    }
  }
  return out;
}

std::vector<double> scenario_costs(const CostMatrix& costs, std::span<const double> current,
                                   std::span<const std::size_t> candidates) {
  std::vector<double> out;
  out.reserve(candidates.size());
  for (const auto c : candidates) {
    const auto column = costs.column(c);
    double total = 0;
    for (std::size_t q = 0; q < costs.queries; ++q) total += std::min(current[q], column[q]);
    out.push_back(total);
  }
  return out;
}

}  // namespace kernels::serial

std::vector<Bitset> closure_batch(const QueryAttributeMatrix& m, std::span<const Bitset> tidsets,
                                  Exec exec) {
  return exec == Exec::parallel ? kernels::omp::closures(m, tidsets)
                                : kernels::serial::closures(m, tidsets);
}

CostMatrix build_cost_matrix(std::span<const Query> queries,
                             std::span<const CandidateIndex> candidates,
                             const SchemaCatalog& catalog, Exec exec) {
  return exec == Exec::parallel ? kernels::omp::cost_matrix(queries, candidates, catalog)
                                : kernels::serial::cost_matrix(queries, candidates, catalog);
}

std::vector<double> scenario_costs(const CostMatrix& costs, std::span<const double> current,
                                   std::span<const std::size_t> candidates, Exec exec) {
  return exec == Exec::parallel ? kernels::omp::scenario_costs(costs, current, candidates)
                                : kernels::serial::scenario_costs(costs, current, candidates);
}

}  // namespace bji
