#include <algorithm>

#include "bji/kernels.hpp"

namespace bji::kernels::omp {

std::vector<Bitset> closures(const QueryAttributeMatrix& m, std::span<const Bitset> tidsets) {
  const auto n = static_cast<std::ptrdiff_t>(tidsets.size());
  std::vector<Bitset> out(tidsets.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const auto& tids = tidsets[static_cast<std::size_t>(k)];
    Bitset closed(m.column_count());
    for (std::size_t c = 0; c < m.column_count(); ++c)
      if (tids.is_subset_of(m.tidset(c))) closed.set(c);
    out[static_cast<std::size_t>(k)] = std::move(closed);
  }
  return out;
}

CostMatrix cost_matrix(std::span<const Query> queries, std::span<const CandidateIndex> candidates,
                       const SchemaCatalog& catalog) {
  CostMatrix out;
  out.queries = queries.size();
  out.candidates = candidates.size();
  out.baseline.resize(queries.size());
  out.cells.assign(out.queries * out.candidates, kNotApplicable);

  const auto nq = static_cast<std::ptrdiff_t>(queries.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t q = 0; q < nq; ++q)
    out.baseline[static_cast<std::size_t>(q)] =
        baseline_cost(queries[static_cast<std::size_t>(q)], catalog);

  // Applicability varies a lot per cell, so hand out cells dynamically.
  const auto cells = static_cast<std::ptrdiff_t>(out.cells.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t k = 0; k < cells; ++k) {
    const auto c = static_cast<std::size_t>(k) / out.queries;
    const auto q = static_cast<std::size_t>(k) % out.queries;
    if (auto cost = index_query_cost(queries[q], candidates[c], catalog))
      out.cells[static_cast<std::size_t>(k)] = cost->total();
  }
  return out;
}

std::vector<double> scenario_costs(const CostMatrix& costs, std::span<const double> current,
                                   std::span<const std::size_t> candidates) {
  const auto n = static_cast<std::ptrdiff_t>(candidates.size());
  std::vector<double> out(candidates.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const auto column = costs.column(candidates[static_cast<std::size_t>(k)]);
    // Sequential in q: the sum must match the serial order bit for bit.
    double total = 0;
    for (std::size_t q = 0; q < costs.queries; ++q) total += std::min(current[q], column[q]);
    out[static_cast<std::size_t>(k)] = total;
  }
  return out;
}

}  // namespace bji::kernels::omp
