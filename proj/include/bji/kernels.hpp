#pragma once

// Data-parallel inner loops of the advisor. Every kernel has a serial
// reference implementation (kernels_serial.cpp) and an OpenMP one
// (kernels_omp.cpp); the free functions at the bottom dispatch on Exec. Results never depend on the
// schedule: each output element is computed independently and any reduction
// runs in a fixed order.

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "bji/costmodel.hpp"
#include "bji/exec.hpp"
#include "bji/matrix.hpp"

namespace bji {

inline constexpr double kNotApplicable = std::numeric_limits<double>::infinity();

/// Per (query, candidate) cost of answering the query through that index
/// alone, kNotApplicable when it does not apply. Stored candidate-major so a
/// candidate's column is contiguous.
struct CostMatrix {
  std::size_t queries = 0;
  std::size_t candidates = 0;
  std::vector<double> baseline;  // per query
  std::vector<double> cells;     // cells[c * queries + q]

  [[nodiscard]] double at(std::size_t query, std::size_t candidate) const {
    return cells[candidate * queries + query];
  }
  [[nodiscard]] std::span<const double> column(std::size_t candidate) const {
    return {cells.data() + candidate * queries, queries};
  }
};

namespace kernels {

namespace serial {
std::vector<Bitset> closures(const QueryAttributeMatrix& m, std::span<const Bitset> tidsets);
CostMatrix cost_matrix(std::span<const Query> queries, std::span<const CandidateIndex> candidates,
                       const SchemaCatalog& catalog);
std::vector<double> scenario_costs(const CostMatrix& costs, std::span<const double> current,
                                   std::span<const std::size_t> candidates);
}  // namespace serial

namespace omp {
std::vector<Bitset> closures(const QueryAttributeMatrix& m, std::span<const Bitset> tidsets);
CostMatrix cost_matrix(std::span<const Query> queries, std::span<const CandidateIndex> candidates,
                       const SchemaCatalog& catalog);
std::vector<double> scenario_costs(const CostMatrix& costs, std::span<const double> current,
                                   std::span<const std::size_t> candidates);
}  // namespace omp

}  // namespace kernels

/// Closure (as a column bitset) of each row set in `tidsets`: the columns
/// whose tidset contains it.
[[nodiscard]] std::vector<Bitset> closure_batch(const QueryAttributeMatrix& m,
                                                std::span<const Bitset> tidsets, Exec exec);

[[nodiscard]] CostMatrix build_cost_matrix(std::span<const Query> queries,
                                           std::span<const CandidateIndex> candidates,
                                           const SchemaCatalog& catalog, Exec exec);

/// For each listed candidate c: sum over queries, in order, of
/// min(current[q], cost(q, c)), i.e. the workload cost after adding c.
[[nodiscard]] std::vector<double> scenario_costs(const CostMatrix& costs,
                                                 std::span<const double> current,
                                                 std::span<const std::size_t> candidates,
                                                 Exec exec);

}  // namespace bji
