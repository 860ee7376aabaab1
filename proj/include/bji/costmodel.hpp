#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bji/candidates.hpp"
#include "bji/catalog.hpp"
#include "bji/sql.hpp"

namespace bji {

/// Number of page I/Os. Finite and non-negative.
using IoCost = double;

struct QueryCostBreakdown {
  int query_id = 0;
  std::optional<std::string> chosen_index;
  std::uint64_t bitmaps_read = 0;  // d for the chosen index
  IoCost index_access = 0;
  IoCost residual_joins = 0;
  IoCost baseline = 0;
  IoCost total = 0;
};

/// ceil(|A| * |F| / 8): one bit per fact row for each of the |A| bitmaps.
[[nodiscard]] std::uint64_t index_size_bytes(const CandidateIndex& index,
                                             const SchemaCatalog& catalog);

/// Fact insert: probe every joined dimension (p_T each), then rewrite all
/// bitmaps, |A||F| / (8 S_p) pages.
[[nodiscard]] IoCost maintenance_fact_insert(const CandidateIndex& index,
                                             const SchemaCatalog& catalog);

/// Dimension insert: scan the fact table for joining rows, then rewrite the
/// bitmaps; a domain expansion writes one more full set.
[[nodiscard]] IoCost maintenance_dimension_insert(const CandidateIndex& index,
                                                  const SchemaCatalog& catalog, bool expanding);

/// B-tree order m = floor(S_p / (w(A) + S_pointer)) + 1. Throws
/// std::invalid_argument when one key plus pointer does not fit in a page.
[[nodiscard]] std::uint64_t btree_order(std::uint64_t key_width_bytes,
                                        const SystemParams& params);

/// Inputs of the b-tree-mediated access formula.
struct AccessProfile {
  std::uint64_t cardinality = 1;  // |A|
  std::uint64_t order = 2;        // m
  std::uint64_t bitmaps = 1;      // d
  std::uint64_t fact_rows = 0;    // |F|
  std::uint64_t fact_pages = 1;   // p_F
  std::uint64_t page_size = 8192; // S_p
};

struct AccessCostTerms {
  IoCost descent = 0;
  IoCost scan = 0;
  IoCost read = 0;
  [[nodiscard]] IoCost total() const { return descent + scan + read; }
};

/// C_descent + C_scan + C_read:
///   descent = max(0, ceil(log_m |A|) - 1)
///   scan    = ceil(|A| / (m - 1)) + d * ceil(|F| / (8 S_p))
///   read    = p_F * (1 - exp(-N_r / p_F)),  N_r = d |F| / |A|
/// Throws std::invalid_argument when m <= 1.
[[nodiscard]] AccessCostTerms access_cost_terms(const AccessProfile& profile);
[[nodiscard]] IoCost access_cost(const AccessProfile& profile);
[[nodiscard]] IoCost access_cost(const CandidateIndex& index, std::uint64_t bitmaps,
                                 const SchemaCatalog& catalog);

/// 3 (p_R + p_S).
[[nodiscard]] IoCost hash_join_cost(std::uint64_t pages_r, std::uint64_t pages_s);

/// The query's fact-dimension joins (deduplicated, sorted).
[[nodiscard]] std::vector<JoinPredicate> query_joins(const Query& query);

/// Hash-join cost of every fact-dimension join in the query.
[[nodiscard]] IoCost baseline_cost(const Query& query, const SchemaCatalog& catalog);

/// An index serves a query when all its joins occur in the query and at
/// least one On attribute is restricted or grouped on.
[[nodiscard]] bool is_applicable(const Query& query, const CandidateIndex& index);

/// Bitmaps read: per On attribute, 1 for an equality, k for an IN list of k
/// distinct values, and |A_j| otherwise; product clamped to [1, |A|].
[[nodiscard]] std::uint64_t derive_d(const Query& query, const CandidateIndex& index,
                                     const SchemaCatalog& catalog);

struct IndexQueryCost {
  std::uint64_t bitmaps = 0;
  IoCost access = 0;
  IoCost residual = 0;
  [[nodiscard]] IoCost total() const { return access + residual; }
};

/// Cost of answering `query` through `index` alone, with the joins it does
/// not cover priced as hash joins. nullopt when the index does not apply.
[[nodiscard]] std::optional<IndexQueryCost> index_query_cost(const Query& query,
                                                             const CandidateIndex& index,
                                                             const SchemaCatalog& catalog);

/// Cheapest of the hash-join baseline and every applicable configured
/// index. Ties prefer the smaller index, then the smaller id; an index must
/// be strictly cheaper than the baseline to be chosen.
[[nodiscard]] QueryCostBreakdown query_cost(const Query& query,
                                            std::span<const CandidateIndex> config,
                                            const SchemaCatalog& catalog);

/// Sum of per-query totals in workload order.
[[nodiscard]] IoCost workload_cost(std::span<const Query> queries,
                                   std::span<const CandidateIndex> config,
                                   const SchemaCatalog& catalog);

}  // namespace bji
