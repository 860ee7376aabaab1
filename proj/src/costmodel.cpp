#include "bji/costmodel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace bji {

__extension__ typedef unsigned __int128 u128;

namespace {

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return a / b + (a % b != 0); }

// Bitmap bytes rewritten per maintenance pass, in pages: |A||F| / (8 S_p).
double bitmap_pages(const CandidateIndex& index, const SchemaCatalog& cat) {
  return static_cast<double>(index.combined_cardinality) *
         static_cast<double>(cat.fact.row_count) /
         (8.0 * static_cast<double>(cat.params.page_size_bytes));
}

std::uint64_t pages_of(const std::string& table, const SchemaCatalog& cat) {
  const auto* t = cat.find_table(table);
  if (t == nullptr) throw std::invalid_argument("unknown table " + table);
  return t->page_count;
}

// Distinct IN-list values.
std::uint64_t distinct_values(const std::vector<Literal>& values) {
  return std::set<Literal>(values.begin(), values.end()).size();
}

}  // namespace

std::uint64_t index_size_bytes(const CandidateIndex& index, const SchemaCatalog& cat) {
  const auto bits = static_cast<u128>(index.combined_cardinality) * cat.fact.row_count;
  const auto bytes = (bits + 7) / 8;
  constexpr auto max = std::numeric_limits<std::uint64_t>::max();
  return bytes > max ? max : static_cast<std::uint64_t>(bytes);
}

IoCost maintenance_fact_insert(const CandidateIndex& index, const SchemaCatalog& cat) {
  double probes = 0;
  for (const auto& d : index.dimensions()) probes += static_cast<double>(pages_of(d, cat));
  return probes + bitmap_pages(index, cat);
}

IoCost maintenance_dimension_insert(const CandidateIndex& index, const SchemaCatalog& cat,
                                    bool expanding) {
  const double xi = expanding ? 1.0 : 0.0;
  return static_cast<double>(cat.fact.page_count) + (1.0 + xi) * bitmap_pages(index, cat);
}

std::uint64_t btree_order(std::uint64_t key_width_bytes, const SystemParams& params) {
  const auto entry = key_width_bytes + params.pointer_size_bytes;
  if (entry > params.page_size_bytes)
    throw std::invalid_argument("key too wide for page: " + std::to_string(key_width_bytes) +
                                " + " + std::to_string(params.pointer_size_bytes) + " > " +
                                std::to_string(params.page_size_bytes));
  return params.page_size_bytes / entry + 1;
}

AccessCostTerms access_cost_terms(const AccessProfile& p) {
  if (p.order <= 1) throw std::invalid_argument("b-tree order must exceed 1");
  if (p.cardinality == 0) throw std::invalid_argument("cardinality must be positive");
  if (p.fact_pages == 0) throw std::invalid_argument("fact page count must be positive");

  // Height = ceil(log_m |A|), computed exactly on integers.
  std::uint64_t height = 0;
  for (u128 reach = 1; reach < p.cardinality; reach *= p.order) ++height;

  AccessCostTerms t;
  t.descent = height > 0 ? static_cast<double>(height - 1) : 0.0;
  const auto leaves = ceil_div(p.cardinality, p.order - 1);
  const auto bitmap_pages = ceil_div(p.fact_rows, 8 * p.page_size);
  t.scan = static_cast<double>(leaves) +
           static_cast<double>(p.bitmaps) * static_cast<double>(bitmap_pages);
  const double fetched = static_cast<double>(p.bitmaps) * static_cast<double>(p.fact_rows) /
                         static_cast<double>(p.cardinality);
  const double pages = static_cast<double>(p.fact_pages);
  t.read = -pages * std::expm1(-fetched / pages);
  return t;
}

IoCost access_cost(const AccessProfile& profile) { return access_cost_terms(profile).total(); }

IoCost access_cost(const CandidateIndex& index, std::uint64_t bitmaps, const SchemaCatalog& cat) {
  return access_cost(AccessProfile{index.combined_cardinality,
                                   btree_order(index.key_width_bytes, cat.params), bitmaps,
                                   cat.fact.row_count, cat.fact.page_count,
                                   cat.params.page_size_bytes});
}

IoCost hash_join_cost(std::uint64_t pages_r, std::uint64_t pages_s) {
  return 3.0 * (static_cast<double>(pages_r) + static_cast<double>(pages_s));
}

std::vector<JoinPredicate> query_joins(const Query& query) {
  std::set<JoinPredicate> joins;
  for (const auto& p : query.predicates)
    if (p.kind == PredicateKind::join) joins.insert({p.left, p.right});
  return {joins.begin(), joins.end()};
}

IoCost baseline_cost(const Query& query, const SchemaCatalog& cat) {
  IoCost total = 0;
  for (const auto& j : query_joins(query))
    total += hash_join_cost(cat.fact.page_count, pages_of(j.dimension_key.table, cat));
  return total;
}

bool is_applicable(const Query& query, const CandidateIndex& index) {
  const auto joins = query_joins(query);
  for (const auto& j : index.join_predicates)
    if (!std::binary_search(joins.begin(), joins.end(), j)) return false;
  for (const auto& on : index.on_attributes) {
    for (const auto& p : query.predicates)
      if (p.kind == PredicateKind::restriction && p.left == on) return true;
    if (std::find(query.group_by.begin(), query.group_by.end(), on) != query.group_by.end())
      return true;
  }
  return false;
}

std::uint64_t derive_d(const Query& query, const CandidateIndex& index, const SchemaCatalog& cat) {
  std::uint64_t d = 1;
  for (const auto& on : index.on_attributes) {
    const auto card = cat.find_table(on.table)->find_attribute(on.attribute)->cardinality;
    std::uint64_t bitmaps = card;
    for (const auto& p : query.predicates) {
      if (p.kind != PredicateKind::restriction || p.left != on) continue;
      if (p.op == CompareOp::eq) bitmaps = std::min<std::uint64_t>(bitmaps, 1);
      else if (p.op == CompareOp::in) bitmaps = std::min(bitmaps, distinct_values(p.values));
    }
    d *= std::max<std::uint64_t>(1, bitmaps);
  }
  return std::clamp<std::uint64_t>(d, 1, index.combined_cardinality);
}

std::optional<IndexQueryCost> index_query_cost(const Query& query, const CandidateIndex& index,
                                               const SchemaCatalog& cat) {
  if (!is_applicable(query, index)) return std::nullopt;
  IndexQueryCost c;
  c.bitmaps = derive_d(query, index, cat);
  c.access = access_cost(index, c.bitmaps, cat);
  for (const auto& j : query_joins(query)) {
    if (std::binary_search(index.join_predicates.begin(), index.join_predicates.end(), j)) continue;
    c.residual += hash_join_cost(cat.fact.page_count, pages_of(j.dimension_key.table, cat));
  }
  return c;
}

QueryCostBreakdown query_cost(const Query& query, std::span<const CandidateIndex> config,
                              const SchemaCatalog& cat) {
  QueryCostBreakdown b;
  b.query_id = query.id;
  b.baseline = baseline_cost(query, cat);
  b.total = b.baseline;

  const CandidateIndex* best = nullptr;
  std::uint64_t best_size = 0;
  IndexQueryCost best_cost;
  for (const auto& index : config) {
    const auto cost = index_query_cost(query, index, cat);
    if (!cost || !(cost->total() < b.baseline)) continue;
    const auto size = index_size_bytes(index, cat);
    const bool better = best == nullptr || cost->total() < best_cost.total() ||
                        (cost->total() == best_cost.total() &&
                         (size < best_size || (size == best_size && index.id < best->id)));
    if (better) {
      best = &index;
      best_size = size;
      best_cost = *cost;
    }
  }
  if (best != nullptr) {
    b.chosen_index = best->id;
    b.bitmaps_read = best_cost.bitmaps;
    b.index_access = best_cost.access;
    b.residual_joins = best_cost.residual;
    b.total = best_cost.total();
  }
  return b;
}

IoCost workload_cost(std::span<const Query> queries, std::span<const CandidateIndex> config,
                     const SchemaCatalog& cat) {
  IoCost total = 0;
  for (const auto& q : queries) total += query_cost(q, config, cat).total;
  return total;
}

}  // namespace bji
