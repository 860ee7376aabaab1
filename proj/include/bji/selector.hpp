#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bji/candidates.hpp"
#include "bji/costmodel.hpp"
#include "bji/exec.hpp"

namespace bji {

enum class ObjectiveKind { profit, ratio, hybrid };

[[nodiscard]] std::string_view to_string(ObjectiveKind kind);
[[nodiscard]] std::optional<ObjectiveKind> parse_objective(std::string_view name);

struct Objective {
  ObjectiveKind kind = ObjectiveKind::profit;
  double alpha = 1.0;                         // hybrid switch point, fraction of the budget
  std::optional<std::uint64_t> budget_bytes;  // required for ratio and hybrid
  double maintenance_weight = 0.0;            // lambda: profit -= lambda * fact-insert cost
  std::optional<std::size_t> max_per_table;   // cap on selected indexes touching a table

  /// Throws UsageError when the combination is invalid.
  void validate() const;
};

struct TraceStep {
  std::string index_id;
  double objective = 0;
  IoCost workload_cost = 0;
  std::uint64_t cumulative_bytes = 0;
};

struct IndexConfiguration {
  std::vector<CandidateIndex> selected;
  std::uint64_t total_bytes = 0;
  IoCost baseline_cost = 0;
  IoCost final_cost = 0;
  std::vector<TraceStep> trace;

  [[nodiscard]] std::vector<std::string> selected_ids() const;
};

/// Workload cost reduction from adding `index` to `selected`.
[[nodiscard]] double profit(const CandidateIndex& index, std::span<const CandidateIndex> selected,
                            std::span<const Query> queries, const SchemaCatalog& catalog);

/// Profit per byte of index storage.
[[nodiscard]] double ratio(const CandidateIndex& index, std::span<const CandidateIndex> selected,
                           std::span<const Query> queries, const SchemaCatalog& catalog);

/// Profit while used storage is below alpha * budget, ratio afterwards.
[[nodiscard]] double hybrid(const CandidateIndex& index, std::span<const CandidateIndex> selected,
                            std::span<const Query> queries, const SchemaCatalog& catalog,
                            double alpha, std::uint64_t budget, std::uint64_t used_bytes);

/// Greedy construction: each iteration re-scores every remaining candidate
/// against the current selection and adds the best one with a positive
/// score that still fits. Ties go to the higher score, then the smaller
/// index, then the smaller id. Stops when nothing improves or fits.
[[nodiscard]] IndexConfiguration greedy_select(const CandidateSet& candidates,
                                               std::span<const Query> queries,
                                               const SchemaCatalog& catalog,
                                               const Objective& objective,
                                               Exec exec = Exec::parallel);

}  // namespace bji
