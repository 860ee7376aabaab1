#include "bji/selector.hpp"

#include <cmath>
#include <map>

#include "bji/errors.hpp"
#include "bji/kernels.hpp"

namespace bji {

std::string_view to_string(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::profit: return "profit";
    case ObjectiveKind::ratio: return "ratio";
    case ObjectiveKind::hybrid: return "hybrid";
  }
  return "?";
}

std::optional<ObjectiveKind> parse_objective(std::string_view name) {
  if (name == "profit") return ObjectiveKind::profit;
  if (name == "ratio") return ObjectiveKind::ratio;
  if (name == "hybrid") return ObjectiveKind::hybrid;
  return std::nullopt;
}

void Objective::validate() const {
  if (kind != ObjectiveKind::profit && !budget_bytes)
    throw UsageError(std::string(to_string(kind)) + " objective requires --budget");
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw UsageError("alpha must be in [0, 1], got " + std::to_string(alpha));
  if (!std::isfinite(maintenance_weight) || maintenance_weight < 0.0)
    throw UsageError("maintenance weight must be a finite non-negative number");
}

std::vector<std::string> IndexConfiguration::selected_ids() const {
  std::vector<std::string> ids;
  for (const auto& i : selected) ids.push_back(i.id);
  return ids;
}

double profit(const CandidateIndex& index, std::span<const CandidateIndex> selected,
              std::span<const Query> queries, const SchemaCatalog& cat) {
  std::vector<CandidateIndex> with(selected.begin(), selected.end());
  with.push_back(index);
  return workload_cost(queries, selected, cat) - workload_cost(queries, with, cat);
}

double ratio(const CandidateIndex& index, std::span<const CandidateIndex> selected,
             std::span<const Query> queries, const SchemaCatalog& cat) {
  return profit(index, selected, queries, cat) /
         static_cast<double>(index_size_bytes(index, cat));
}

double hybrid(const CandidateIndex& index, std::span<const CandidateIndex> selected,
              std::span<const Query> queries, const SchemaCatalog& cat, double alpha,
              std::uint64_t budget, std::uint64_t used_bytes) {
  if (static_cast<double>(used_bytes) < alpha * static_cast<double>(budget))
    return profit(index, selected, queries, cat);
  return ratio(index, selected, queries, cat);
}

IndexConfiguration greedy_select(const CandidateSet& set, std::span<const Query> queries,
                                 const SchemaCatalog& cat, const Objective& objective,
                                 Exec exec) {
  objective.validate();
  const auto& candidates = set.candidates;
  const auto costs = build_cost_matrix(queries, candidates, cat, exec);

  std::vector<double> current = costs.baseline;
  double workload = 0;
  for (const auto c : current) workload += c;

  IndexConfiguration config;
  config.baseline_cost = workload;

  std::vector<std::uint64_t> sizes;
  std::vector<double> upkeep;
  for (const auto& c : candidates) {
    sizes.push_back(index_size_bytes(c, cat));
    upkeep.push_back(objective.maintenance_weight > 0 ? maintenance_fact_insert(c, cat) : 0.0);
  }
  std::vector<bool> taken(candidates.size(), false);
  std::map<std::string, std::size_t> per_table;

  for (;;) {
    std::vector<std::size_t> open;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (taken[c]) continue;
      if (objective.budget_bytes && sizes[c] > *objective.budget_bytes - config.total_bytes)
        continue;
      if (objective.max_per_table) {
        bool full = false;
        for (const auto& t : candidates[c].from_tables)
          full = full || per_table[t] >= *objective.max_per_table;
        if (full) continue;
      }
      open.push_back(c);
    }
    if (open.empty()) break;

    const auto after = scenario_costs(costs, current, open, exec);
    const bool size_aware =
        objective.kind == ObjectiveKind::ratio ||
        (objective.kind == ObjectiveKind::hybrid &&
         !(static_cast<double>(config.total_bytes) <
           objective.alpha * static_cast<double>(*objective.budget_bytes)));

    std::optional<std::size_t> best;
    double best_score = 0;
    for (std::size_t k = 0; k < open.size(); ++k) {
      const auto c = open[k];
      double score = (workload - after[k]) - objective.maintenance_weight * upkeep[c];
      if (size_aware) score /= static_cast<double>(sizes[c]);
      if (!(score > 0)) continue;
      const bool better =
          !best || score > best_score ||
          (score == best_score &&
           (sizes[c] < sizes[open[*best]] ||
            (sizes[c] == sizes[open[*best]] && candidates[c].id < candidates[open[*best]].id)));
      if (better) {
        best = k;
        best_score = score;
      }
    }
    if (!best) break;

    const auto c = open[*best];
    taken[c] = true;
    const auto column = costs.column(c);
    for (std::size_t q = 0; q < current.size(); ++q) current[q] = std::min(current[q], column[q]);
    workload = after[*best];
    config.total_bytes += sizes[c];
    for (const auto& t : candidates[c].from_tables) ++per_table[t];
    config.selected.push_back(candidates[c]);
    config.trace.push_back({candidates[c].id, best_score, workload, config.total_bytes});
  }
  config.final_cost = workload;
  return config;
}

}  // namespace bji
