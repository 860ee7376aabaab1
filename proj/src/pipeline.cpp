#include "bji/pipeline.hpp"

#include <cmath>

#include "bji/errors.hpp"

namespace bji {

MiningResult mine_workload(const std::vector<Query>& queries, const SchemaCatalog& cat,
                           double minsup, bool keys_from_metadata, Exec exec) {
  MiningResult out;
  out.matrix = build_matrix(queries, cat, ExtractOptions{!keys_from_metadata});
  out.itemsets = mine_closed(out.matrix, minsup, exec);
  return out;
}

CandidateSet workload_candidates(const MiningResult& mining, const SchemaCatalog& cat,
                                 bool keys_from_metadata) {
  return build_candidate_set(mining.itemsets, mining.matrix, cat,
                             CandidateOptions{keys_from_metadata});
}

std::vector<MaintenanceEstimate> maintenance_estimates(const std::vector<CandidateIndex>& indexes,
                                                       const SchemaCatalog& cat) {
  std::vector<MaintenanceEstimate> out;
  for (const auto& i : indexes)
    out.push_back({i.id, index_size_bytes(i, cat), maintenance_fact_insert(i, cat),
                   maintenance_dimension_insert(i, cat, false),
                   maintenance_dimension_insert(i, cat, true)});
  return out;
}

AdvisorRun advise(const SchemaCatalog& cat, const std::vector<Query>& queries,
                  const AdvisorOptions& options) {
  if (!(options.minsup > 0.0 && options.minsup <= 1.0))
    throw UsageError("minsup must be in (0, 1], got " + std::to_string(options.minsup));
  options.objective.validate();

  AdvisorRun run;
  run.options = options;
  auto mining = mine_workload(queries, cat, options.minsup, options.keys_from_metadata,
                              options.exec);
  run.candidates = workload_candidates(mining, cat, options.keys_from_metadata);
  run.matrix = std::move(mining.matrix);
  run.itemsets = std::move(mining.itemsets);
  run.configuration = greedy_select(run.candidates, queries, cat, options.objective, options.exec);
  for (const auto& q : queries)
    run.per_query.push_back(query_cost(q, run.configuration.selected, cat));
  run.maintenance = maintenance_estimates(run.configuration.selected, cat);
  return run;
}

std::string create_index_sql(const CandidateIndex& index, const SchemaCatalog& cat) {
  std::string sql = "CREATE BITMAP INDEX " + index.id + " ON " + cat.fact.name + "(";
  for (std::size_t k = 0; k < index.on_attributes.size(); ++k)
    sql += (k ? ", " : "") + index.on_attributes[k].str();
  sql += ") FROM ";
  for (std::size_t k = 0; k < index.from_tables.size(); ++k)
    sql += (k ? ", " : "") + index.from_tables[k];
  sql += " WHERE ";
  for (std::size_t k = 0; k < index.join_predicates.size(); ++k)
    sql += (k ? " AND " : "") + index.join_predicates[k].str();
  return sql + ";";
}

std::string emit_ddl(const IndexConfiguration& config, const SchemaCatalog& cat) {
  std::string out;
  for (const auto& i : config.selected) out += create_index_sql(i, cat) + "\n";
  return out;
}

std::optional<SweepVariable> parse_sweep_variable(std::string_view name) {
  if (name == "minsup") return SweepVariable::minsup;
  if (name == "budget") return SweepVariable::budget;
  if (name == "alpha") return SweepVariable::alpha;
  return std::nullopt;
}

std::string_view to_string(SweepVariable variable) {
  switch (variable) {
    case SweepVariable::minsup: return "minsup";
    case SweepVariable::budget: return "budget";
    case SweepVariable::alpha: return "alpha";
  }
  return "?";
}

std::uint64_t candidate_footprint(const CandidateSet& set, const SchemaCatalog& cat) {
  std::uint64_t total = 0;
  for (const auto& c : set.candidates) total += index_size_bytes(c, cat);
  return total;
}

std::vector<SweepRow> sweep(const SchemaCatalog& cat, const std::vector<Query>& queries,
                            const AdvisorOptions& base, SweepVariable variable,
                            const std::vector<double>& values) {
  if (values.empty()) throw UsageError("sweep needs at least one value");
  std::uint64_t footprint = 0;
  if (variable == SweepVariable::budget) {
    const auto mining =
        mine_workload(queries, cat, base.minsup, base.keys_from_metadata, base.exec);
    footprint = candidate_footprint(workload_candidates(mining, cat, base.keys_from_metadata), cat);
  }

  std::vector<SweepRow> rows;
  for (const auto v : values) {
    auto options = base;
    switch (variable) {
      case SweepVariable::minsup:
        options.minsup = v;
        break;
      case SweepVariable::budget:
        if (!(v >= 0.0 && v <= 1.0))
          throw UsageError("budget sweep values are footprint fractions in [0, 1]");
        options.objective.budget_bytes =
            static_cast<std::uint64_t>(std::floor(v * static_cast<double>(footprint)));
        break;
      case SweepVariable::alpha:
        options.objective.alpha = v;
        break;
    }
    const auto run = advise(cat, queries, options);
    SweepRow row;
    row.value = v;
    row.candidates = run.candidates.candidates.size();
    row.selected = run.configuration.selected.size();
    row.total_bytes = run.configuration.total_bytes;
    row.budget_bytes = options.objective.budget_bytes;
    row.baseline_cost = run.configuration.baseline_cost;
    row.final_cost = run.configuration.final_cost;
    row.cost_ratio = row.baseline_cost > 0 ? row.final_cost / row.baseline_cost : 1.0;
    row.selected_ids = run.configuration.selected_ids();
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace bji
