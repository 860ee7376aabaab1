#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "bji/candidates.hpp"
#include "bji/catalog.hpp"
#include "bji/closeminer.hpp"
#include "bji/costmodel.hpp"
#include "bji/matrix.hpp"
#include "bji/selector.hpp"
#include "bji/sql.hpp"

namespace bji {

struct AdvisorOptions {
  double minsup = 0.1;
  Objective objective;
  /// Leave join keys out of the matrix and take joins from the catalog.
  bool keys_from_metadata = false;
  Exec exec = Exec::parallel;
};

struct MaintenanceEstimate {
  std::string index_id;
  std::uint64_t size_bytes = 0;
  IoCost fact_insert = 0;
  IoCost dimension_insert = 0;
  IoCost dimension_insert_expanding = 0;
};

/// Everything one pass of parse -> mine -> candidates -> cost -> select
/// produces.
struct AdvisorRun {
  AdvisorOptions options;
  QueryAttributeMatrix matrix;
  std::vector<FrequentClosedItemset> itemsets;
  CandidateSet candidates;
  IndexConfiguration configuration;
  std::vector<QueryCostBreakdown> per_query;
  std::vector<MaintenanceEstimate> maintenance;
};

/// Matrix and closed itemsets for a workload.
struct MiningResult {
  QueryAttributeMatrix matrix;
  std::vector<FrequentClosedItemset> itemsets;
};

[[nodiscard]] MiningResult mine_workload(const std::vector<Query>& queries,
                                         const SchemaCatalog& catalog, double minsup,
                                         bool keys_from_metadata, Exec exec = Exec::parallel);

[[nodiscard]] CandidateSet workload_candidates(const MiningResult& mining,
                                               const SchemaCatalog& catalog,
                                               bool keys_from_metadata);

[[nodiscard]] AdvisorRun advise(const SchemaCatalog& catalog, const std::vector<Query>& queries,
                                const AdvisorOptions& options);

[[nodiscard]] std::vector<MaintenanceEstimate> maintenance_estimates(
    const std::vector<CandidateIndex>& indexes, const SchemaCatalog& catalog);

/// One `CREATE BITMAP INDEX` statement per selected index, selection order.
[[nodiscard]] std::string emit_ddl(const IndexConfiguration& configuration,
                                   const SchemaCatalog& catalog);
[[nodiscard]] std::string create_index_sql(const CandidateIndex& index,
                                           const SchemaCatalog& catalog);

// --- experiment sweeps -----------------------------------------------------

enum class SweepVariable { minsup, budget, alpha };

[[nodiscard]] std::optional<SweepVariable> parse_sweep_variable(std::string_view name);
[[nodiscard]] std::string_view to_string(SweepVariable variable);

struct SweepRow {
  double value = 0;
  std::size_t candidates = 0;
  std::size_t selected = 0;
  std::uint64_t total_bytes = 0;
  std::optional<std::uint64_t> budget_bytes;
  IoCost baseline_cost = 0;
  IoCost final_cost = 0;
  double cost_ratio = 1;  // final / baseline
  std::vector<std::string> selected_ids;
};

/// Runs `advise` once per value. Budget values are fractions of the
/// all-candidates footprint at the base minsup.
[[nodiscard]] std::vector<SweepRow> sweep(const SchemaCatalog& catalog,
                                          const std::vector<Query>& queries,
                                          const AdvisorOptions& base, SweepVariable variable,
                                          const std::vector<double>& values);

/// Sum of index sizes over the whole candidate set.
[[nodiscard]] std::uint64_t candidate_footprint(const CandidateSet& set,
                                                const SchemaCatalog& catalog);

[[nodiscard]] std::string sweep_to_csv(SweepVariable variable, const std::vector<SweepRow>& rows);
[[nodiscard]] nlohmann::ordered_json sweep_to_json(SweepVariable variable,
                                                   const std::vector<SweepRow>& rows);

// --- reports ---------------------------------------------------------------

struct ReportContext {
  std::string workload_path;
  std::string catalog_path;
  std::vector<ParseWarning> warnings;
  bool lenient = false;
  /// Omit the generation timestamp so identical inputs give identical bytes.
  bool stable = false;
};

[[nodiscard]] nlohmann::ordered_json report_json(const AdvisorRun& run,
                                                 const SchemaCatalog& catalog,
                                                 const ReportContext& context);
[[nodiscard]] std::string report_text(const AdvisorRun& run, const SchemaCatalog& catalog,
                                      const ReportContext& context);

[[nodiscard]] nlohmann::ordered_json itemsets_json(const MiningResult& mining);
[[nodiscard]] std::string itemsets_text(const MiningResult& mining);
[[nodiscard]] nlohmann::ordered_json candidates_json(const CandidateSet& set,
                                                     const SchemaCatalog& catalog);
[[nodiscard]] std::string candidates_text(const CandidateSet& set, const SchemaCatalog& catalog);
[[nodiscard]] nlohmann::ordered_json breakdowns_json(const std::vector<QueryCostBreakdown>& rows);
[[nodiscard]] std::string breakdowns_text(const std::vector<QueryCostBreakdown>& rows);

}  // namespace bji
