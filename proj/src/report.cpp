#include <chrono>
#include <ctime>
#include <iomanip>
#include <sstream>

#include "bji/pipeline.hpp"

namespace bji {

namespace {

using ojson = nlohmann::ordered_json;

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

std::string fixed(double v, int digits = 2) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << v;
  return out.str();
}

ojson names(const std::vector<QualifiedAttribute>& attrs) {
  ojson out = ojson::array();
  for (const auto& a : attrs) out.push_back(a.str());
  return out;
}

ojson candidate_json(const CandidateIndex& c, const SchemaCatalog& cat) {
  ojson j;
  j["id"] = c.id;
  j["on"] = names(c.on_attributes);
  j["from"] = c.from_tables;
  ojson where = ojson::array();
  for (const auto& p : c.join_predicates) where.push_back(p.str());
  j["where"] = where;
  j["cardinality"] = c.combined_cardinality;
  j["key_width_bytes"] = c.key_width_bytes;
  j["size_bytes"] = index_size_bytes(c, cat);
  j["source_support"] = c.source_support.value();
  j["ddl"] = create_index_sql(c, cat);
  return j;
}

std::string join_names(const std::vector<QualifiedAttribute>& attrs) {
  std::string s;
  for (std::size_t k = 0; k < attrs.size(); ++k) s += (k ? " " : "") + attrs[k].str();
  return s;
}

}  // namespace

ojson itemsets_json(const MiningResult& mining) {
  ojson out = ojson::array();
  for (const auto& f : mining.itemsets) {
    ojson j;
    j["support"] = f.support.value();
    j["count"] = f.support.count;
    j["items"] = names(item_names(f.items, mining.matrix));
    out.push_back(j);
  }
  return out;
}

std::string itemsets_text(const MiningResult& mining) {
  std::ostringstream out;
  for (const auto& f : mining.itemsets)
    out << fixed(f.support.value(), 4) << '\t' << join_names(item_names(f.items, mining.matrix))
        << '\n';
  return out.str();
}

ojson candidates_json(const CandidateSet& set, const SchemaCatalog& cat) {
  ojson out;
  out["candidates"] = ojson::array();
  for (const auto& c : set.candidates) out["candidates"].push_back(candidate_json(c, cat));
  out["rejections"] = ojson::array();
  for (const auto& r : set.rejections)
    out["rejections"].push_back({{"items", names(r.items)}, {"reason", r.reason}});
  return out;
}

std::string candidates_text(const CandidateSet& set, const SchemaCatalog& cat) {
  std::ostringstream out;
  for (const auto& c : set.candidates) {
    out << c.id << "  |A|=" << c.combined_cardinality << "  size=" << index_size_bytes(c, cat)
        << " bytes\n    " << create_index_sql(c, cat) << '\n';
  }
  if (!set.rejections.empty()) {
    out << "rejected itemsets:\n";
    for (const auto& r : set.rejections)
      out << "  {" << join_names(r.items) << "}: " << r.reason << '\n';
  }
  return out.str();
}

ojson breakdowns_json(const std::vector<QueryCostBreakdown>& rows) {
  ojson out = ojson::array();
  for (const auto& b : rows) {
    ojson j;
    j["query"] = b.query_id;
    j["index"] = b.chosen_index ? ojson(*b.chosen_index) : ojson(nullptr);
    j["bitmaps_read"] = b.bitmaps_read;
    j["index_access"] = b.index_access;
    j["residual"] = b.residual_joins;
    j["baseline"] = b.baseline;
    j["total"] = b.total;
    out.push_back(j);
  }
  return out;
}

std::string breakdowns_text(const std::vector<QueryCostBreakdown>& rows) {
  std::ostringstream out;
  out << std::left << std::setw(7) << "query" << std::setw(40) << "index" << std::right
      << std::setw(14) << "index_access" << std::setw(14) << "residual" << std::setw(14)
      << "baseline" << std::setw(14) << "total" << '\n';
  for (const auto& b : rows) {
    out << std::left << std::setw(7) << b.query_id << std::setw(40)
        << b.chosen_index.value_or("-") << std::right << std::setw(14) << fixed(b.index_access)
        << std::setw(14) << fixed(b.residual_joins) << std::setw(14) << fixed(b.baseline)
        << std::setw(14) << fixed(b.total) << '\n';
  }
  return out.str();
}

ojson report_json(const AdvisorRun& run, const SchemaCatalog& cat, const ReportContext& ctx) {
  const auto& opt = run.options;
  const auto& config = run.configuration;
  ojson r;
  r["tool"] = "bji";
  if (!ctx.stable) r["generated_at"] = utc_now();

  ojson inputs;
  inputs["workload"] = ctx.workload_path;
  inputs["schema"] = ctx.catalog_path;
  if (!cat.source.empty()) inputs["schema_source"] = cat.source;
  inputs["minsup"] = opt.minsup;
  inputs["objective"] = to_string(opt.objective.kind);
  inputs["budget_bytes"] = opt.objective.budget_bytes ? ojson(*opt.objective.budget_bytes) : ojson(nullptr);
  inputs["alpha"] = opt.objective.alpha;
  inputs["max_per_table"] =
      opt.objective.max_per_table ? ojson(*opt.objective.max_per_table) : ojson(nullptr);
  inputs["maintenance_weight"] = opt.objective.maintenance_weight;
  inputs["keys_from_metadata"] = opt.keys_from_metadata;
  inputs["lenient"] = ctx.lenient;
  r["inputs"] = inputs;

  r["warnings"] = ojson::array();
  for (const auto& w : ctx.warnings)
    r["warnings"].push_back({{"statement", w.statement}, {"message", w.message}});

  r["matrix"] = {{"rows", run.matrix.row_count()},
                 {"cols", run.matrix.column_count()},
                 {"columns", names(run.matrix.columns())}};
  r["itemsets"] = itemsets_json(MiningResult{run.matrix, run.itemsets});
  auto cands = candidates_json(run.candidates, cat);
  r["candidates"] = cands["candidates"];
  r["rejections"] = cands["rejections"];

  ojson cfg;
  cfg["selected"] = ojson::array();
  for (const auto& i : config.selected) cfg["selected"].push_back(candidate_json(i, cat));
  cfg["trace"] = ojson::array();
  for (std::size_t k = 0; k < config.trace.size(); ++k) {
    const auto& t = config.trace[k];
    cfg["trace"].push_back({{"iteration", k + 1},
                            {"index", t.index_id},
                            {"objective", t.objective},
                            {"workload_cost", t.workload_cost},
                            {"cumulative_bytes", t.cumulative_bytes}});
  }
  cfg["total_bytes"] = config.total_bytes;
  cfg["baseline_cost"] = config.baseline_cost;
  cfg["final_cost"] = config.final_cost;
  cfg["saving_ratio"] = config.baseline_cost > 0
                            ? (config.baseline_cost - config.final_cost) / config.baseline_cost
                            : 0.0;
  r["configuration"] = cfg;
  r["per_query"] = breakdowns_json(run.per_query);

  r["maintenance"] = ojson::array();
  for (const auto& m : run.maintenance)
    r["maintenance"].push_back({{"index", m.index_id},
                                {"size_bytes", m.size_bytes},
                                {"fact_insert", m.fact_insert},
                                {"dimension_insert", m.dimension_insert},
                                {"dimension_insert_expanding", m.dimension_insert_expanding}});
  return r;
}

std::string report_text(const AdvisorRun& run, const SchemaCatalog& cat, const ReportContext& ctx) {
  const auto& config = run.configuration;
  std::ostringstream out;
  out << "bitmap join index advisor\n";
  out << "  workload:   " << ctx.workload_path << '\n';
  out << "  schema:     " << ctx.catalog_path
      << (cat.source.empty() ? "" : " (" + cat.source + ")") << '\n';
  out << "  objective:  " << to_string(run.options.objective.kind);
  if (run.options.objective.budget_bytes)
    out << ", budget " << *run.options.objective.budget_bytes << " bytes";
  if (run.options.objective.kind == ObjectiveKind::hybrid)
    out << ", alpha " << run.options.objective.alpha;
  out << "\n  minsup:     " << run.options.minsup << "\n\n";
  for (const auto& w : ctx.warnings)
    out << "warning: statement " << w.statement << ": " << w.message << '\n';

  out << "matrix " << run.matrix.row_count() << " x " << run.matrix.column_count() << ", "
      << run.itemsets.size() << " closed itemsets, " << run.candidates.candidates.size()
      << " candidates (" << run.candidates.rejections.size() << " itemsets rejected)\n\n";

  out << "selected indexes:\n";
  if (config.selected.empty()) out << "  (none)\n";
  for (std::size_t k = 0; k < config.selected.size(); ++k) {
    const auto& t = config.trace[k];
    out << "  " << k + 1 << ". " << t.index_id << "  objective=" << t.objective
        << "  cost=" << fixed(t.workload_cost) << "  bytes=" << t.cumulative_bytes << '\n';
  }
  const double saving = config.baseline_cost > 0
                            ? 100.0 * (config.baseline_cost - config.final_cost) / config.baseline_cost
                            : 0.0;
  out << "\nworkload cost: " << fixed(config.baseline_cost) << " -> " << fixed(config.final_cost)
      << " I/Os (" << fixed(saving) << "% saved), " << config.total_bytes << " bytes of indexes\n\n";

  if (!run.maintenance.empty()) {
    out << "maintenance (I/Os per insert):\n";
    for (const auto& m : run.maintenance)
      out << "  " << m.index_id << ": fact " << fixed(m.fact_insert) << ", dimension "
          << fixed(m.dimension_insert) << " (" << fixed(m.dimension_insert_expanding)
          << " with domain expansion)\n";
    out << '\n';
  }
  out << "per-query costs:\n" << breakdowns_text(run.per_query);
  if (!config.selected.empty()) out << "\nDDL:\n" << emit_ddl(config, cat);
  return out.str();
}

std::string sweep_to_csv(SweepVariable variable, const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << to_string(variable)
      << ",candidates,selected,total_bytes,budget_bytes,baseline_cost,final_cost,cost_ratio\n";
  out << std::setprecision(10);
  for (const auto& r : rows) {
    out << r.value << ',' << r.candidates << ',' << r.selected << ',' << r.total_bytes << ','
        << (r.budget_bytes ? std::to_string(*r.budget_bytes) : "") << ',' << r.baseline_cost
        << ',' << r.final_cost << ',' << r.cost_ratio << '\n';
  }
  return out.str();
}

ojson sweep_to_json(SweepVariable variable, const std::vector<SweepRow>& rows) {
  ojson out;
  out["variable"] = to_string(variable);
  out["rows"] = ojson::array();
  for (const auto& r : rows) {
    out["rows"].push_back({{"value", r.value},
                           {"candidates", r.candidates},
                           {"selected", r.selected},
                           {"total_bytes", r.total_bytes},
                           {"budget_bytes", r.budget_bytes ? ojson(*r.budget_bytes) : ojson(nullptr)},
                           {"baseline_cost", r.baseline_cost},
                           {"final_cost", r.final_cost},
                           {"cost_ratio", r.cost_ratio},
                           {"selected_ids", r.selected_ids}});
  }
  return out;
}

}  // namespace bji
