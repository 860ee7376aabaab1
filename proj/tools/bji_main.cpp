// bji: bitmap join index advisor for star-schema workloads.

#include <omp.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "bji/errors.hpp"
#include "bji/pipeline.hpp"
#include "bji/synth.hpp"

namespace fs = std::filesystem;
using namespace bji;

namespace {

struct Inputs {
  std::string workload;
  std::string schema;
  bool lenient = false;
  bool keys_from_metadata = false;
  bool serial = false;
  int threads = 0;
};

struct Loaded {
  SchemaCatalog catalog;
  ParsedWorkload workload;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ExitCode::failure, "cli", "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ExitCode::failure, "cli", "cannot write " + path.string());
  out << text;
}

void add_inputs(CLI::App* cmd, Inputs& in) {
  cmd->add_option("--workload", in.workload, "SQL workload file")->required();
  cmd->add_option("--schema", in.schema, "catalog JSON file")->required();
  cmd->add_flag("--lenient", in.lenient, "skip unsupported statements with a warning");
  cmd->add_flag("--keys-from-metadata", in.keys_from_metadata,
                "leave join keys out of the matrix; take joins from foreign keys");
  cmd->add_flag("--serial", in.serial, "run the serial kernels");
  cmd->add_option("--threads", in.threads, "OpenMP thread count")->check(CLI::NonNegativeNumber);
}

Loaded load(const Inputs& in) {
  if (in.threads > 0) omp_set_num_threads(in.threads);
  Loaded l;
  l.catalog = load_catalog(in.schema);
  l.workload = load_workload(read_file(in.workload), l.catalog, ParseOptions{in.lenient});
  for (const auto& w : l.workload.warnings)
    std::cerr << "warning: statement " << w.statement << ": " << w.message << '\n';
  return l;
}

Exec exec_of(const Inputs& in) { return in.serial ? Exec::serial : Exec::parallel; }

struct ObjectiveFlags {
  std::string objective = "profit";
  std::optional<std::uint64_t> budget;
  double alpha = 1.0;
  std::optional<std::size_t> max_per_table;
  double maintenance_weight = 0.0;
};

void add_objective(CLI::App* cmd, ObjectiveFlags& o) {
  cmd->add_option("--objective", o.objective, "profit, ratio or hybrid")
      ->check(CLI::IsMember({"profit", "ratio", "hybrid"}));
  cmd->add_option("--budget", o.budget, "storage budget in bytes");
  cmd->add_option("--alpha", o.alpha, "hybrid switch point as a fraction of the budget");
  cmd->add_option("--max-per-table", o.max_per_table, "cap on selected indexes per table");
  cmd->add_option("--maintenance-weight", o.maintenance_weight,
                  "weight of fact-insert maintenance cost in the score");
}

Objective objective_of(const ObjectiveFlags& o) {
  Objective obj;
  obj.kind = *parse_objective(o.objective);
  obj.budget_bytes = o.budget;
  obj.alpha = o.alpha;
  obj.max_per_table = o.max_per_table;
  obj.maintenance_weight = o.maintenance_weight;
  return obj;
}

bool is_json(const std::string& format) { return format == "json"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bitmap join index advisor for star-schema workloads"};
  app.require_subcommand(1);

  Inputs in;
  ObjectiveFlags obj;
  double minsup = 0.1;
  std::string format = "json";

  auto* advise_cmd = app.add_subcommand("advise", "recommend a bitmap join index configuration");
  add_inputs(advise_cmd, in);
  add_objective(advise_cmd, obj);
  advise_cmd->add_option("--minsup", minsup, "minimum support in (0, 1]");
  advise_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));
  std::string ddl_path;
  advise_cmd->add_option("--ddl", ddl_path, "write CREATE BITMAP INDEX statements here");
  bool stable = false;
  advise_cmd->add_flag("--stable", stable, "omit the timestamp from the report");

  auto* mine_cmd = app.add_subcommand("mine", "print frequent closed attribute sets");
  add_inputs(mine_cmd, in);
  mine_cmd->add_option("--minsup", minsup, "minimum support in (0, 1]");
  mine_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

  auto* cand_cmd = app.add_subcommand("candidates", "print candidate indexes and rejections");
  add_inputs(cand_cmd, in);
  cand_cmd->add_option("--minsup", minsup, "minimum support in (0, 1]");
  cand_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

  auto* cost_cmd = app.add_subcommand("cost", "per-query cost under a chosen configuration");
  add_inputs(cost_cmd, in);
  cost_cmd->add_option("--minsup", minsup, "minimum support used to build candidates");
  std::vector<std::string> index_ids;
  cost_cmd->add_option("--index", index_ids, "candidate id to include (repeatable)");
  bool all_candidates = false;
  cost_cmd->add_flag("--all-candidates", all_candidates, "include every candidate");
  cost_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

  auto* sweep_cmd = app.add_subcommand("sweep", "run advise over a range of one parameter");
  add_inputs(sweep_cmd, in);
  add_objective(sweep_cmd, obj);
  sweep_cmd->add_option("--minsup", minsup, "base minimum support");
  std::string variable;
  sweep_cmd->add_option("--variable", variable, "minsup, budget (footprint fraction) or alpha")
      ->required()
      ->check(CLI::IsMember({"minsup", "budget", "alpha"}));
  std::vector<double> values;
  sweep_cmd->add_option("--values", values, "comma-separated values")
      ->required()
      ->delimiter(',');
  std::string sweep_format = "csv";
  sweep_cmd->add_option("--format", sweep_format)->check(CLI::IsMember({"csv", "json"}));

  auto* synth_cmd = app.add_subcommand("synth", "write a synthetic catalog and workload");
  std::uint64_t seed = 42;
  std::uint64_t scale = 1;
  std::size_t query_count = 40;
  std::string out_dir = ".";
  synth_cmd->add_option("--seed", seed);
  synth_cmd->add_option("--scale", scale, "row-count multiplier, >= 1");
  synth_cmd->add_option("--queries", query_count);
  synth_cmd->add_option("--out-dir", out_dir, "writes catalog.json and workload.sql here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ExitCode::usage);
  }

  try {
    if (synth_cmd->parsed()) {
      const auto fixture = generate_synthetic(seed, scale, query_count);
      fs::create_directories(out_dir);
      write_file(fs::path(out_dir) / "catalog.json", fixture.catalog_json);
      write_file(fs::path(out_dir) / "workload.sql", fixture.workload_sql);
      return 0;
    }

    const auto loaded = load(in);
    const auto& cat = loaded.catalog;
    const auto& queries = loaded.workload.queries;

    if (advise_cmd->parsed()) {
      AdvisorOptions options{minsup, objective_of(obj), in.keys_from_metadata, exec_of(in)};
      const auto run = advise(cat, queries, options);
      ReportContext ctx{in.workload, in.schema, loaded.workload.warnings, in.lenient, stable};
      if (is_json(format))
        std::cout << report_json(run, cat, ctx).dump(2) << '\n';
      else
        std::cout << report_text(run, cat, ctx);
      if (!ddl_path.empty()) write_file(ddl_path, emit_ddl(run.configuration, cat));
      return 0;
    }

    if (sweep_cmd->parsed()) {
      AdvisorOptions options{minsup, objective_of(obj), in.keys_from_metadata, exec_of(in)};
      const auto var = *parse_sweep_variable(variable);
      // A budget sweep supplies its own budgets.
      if (var == SweepVariable::budget && !options.objective.budget_bytes)
        options.objective.budget_bytes = 0;
      const auto rows = sweep(cat, queries, options, var, values);
      if (sweep_format == "csv")
        std::cout << sweep_to_csv(var, rows);
      else
        std::cout << sweep_to_json(var, rows).dump(2) << '\n';
      return 0;
    }

    const auto mining = mine_workload(queries, cat, minsup, in.keys_from_metadata, exec_of(in));
    if (mine_cmd->parsed()) {
      if (is_json(format))
        std::cout << itemsets_json(mining).dump(2) << '\n';
      else
        std::cout << itemsets_text(mining);
      return 0;
    }

    if (cand_cmd->parsed() || cost_cmd->parsed()) {
      const auto set = workload_candidates(mining, cat, in.keys_from_metadata);
      if (cand_cmd->parsed()) {
        if (is_json(format))
          std::cout << candidates_json(set, cat).dump(2) << '\n';
        else
          std::cout << candidates_text(set, cat);
        return 0;
      }
      std::vector<CandidateIndex> config;
      for (const auto& c : set.candidates)
        if (all_candidates || std::find(index_ids.begin(), index_ids.end(), c.id) != index_ids.end())
          config.push_back(c);
      for (const auto& id : index_ids)
        if (std::none_of(config.begin(), config.end(),
                         [&](const CandidateIndex& c) { return c.id == id; }))
          throw UsageError("no candidate with id " + id + " at minsup " + std::to_string(minsup));
      std::vector<QueryCostBreakdown> rows;
      for (const auto& q : queries) rows.push_back(query_cost(q, config, cat));
      if (is_json(format))
        std::cout << breakdowns_json(rows).dump(2) << '\n';
      else
        std::cout << breakdowns_text(rows);
      return 0;
    }

  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::failure);
  }
  return 0;
}
