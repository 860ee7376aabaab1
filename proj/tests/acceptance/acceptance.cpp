// Acceptance suite: one [PASS]/[FAIL] line per criterion, non-zero exit if
// any criterion fails.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "bji/pipeline.hpp"
#include "support.hpp"

using namespace bji;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects the first few failure messages of a criterion.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (failures_ <= 5) messages_ += (messages_.empty() ? "" : "; ") + what;
  }
  [[nodiscard]] Outcome outcome(const std::string& summary) const {
    std::ostringstream out;
    out << summary << ", " << checks_ << " checks";
    if (failures_ > 0) out << ", " << failures_ << " failed: " << messages_;
    return {failures_ == 0, out.str()};
  }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::string messages_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v, int digits = 6) {
  std::ostringstream out;
  out.precision(digits);
  out << v;
  return out.str();
}

// Fixed synthetic fixture shared by criteria 5-9.
constexpr std::uint64_t kSeed = 42;
constexpr std::uint64_t kScale = 1;
constexpr double kFixtureMinsup = 0.01;

const testsupport::Synthetic& fixture() {
  static const auto f = testsupport::synthetic(kSeed, kScale);
  return f;
}

// --- AC1 -------------------------------------------------------------------

Outcome miner_oracle() {
  constexpr int kMatrices = 500;
  constexpr std::size_t kMaxRows = 16;
  constexpr std::size_t kMaxCols = 12;
  constexpr double kBudgetSeconds = 60;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> density(0.1, 0.9);
  Checker check;
  for (int trial = 0; trial < kMatrices; ++trial) {
    const std::size_t rows = 1 + rng() % kMaxRows;
    const std::size_t cols = 1 + rng() % kMaxCols;
    const auto cells = testsupport::random_cells(rng, rows, cols, density(rng));
    const auto m = QueryAttributeMatrix::from_cells(cells, cols);
    for (std::size_t k = 1; k <= 16; ++k) {
      const double minsup = static_cast<double>(k) / 16.0;
      const std::size_t need = (k * rows + 15) / 16;  // ceil(k/16 * rows)
      check.expect(testsupport::as_oracle(mine_closed(m, minsup)) ==
                       oracle::mine_closed_bruteforce(cells, cols, need),
                   "matrix " + std::to_string(trial) + " minsup " + std::to_string(k) + "/16");
    }
  }
  const double secs = seconds_since(t0);
  check.expect(secs < kBudgetSeconds, "took " + fmt(secs) + " s");
  return check.outcome(std::to_string(kMatrices) + " matrices x 16 minsup values in " +
                       fmt(secs, 3) + " s");
}

// --- AC2 -------------------------------------------------------------------

Outcome formula_fixtures() {
  constexpr double kTolerance = 0.1;  // I/Os, real-valued terms
  const testsupport::Docs docs;
  const auto& cat = docs.catalog;
  auto make = [&](const std::vector<QualifiedAttribute>& items) {
    return std::get<CandidateIndex>(generate_candidate(items, {2, 3}, cat));
  };
  const auto city = make({{"Customers", "city"}, {"Customers", "cust_id"}, {"Sales", "cust_id"}});

  Checker check;
  auto near = [&](double got, double want, const std::string& what) {
    check.expect(std::abs(got - want) <= kTolerance, what + " = " + fmt(got, 10) + ", want " + fmt(want, 10));
  };
  check.expect(index_size_bytes(city, cat) == 6'250'000, "index_size");
  near(maintenance_fact_insert(city, cat), 885.939453125, "fact-insert maintenance");
  near(maintenance_dimension_insert(city, cat, false), 10528.939453125, "dimension insert");
  near(maintenance_dimension_insert(city, cat, true), 11291.87890625, "dimension insert, expanding");
  check.expect(btree_order(16, cat.params) == 410, "btree_order(16)");
  near(access_cost(city, 1, cat), 8523.158895061315, "access_cost");
  check.expect(hash_join_cost(cat.fact.page_count, cat.find_dimension("Customers")->page_count) == 29667,
               "hash_join");
  return check.outcome("size 6250000, maintenance 885.94/10528.94/11291.88, m 410, access 8523.16, join 29667");
}

// --- AC3 -------------------------------------------------------------------

Outcome dominance_and_cap() {
  constexpr int kTriples = 200;
  constexpr double kBudgetSeconds = 30;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(3);
  Checker check;
  std::size_t additions = 0;
  for (int trial = 0; trial < kTriples; ++trial) {
    const auto syn = testsupport::synthetic(rng(), 1 + rng() % 3, 10 + rng() % 31);
    const auto m = build_matrix(syn.queries, syn.catalog);
    const double minsup = 0.02 + 0.01 * static_cast<double>(rng() % 20);
    const auto set = build_candidate_set(mine_closed(m, minsup), m, syn.catalog);
    if (set.candidates.empty()) continue;

    std::vector<CandidateIndex> config;
    std::vector<CandidateIndex> rest;
    for (const auto& c : set.candidates) (rng() % 3 == 0 ? config : rest).push_back(c);
    std::shuffle(rest.begin(), rest.end(), rng);
    double before = workload_cost(syn.queries, config, syn.catalog);
    for (std::size_t k = 0; k < std::min<std::size_t>(rest.size(), 4); ++k) {
      config.push_back(rest[k]);
      ++additions;
      const double after = workload_cost(syn.queries, config, syn.catalog);
      check.expect(after <= before, "triple " + std::to_string(trial) + ": cost rose from " +
                                        fmt(before, 12) + " to " + fmt(after, 12));
      for (const auto& q : syn.queries) {
        const auto b = query_cost(q, config, syn.catalog);
        check.expect(b.total <= b.baseline,
                     "triple " + std::to_string(trial) + " query " + std::to_string(q.id) + " above baseline");
      }
      before = after;
    }
  }
  const double secs = seconds_since(t0);
  check.expect(secs < kBudgetSeconds, "took " + fmt(secs) + " s");
  return check.outcome(std::to_string(kTriples) + " triples, " + std::to_string(additions) +
                       " index additions in " + fmt(secs, 3) + " s");
}

// --- AC4 -------------------------------------------------------------------

Outcome budget_safety() {
  constexpr int kRuns = 100;
  std::mt19937_64 rng(4);
  Checker check;
  std::size_t steps = 0;
  for (int run = 0; run < kRuns; ++run) {
    const auto syn = testsupport::synthetic(rng(), 1, 20 + rng() % 21);
    const auto m = build_matrix(syn.queries, syn.catalog);
    const auto set = build_candidate_set(mine_closed(m, 0.01 + 0.01 * static_cast<double>(rng() % 10)),
                                         m, syn.catalog);
    const double footprint = static_cast<double>(candidate_footprint(set, syn.catalog));
    // log-uniform fraction of the footprint between 1e-6 and 1
    const double fraction = std::pow(10.0, -6.0 * static_cast<double>(rng() % 1001) / 1000.0);
    Objective o;
    o.kind = run % 2 == 0 ? ObjectiveKind::ratio : ObjectiveKind::hybrid;
    o.alpha = static_cast<double>(rng() % 101) / 100.0;
    o.budget_bytes = static_cast<std::uint64_t>(std::floor(fraction * footprint));
    const auto c = greedy_select(set, syn.queries, syn.catalog, o);
    std::uint64_t bytes = 0;
    for (std::size_t k = 0; k < c.trace.size(); ++k) {
      ++steps;
      bytes += index_size_bytes(c.selected[k], syn.catalog);
      check.expect(c.trace[k].cumulative_bytes == bytes, "run " + std::to_string(run) + " trace bytes");
      check.expect(c.trace[k].cumulative_bytes <= *o.budget_bytes,
                   "run " + std::to_string(run) + " iteration " + std::to_string(k + 1) + " over budget");
    }
    check.expect(c.total_bytes <= *o.budget_bytes, "run " + std::to_string(run) + " total over budget");
  }
  return check.outcome(std::to_string(kRuns) + " ratio/hybrid runs, " + std::to_string(steps) +
                       " trace iterations");
}

// --- AC5 -------------------------------------------------------------------

Outcome hybrid_endpoints() {
  const auto& syn = fixture();
  const auto mining = mine_workload(syn.queries, syn.catalog, kFixtureMinsup, false);
  const auto set = workload_candidates(mining, syn.catalog, false);
  const auto footprint = candidate_footprint(set, syn.catalog);
  Checker check;

  auto run = [&](ObjectiveKind kind, std::optional<std::uint64_t> budget, double alpha) {
    Objective o;
    o.kind = kind;
    o.budget_bytes = budget;
    o.alpha = alpha;
    return greedy_select(set, syn.queries, syn.catalog, o).selected_ids();
  };
  std::size_t longest = 0;
  for (double fraction : {1e-5, 1e-4, 1e-3, 1e-2, 0.25, 1.0}) {
    const auto budget = static_cast<std::uint64_t>(std::floor(fraction * static_cast<double>(footprint)));
    const auto ratio = run(ObjectiveKind::ratio, budget, 1.0);
    longest = std::max(longest, ratio.size());
    check.expect(run(ObjectiveKind::hybrid, budget, 0.0) == ratio,
                 "alpha=0 differs from ratio at budget fraction " + fmt(fraction));
  }
  const auto profit = run(ObjectiveKind::profit, std::nullopt, 1.0);
  check.expect(!profit.empty(), "profit run selected nothing");
  check.expect(run(ObjectiveKind::hybrid, footprint, 1.0) == profit, "alpha=1 differs from profit");
  return check.outcome("seed 42, minsup 0.01, " + std::to_string(set.candidates.size()) +
                       " candidates; profit sequence " + std::to_string(profit.size()) +
                       " long, ratio up to " + std::to_string(longest));
}

// --- AC6 -------------------------------------------------------------------

Outcome minsup_sweep() {
  constexpr double kBudgetSeconds = 120;
  const auto t0 = std::chrono::steady_clock::now();
  const auto& syn = fixture();
  std::vector<double> values;
  for (int k = 1; k <= 20; ++k) values.push_back(0.05 * k);
  AdvisorOptions base;
  const auto rows = sweep(syn.catalog, syn.queries, base, SweepVariable::minsup, values);

  // Highest support of any single attribute bounds every itemset's support.
  const auto m = build_matrix(syn.queries, syn.catalog);
  std::size_t max_count = 0;
  for (std::size_t c = 0; c < m.column_count(); ++c) max_count = std::max(max_count, m.tidset(c).count());
  const double max_support = static_cast<double>(max_count) / static_cast<double>(m.row_count());

  Checker check;
  std::size_t above = 0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& r = rows[k];
    if (k > 0) {
      const auto& p = rows[k - 1];
      const std::string at = " at minsup " + fmt(r.value);
      check.expect(r.candidates <= p.candidates, "candidate count rose" + at);
      check.expect(r.selected <= p.selected, "selected count rose" + at);
      check.expect(r.final_cost >= p.final_cost, "final cost fell" + at);
    }
    if (r.value > max_support) {
      ++above;
      check.expect(r.final_cost == r.baseline_cost, "cost below baseline at minsup " + fmt(r.value));
    }
  }
  check.expect(above > 0, "no sweep value exceeds the max itemset support");
  const double secs = seconds_since(t0);
  check.expect(secs < kBudgetSeconds, "took " + fmt(secs) + " s");
  return check.outcome("candidates " + std::to_string(rows.front().candidates) + " -> " +
                       std::to_string(rows.back().candidates) + ", selected " +
                       std::to_string(rows.front().selected) + " -> " +
                       std::to_string(rows.back().selected) + ", max support " + fmt(max_support, 3) +
                       ", " + fmt(secs, 3) + " s");
}

// --- AC7 -------------------------------------------------------------------

Outcome budget_sweep() {
  const auto& syn = fixture();
  // Dense near zero, where the footprint's small indexes compete.
  std::vector<double> values{0, 1e-5, 2e-5, 5e-5, 1e-4, 2e-4, 5e-4, 1e-3, 2e-3, 5e-3, 0.01, 0.02, 0.05};
  for (int k = 1; k <= 20; ++k) values.push_back(0.05 * k);
  AdvisorOptions base;
  base.minsup = kFixtureMinsup;
  base.objective.kind = ObjectiveKind::ratio;
  base.objective.budget_bytes = 0;
  const auto rows = sweep(syn.catalog, syn.queries, base, SweepVariable::budget, values);

  AdvisorOptions profit;
  profit.minsup = kFixtureMinsup;
  const auto profit_cost = advise(syn.catalog, syn.queries, profit).configuration.final_cost;

  Checker check;
  for (std::size_t k = 1; k < rows.size(); ++k)
    check.expect(rows[k].final_cost <= rows[k - 1].final_cost,
                 "cost rose at budget fraction " + fmt(rows[k].value));
  check.expect(rows.front().final_cost == rows.front().baseline_cost, "cost below baseline at zero budget");
  check.expect(rows.back().final_cost == profit_cost,
               "cost at 100% is " + fmt(rows.back().final_cost, 12) + ", profit run " + fmt(profit_cost, 12));
  return check.outcome(std::to_string(rows.size()) + " budgets, cost " + fmt(rows.front().final_cost) +
                       " -> " + fmt(rows.back().final_cost) + " (profit run " + fmt(profit_cost) + ")");
}

// --- AC8 -------------------------------------------------------------------

Outcome rejection_rule() {
  const auto& syn = fixture();
  const auto mining = mine_workload(syn.queries, syn.catalog, kFixtureMinsup, false);
  const auto set = workload_candidates(mining, syn.catalog, false);
  Checker check;
  std::size_t key_only = 0;
  for (const auto& f : mining.itemsets) {
    const auto items = item_names(f.items, mining.matrix);
    bool only_keys = true;
    for (const auto& a : items) {
      const bool key = syn.catalog.is_fact(a.table)
                           ? syn.catalog.is_foreign_key(a.attribute)
                           : syn.catalog.find_table(a.table)->find_attribute(a.attribute)->is_key;
      only_keys = only_keys && key;
    }
    const auto outcome = generate_candidate(items, f.support, syn.catalog);
    const auto* rejection = std::get_if<Rejection>(&outcome);
    const bool rule = rejection != nullptr && rejection->reason == kNoNonKeyAttribute;
    if (only_keys) {
      ++key_only;
      check.expect(rule, "key-only itemset accepted or rejected for another reason");
      const bool reported = std::any_of(set.rejections.begin(), set.rejections.end(), [&](const Rejection& r) {
        return r.items == items && r.reason == kNoNonKeyAttribute;
      });
      check.expect(reported, "key-only itemset missing from the candidate set's rejections");
    } else {
      check.expect(!rule, "itemset with a non-key attribute rejected as key-only");
    }
  }
  check.expect(key_only > 0, "fixture has no key-only itemsets");
  return check.outcome(std::to_string(mining.itemsets.size()) + " itemsets, " + std::to_string(key_only) +
                       " key-only");
}

// --- AC9 -------------------------------------------------------------------

Outcome end_to_end_determinism() {
  const auto dir = fs::temp_directory_path() / ("bji_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const auto f = generate_synthetic(kSeed, kScale);
  std::ofstream(dir / "catalog.json") << f.catalog_json;
  std::ofstream(dir / "workload.sql") << f.workload_sql;

  Checker check;
  auto advise_once = [&](const std::string& out) {
    const std::string cmd = std::string("\"") + BJI_CLI + "\" advise --workload \"" +
                            (dir / "workload.sql").string() + "\" --schema \"" +
                            (dir / "catalog.json").string() + "\" --minsup 0.01 --stable > \"" +
                            (dir / out).string() + "\"";
    const int status = std::system(cmd.c_str());
    check.expect(WIFEXITED(status) && WEXITSTATUS(status) == 0, "advise exited abnormally");
    return testsupport::read_text((dir / out).string());
  };
  const auto a = advise_once("a.json");
  const auto b = advise_once("b.json");
  check.expect(!a.empty(), "empty report");
  check.expect(a == b, "reports differ");
  fs::remove_all(dir);
  return check.outcome("two --stable reports, " + std::to_string(a.size()) + " bytes each");
}

}  // namespace

int main() {
  const std::vector<std::tuple<std::string, std::string, std::function<Outcome()>>> criteria = {
      {"AC1", "miner equals brute force", miner_oracle},
      {"AC2", "formula fixtures", formula_fixtures},
      {"AC3", "dominance and baseline cap", dominance_and_cap},
      {"AC4", "budget safety", budget_safety},
      {"AC5", "hybrid endpoints", hybrid_endpoints},
      {"AC6", "minsup sweep shape", minsup_sweep},
      {"AC7", "budget sweep shape", budget_sweep},
      {"AC8", "key-only rejection rule", rejection_rule},
      {"AC9", "end-to-end determinism", end_to_end_determinism},
  };
  int failed = 0;
  for (const auto& [id, name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << id << " " << name << ": " << o.detail << std::endl;
    failed += o.pass ? 0 : 1;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
