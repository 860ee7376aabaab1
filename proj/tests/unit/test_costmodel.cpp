#include <doctest.h>

#include <cmath>

#include "bji/costmodel.hpp"
#include "support.hpp"

using namespace bji;

namespace {

QualifiedAttribute qa(const std::string& t, const std::string& a) { return {t, a}; }

struct Fixture : testsupport::Docs {
  CandidateIndex city = make({qa("Customers", "city"), qa("Customers", "cust_id"), qa("Sales", "cust_id")});
  CandidateIndex month = make({qa("Times", "month"), qa("Times", "time_id"), qa("Sales", "time_id")});
  CandidateIndex city_month =
      make({qa("Customers", "city"), qa("Customers", "cust_id"), qa("Sales", "cust_id"),
            qa("Times", "month"), qa("Times", "time_id"), qa("Sales", "time_id")});

  CandidateIndex make(const std::vector<QualifiedAttribute>& items) const {
    auto o = generate_candidate(items, {1, 3}, catalog);
    REQUIRE(std::holds_alternative<CandidateIndex>(o));
    return std::get<CandidateIndex>(o);
  }

  Query query(const std::string& sql) const { return load_workload(sql, catalog).queries.at(0); }
};

// Tolerance for values recomputed outside this code base.
constexpr double kEps = 1e-6;

}  // namespace

TEST_CASE("index size is one bit per fact row per bitmap") {
  const Fixture f;
  CHECK(index_size_bytes(f.city, f.catalog) == 6'250'000);
  CHECK(index_size_bytes(f.city_month, f.catalog) == 75'000'000);
  auto odd = f.city;
  odd.combined_cardinality = 3;
  auto cat = f.catalog;
  cat.fact.row_count = 5;
  CHECK(index_size_bytes(odd, cat) == 2);  // 15 bits round up
}

TEST_CASE("maintenance costs") {
  const Fixture f;
  CHECK(std::abs(maintenance_fact_insert(f.city, f.catalog) - 885.939453125) < kEps);
  CHECK(std::abs(maintenance_fact_insert(f.city_month, f.catalog) - 9339.2734375) < kEps);
  auto narrow = f.city;
  narrow.combined_cardinality = 1;
  CHECK(std::abs(maintenance_fact_insert(narrow, f.catalog) - 138.2587890625) < kEps);
  CHECK(std::abs(maintenance_dimension_insert(f.city, f.catalog, false) - 10528.939453125) < kEps);
  CHECK(std::abs(maintenance_dimension_insert(f.city, f.catalog, true) - 11291.87890625) < kEps);
}

TEST_CASE("domain expansion adds exactly one bitmap rewrite") {
  const Fixture f;
  for (const auto* i : {&f.city, &f.month, &f.city_month}) {
    const double pages = static_cast<double>(i->combined_cardinality) * 1e6 / (8.0 * 8192);
    CHECK(std::abs(maintenance_dimension_insert(*i, f.catalog, true) -
                   maintenance_dimension_insert(*i, f.catalog, false) - pages) < kEps);
  }
}

TEST_CASE("btree order") {
  const SystemParams p;
  CHECK(btree_order(16, p) == 410);
  CHECK(btree_order(20, p) == 342);
  CHECK(btree_order(4, p) == 1025);
  CHECK(btree_order(8188, p) == 2);
  CHECK_THROWS_AS((void)btree_order(8189, p), std::invalid_argument);
}

TEST_CASE("access cost terms for the city index") {
  const Fixture f;
  const AccessProfile p{50, 410, 1, 1'000'000, 9766, 8192};
  const auto t = access_cost_terms(p);
  CHECK(t.descent == 0);
  CHECK(t.scan == 17);
  CHECK(std::abs(t.read - 8506.158895061315) < kEps);
  CHECK(std::abs(access_cost(f.city, 1, f.catalog) - 8523.158895061315) < kEps);
  CHECK(std::abs(access_cost(f.month, 3, f.catalog) - 9814.999999925492) < kEps);
}

TEST_CASE("access cost: tree height and invalid profiles") {
  // 410^2 < 200000 <= 410^3: height 3, two internal levels above the leaves
  const AccessProfile deep{200'000, 410, 1, 1000, 10, 8192};
  CHECK(access_cost_terms(deep).descent == 2);
  const AccessProfile single{1, 410, 1, 1000, 10, 8192};
  CHECK(access_cost_terms(single).descent == 0);
  CHECK_THROWS_AS((void)access_cost(AccessProfile{50, 1, 1, 10, 1, 8192}), std::invalid_argument);
  CHECK_THROWS_AS((void)access_cost(AccessProfile{0, 4, 1, 10, 1, 8192}), std::invalid_argument);
}

TEST_CASE("access cost grows with d and the read term stays within the fact") {
  for (std::uint64_t card : {2, 12, 50, 600, 5000}) {
    double last = -1;
    for (std::uint64_t d = 1; d <= card; d += 1 + card / 40) {
      const AccessProfile p{card, 342, d, 1'000'000, 9766, 8192};
      const auto t = access_cost_terms(p);
      CHECK(t.total() > last);
      last = t.total();
      CHECK(t.read <= 9766.0);
      const double x = static_cast<double>(d) * 1e6 / static_cast<double>(card) / 9766.0;
      if (x < 30) CHECK(t.read < 9766.0);
      CHECK(t.read > 0);
    }
  }
}

TEST_CASE("hash join and baseline") {
  const Fixture f;
  CHECK(hash_join_cost(9766, 123) == 29667);
  CHECK(hash_join_cost(9766, 61) == 29481);
  REQUIRE(f.queries.size() == 3);
  CHECK(baseline_cost(f.queries[0], f.catalog) == 29667);
  CHECK(baseline_cost(f.queries[1], f.catalog) == 29481);
  CHECK(baseline_cost(f.queries[2], f.catalog) == 59148);
  CHECK(workload_cost(f.queries, {}, f.catalog) == 118296);
  // a repeated join is priced once
  CHECK(baseline_cost(f.query("SELECT * FROM Sales S, Customers C WHERE S.cust_id = C.cust_id "
                              "AND C.cust_id = S.cust_id;"),
                      f.catalog) == 29667);
}

TEST_CASE("derive_d") {
  const Fixture f;
  const auto base = std::string("SELECT * FROM Sales S, Customers C, Times T WHERE S.cust_id = "
                                "C.cust_id AND S.time_id = T.time_id");
  auto d = [&](const std::string& tail, const CandidateIndex& i) {
    return derive_d(f.query(base + tail + ";"), i, f.catalog);
  };
  CHECK(d(" AND C.city = 'a'", f.city) == 1);
  CHECK(d(" AND C.city IN ('a', 'b', 'c')", f.city) == 3);
  CHECK(d(" AND C.city IN ('a', 'b', 'a')", f.city) == 2);
  CHECK(d(" AND C.city > 'm'", f.city) == 50);
  CHECK(d(" AND C.city > 'm' AND C.city = 'q'", f.city) == 1);
  CHECK(d(" GROUP BY C.city", f.city) == 50);
  CHECK(d(" AND C.city = 'a' AND T.month IN (1, 2)", f.city_month) == 2);
  CHECK(d(" AND C.city = 'a'", f.city_month) == 12);
  CHECK(d(" AND T.month IN (1, 2, 3)", f.month) == 3);
}

TEST_CASE("applicability needs every index join and a used On attribute") {
  const Fixture f;
  CHECK(is_applicable(f.queries[0], f.city));
  CHECK_FALSE(is_applicable(f.queries[0], f.month));
  CHECK_FALSE(is_applicable(f.queries[0], f.city_month));
  CHECK(is_applicable(f.queries[2], f.city_month));
  CHECK(is_applicable(f.queries[2], f.month));  // through GROUP BY
  CHECK_FALSE(is_applicable(
      f.query("SELECT * FROM Sales S, Customers C WHERE S.cust_id = C.cust_id;"), f.city));
  CHECK_FALSE(index_query_cost(f.queries[1], f.city, f.catalog));
}

TEST_CASE("query costs through single indexes") {
  const Fixture f;
  const auto q3_city = index_query_cost(f.queries[2], f.city, f.catalog);
  REQUIRE(q3_city);
  CHECK(q3_city->residual == 29481);
  CHECK(std::abs(q3_city->total() - 38004.158895061315) < kEps);
  const auto q3_month = index_query_cost(f.queries[2], f.month, f.catalog);
  REQUIRE(q3_month);
  CHECK(q3_month->bitmaps == 12);
  CHECK(std::abs(q3_month->total() - 39626.0) < kEps);

  const std::vector<CandidateIndex> both{f.month, f.city};
  const auto b = query_cost(f.queries[2], both, f.catalog);
  CHECK(b.chosen_index == "bji_customers_city");
  CHECK(b.baseline == 59148);
  CHECK(std::abs(workload_cost(f.queries, both, f.catalog) - 56342.317790048124) < kEps);
}

TEST_CASE("an index no cheaper than the baseline is not chosen") {
  const Fixture f;
  auto cat = f.catalog;
  for (auto& d : cat.dimensions)
    for (auto& a : d.attributes)
      if (a.name == "city") a.cardinality = 10'000'000;
  auto wide = f.city;
  wide.combined_cardinality = 10'000'000;
  const auto q = f.query("SELECT * FROM Sales S, Customers C WHERE S.cust_id = C.cust_id GROUP BY C.city;");
  const auto through = index_query_cost(q, wide, cat);
  REQUIRE(through);
  CHECK(through->total() > baseline_cost(q, cat));
  const std::vector<CandidateIndex> config{wide};
  const auto b = query_cost(q, config, cat);
  CHECK_FALSE(b.chosen_index);
  CHECK(b.total == b.baseline);
}

TEST_CASE("ties go to the smaller index, then the smaller id") {
  const Fixture f;
  auto a = f.city;
  auto b = f.city;
  a.id = "b_index";
  b.id = "a_index";
  const std::vector<CandidateIndex> config{a, b};
  CHECK(query_cost(f.queries[0], config, f.catalog).chosen_index == "a_index");
}

TEST_CASE("dominance and baseline cap on synthetic workloads") {
  const auto syn = testsupport::synthetic(8);
  const auto m = build_matrix(syn.queries, syn.catalog);
  const auto set = build_candidate_set(mine_closed(m, 0.05), m, syn.catalog);
  std::vector<CandidateIndex> config;
  double last = workload_cost(syn.queries, config, syn.catalog);
  for (const auto& c : set.candidates) {
    config.push_back(c);
    const double now = workload_cost(syn.queries, config, syn.catalog);
    CHECK(now <= last);
    last = now;
    for (const auto& q : syn.queries) {
      const auto b = query_cost(q, config, syn.catalog);
      CHECK(b.total <= b.baseline);
      CHECK(b.total >= 0);
    }
  }
}

TEST_CASE("size scales linearly with the fact table") {
  const Fixture f;
  for (std::uint64_t k : {1, 2, 7, 64}) {
    auto cat = f.catalog;
    cat.fact.row_count *= k;
    CHECK(index_size_bytes(f.city_month, cat) == k * 75'000'000);
  }
}
