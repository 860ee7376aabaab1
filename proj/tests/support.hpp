#pragma once

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "bji/catalog.hpp"
#include "bji/closeminer.hpp"
#include "bji/sql.hpp"
#include "bji/synth.hpp"
#include "bruteforce.hpp"

namespace testsupport {

inline std::string data_path(const std::string& name) { return std::string(BJI_TEST_DATA) + "/" + name; }

inline std::string read_text(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// The three-query Sales/Customers/Times example.
struct Docs {
  bji::SchemaCatalog catalog = bji::load_catalog(data_path("catalog.json"));
  std::vector<bji::Query> queries =
      bji::load_workload(read_text(data_path("workload.sql")), catalog).queries;
};

struct Synthetic {
  bji::SchemaCatalog catalog;
  std::vector<bji::Query> queries;
};

inline Synthetic synthetic(std::uint64_t seed, std::uint64_t scale = 1, std::size_t queries = 40) {
  const auto f = bji::generate_synthetic(seed, scale, queries);
  Synthetic s;
  s.catalog = bji::parse_catalog(f.catalog_json);
  s.queries = bji::load_workload(f.workload_sql, s.catalog).queries;
  return s;
}

inline std::vector<std::vector<bool>> random_cells(std::mt19937_64& rng, std::size_t rows,
                                                   std::size_t cols, double density) {
  std::bernoulli_distribution bit(density);
  std::vector<std::vector<bool>> cells(rows, std::vector<bool>(cols));
  for (auto& r : cells)
    for (std::size_t c = 0; c < cols; ++c) r[c] = bit(rng);
  return cells;
}

inline std::vector<oracle::ClosedSet> as_oracle(const std::vector<bji::FrequentClosedItemset>& in) {
  std::vector<oracle::ClosedSet> out;
  for (const auto& f : in) out.push_back({f.items, f.support.count});
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace testsupport
