#include "bji/synth.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <vector>

#include "bji/catalog.hpp"
#include "bji/errors.hpp"

namespace bji {

namespace {

struct AttrSpec {
  const char* name;
  std::uint64_t cardinality;
  std::uint64_t width;
  bool numeric;
  std::uint64_t first_value;  // numeric attributes start here
};

struct DimSpec {
  const char* table;
  const char* alias;
  const char* key;
  std::uint64_t rows;  // at scale 1
  bool scales;
  std::uint64_t tuple_width;
  unsigned weight;  // how often queries touch the dimension
  std::vector<AttrSpec> attributes;  // in decreasing popularity
};

std::vector<DimSpec> dimension_specs() {
  return {
      {"Customers", "C", "cust_id", 50000, true, 120, 35,
       {{"city", 600, 20, false, 0},
        {"state", 50, 16, false, 0},
        {"country", 20, 16, false, 0},
        {"income_level", 12, 4, true, 1},
        {"gender", 2, 1, false, 0}}},
      {"Times", "T", "time_id", 1461, false, 60, 30,
       {{"year", 4, 4, true, 1998},
        {"month", 12, 4, true, 1},
        {"quarter", 4, 4, true, 1},
        {"day_of_week", 7, 4, true, 1}}},
      {"Products", "P", "prod_id", 10000, true, 160, 20,
       {{"category", 20, 24, false, 0},
        {"subcategory", 100, 24, false, 0},
        {"brand", 200, 24, false, 0},
        {"color", 15, 12, false, 0}}},
      {"Channels", "CH", "channel_id", 5, false, 40, 10,
       {{"channel_class", 3, 12, false, 0}, {"channel_desc", 5, 20, false, 0}}},
      {"Promotions", "PR", "promo_id", 500, false, 80, 5,
       {{"promo_category", 10, 16, false, 0}, {"promo_subcategory", 30, 24, false, 0}}},
  };
}

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t below(std::uint64_t n) { return rng_() % n; }

  /// Index drawn with the given integer weights.
  std::size_t weighted(const std::vector<unsigned>& weights) {
    std::uint64_t total = 0;
    for (auto w : weights) total += w;
    auto r = below(total);
    for (std::size_t k = 0; k < weights.size(); ++k) {
      if (r < weights[k]) return k;
      r -= weights[k];
    }
    return weights.size() - 1;
  }

 private:
  std::mt19937_64 rng_;
};

std::string value_literal(const AttrSpec& a, std::uint64_t v) {
  if (a.numeric) return std::to_string(a.first_value + v);
  return "'" + std::string(a.name) + "_" + std::to_string(v + 1) + "'";
}

std::string restriction(Draw& draw, const DimSpec& d, const AttrSpec& a, std::uint64_t card) {
  const std::string col = std::string(d.alias) + "." + a.name;
  const auto shape = draw.below(10);
  if (shape < 6 || card < 3) return col + " = " + value_literal(a, draw.below(card));
  if (shape < 9 || !a.numeric) {
    const auto n = 2 + draw.below(std::min<std::uint64_t>(3, card - 1));
    const auto start = draw.below(card - n + 1);
    std::string s = col + " IN (";
    for (std::uint64_t k = 0; k < n; ++k) s += (k ? ", " : "") + value_literal(a, start + k);
    return s + ")";
  }
  return col + " >= " + value_literal(a, draw.below(card));
}

}  // namespace

SyntheticFixture generate_synthetic(std::uint64_t seed, std::uint64_t scale, std::size_t queries) {
  if (scale < 1) throw UsageError("synthetic scale must be >= 1");
  if (queries == 0) throw UsageError("synthetic workload needs at least one query");
  Draw draw(seed);
  auto dims = dimension_specs();

  // Jitter the larger cardinalities so different seeds give different schemas.
  for (auto& d : dims)
    for (auto& a : d.attributes)
      if (a.cardinality >= 20) a.cardinality += draw.below(a.cardinality / 5 + 1);

  SchemaCatalog cat;
  cat.source = "synthetic star schema (seed " + std::to_string(seed) + ", scale " +
               std::to_string(scale) + "); stand-in workload, not a published benchmark";
  cat.fact.name = "Sales";
  cat.fact.role = TableRole::fact;
  cat.fact.row_count = 1000000 * scale;
  cat.fact.tuple_width_bytes = 36;
  for (const auto& d : dims) {
    cat.fact.attributes.push_back({d.key, d.rows * (d.scales ? scale : 1), 4, false});
    cat.foreign_keys[d.key] = {d.table, d.key};
  }
  cat.fact.attributes.push_back({"quantity_sold", 100, 4, false});
  cat.fact.attributes.push_back({"amount_sold", 100000, 8, false});

  for (const auto& d : dims) {
    TableStats t;
    t.name = d.table;
    t.row_count = d.rows * (d.scales ? scale : 1);
    t.tuple_width_bytes = d.tuple_width;
    t.primary_key = {d.key};
    t.attributes.push_back({d.key, t.row_count, 4, true});
    for (const auto& a : d.attributes) t.attributes.push_back({a.name, a.cardinality, a.width, false});
    cat.dimensions.push_back(std::move(t));
  }
  validate_catalog(cat);

  std::vector<unsigned> dim_weights;
  for (const auto& d : dims) dim_weights.push_back(d.weight);

  std::ostringstream sql;
  sql << "-- " << cat.source << "\n";
  for (std::size_t q = 0; q < queries; ++q) {
    const auto want = 1 + draw.weighted({3, 5, 2});
    std::vector<std::size_t> chosen;
    while (chosen.size() < want) {
      const auto k = draw.weighted(dim_weights);
      if (std::find(chosen.begin(), chosen.end(), k) == chosen.end()) chosen.push_back(k);
    }
    std::sort(chosen.begin(), chosen.end());

    std::vector<std::string> where, group;
    for (const auto k : chosen) {
      const auto& d = dims[k];
      where.push_back(std::string("S.") + d.key + " = " + d.alias + "." + d.key);
    }
    for (const auto k : chosen) {
      const auto& d = dims[k];
      // Popularity halves with each step down the attribute list.
      std::vector<unsigned> attr_weights;
      for (std::size_t a = 0; a < d.attributes.size(); ++a) attr_weights.push_back(16u >> a);
      const auto r = draw.weighted(attr_weights);
      where.push_back(restriction(draw, d, d.attributes[r], d.attributes[r].cardinality));
      if (draw.below(2) == 0) {
        const auto g = draw.weighted(attr_weights);
        if (g != r) group.push_back(std::string(d.alias) + "." + d.attributes[g].name);
      }
    }

    sql << "SELECT ";
    for (const auto& g : group) sql << g << ", ";
    sql << "SUM(S.amount_sold) FROM Sales S";
    for (const auto k : chosen) sql << ", " << dims[k].table << " " << dims[k].alias;
    sql << "\nWHERE ";
    for (std::size_t w = 0; w < where.size(); ++w) sql << (w ? " AND " : "") << where[w];
    if (!group.empty()) {
      sql << "\nGROUP BY ";
      for (std::size_t g = 0; g < group.size(); ++g) sql << (g ? ", " : "") << group[g];
    }
    sql << ";\n";
  }

  return {catalog_to_json(cat).dump(2) + "\n", sql.str()};
}

}  // namespace bji
