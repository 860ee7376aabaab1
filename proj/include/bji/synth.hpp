#pragma once

#include <cstdint>
#include <string>

namespace bji {

struct SyntheticFixture {
  std::string catalog_json;
  std::string workload_sql;
};

/// Deterministic star schema (Sales plus five dimensions) and a star-join
/// workload with skewed attribute popularity. `scale` multiplies the row
/// counts; scale 1 gives a 1,000,000-row fact table. Throws UsageError for
/// scale < 1 or zero queries.
[[nodiscard]] SyntheticFixture generate_synthetic(std::uint64_t seed, std::uint64_t scale,
                                                  std::size_t queries = 40);

}  // namespace bji
