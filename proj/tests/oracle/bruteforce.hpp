#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace oracle {

struct ClosedSet {
  std::vector<std::size_t> items;
  std::size_t count = 0;

  bool operator==(const ClosedSet&) const = default;
  auto operator<=>(const ClosedSet&) const = default;
};

/// Every non-empty closed itemset supported by at least `min_count` rows,
/// found by enumerating all 2^columns subsets. Sorted by items. Throws
/// std::invalid_argument above 20 columns.
std::vector<ClosedSet> mine_closed_bruteforce(const std::vector<std::vector<bool>>& cells,
                                              std::size_t columns, std::size_t min_count);

}  // namespace oracle
