#pragma once

#include <cstddef>
#include <vector>

#include "bji/exec.hpp"
#include "bji/matrix.hpp"

namespace bji {

/// Sorted, duplicate-free column indices into a QueryAttributeMatrix.
using Itemset = std::vector<std::size_t>;

/// Support as an exact row fraction.
struct Support {
  std::size_t count = 0;
  std::size_t rows = 0;

  [[nodiscard]] double value() const {
    return rows == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(rows);
  }
  bool operator==(const Support&) const = default;
};

struct FrequentClosedItemset {
  Itemset items;
  Support support;

  bool operator==(const FrequentClosedItemset&) const = default;
};

/// Rows containing every item of `items`; the empty itemset is supported by
/// every row.
[[nodiscard]] Support support(const Itemset& items, const QueryAttributeMatrix& m);

/// Intersection of all rows containing `items`. Throws std::domain_error when
/// `items` has zero support.
[[nodiscard]] Itemset closure(const Itemset& items, const QueryAttributeMatrix& m);

/// Smallest row count reaching `minsup`.
[[nodiscard]] std::size_t min_support_count(double minsup, std::size_t rows);

/// Frequent closed itemsets by the Close levelwise strategy: frequent
/// minimal generators are grown one item per level and closed with the
/// matrix's column tidsets. Output is sorted by descending support, then
/// ascending size, then lexicographically. Throws std::invalid_argument
/// unless 0 < minsup <= 1.
[[nodiscard]] std::vector<FrequentClosedItemset> mine_closed(const QueryAttributeMatrix& m,
                                                             double minsup,
                                                             Exec exec = Exec::parallel);

/// Names the items of an itemset, e.g. "Customers.city Sales.cust_id".
[[nodiscard]] std::vector<QualifiedAttribute> item_names(const Itemset& items,
                                                         const QueryAttributeMatrix& m);

}  // namespace bji
