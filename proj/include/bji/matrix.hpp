#pragma once

#include <cstddef>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "bji/sql.hpp"

namespace bji {

using Bitset = boost::dynamic_bitset<std::uint64_t>;

/// Binary queries x indexable-attributes matrix. Stored twice: each row as a
/// bitset over columns and each column as a bitset over rows (its tidset).
class QueryAttributeMatrix {
 public:
  QueryAttributeMatrix() = default;

  /// `cells[r][c]` is the presence of column c in row r. Every row must have
  /// `columns.size()` cells.
  QueryAttributeMatrix(std::vector<int> row_ids, std::vector<QualifiedAttribute> columns,
                       const std::vector<std::vector<bool>>& cells);

  /// Anonymous matrix (columns named `c0`, `c1`, ...) for tests and tools.
  static QueryAttributeMatrix from_cells(const std::vector<std::vector<bool>>& cells,
                                         std::size_t column_count);

  [[nodiscard]] std::size_t row_count() const noexcept { return row_ids_.size(); }
  [[nodiscard]] std::size_t column_count() const noexcept { return columns_.size(); }
  [[nodiscard]] const std::vector<int>& row_ids() const noexcept { return row_ids_; }
  [[nodiscard]] const std::vector<QualifiedAttribute>& columns() const noexcept { return columns_; }
  [[nodiscard]] bool cell(std::size_t row, std::size_t column) const { return rows_[row][column]; }
  [[nodiscard]] const Bitset& row(std::size_t r) const { return rows_[r]; }
  [[nodiscard]] const Bitset& tidset(std::size_t c) const { return tidsets_[c]; }
  [[nodiscard]] const std::vector<Bitset>& tidsets() const noexcept { return tidsets_; }

 private:
  std::vector<int> row_ids_;
  std::vector<QualifiedAttribute> columns_;
  std::vector<Bitset> rows_;
  std::vector<Bitset> tidsets_;
};

/// Columns are the union of the extracted attribute sets, sorted; one row per
/// query in workload order.
[[nodiscard]] QueryAttributeMatrix build_matrix(const std::vector<Query>& queries,
                                                const SchemaCatalog& catalog,
                                                const ExtractOptions& options = {});

}  // namespace bji
