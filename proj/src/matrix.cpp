#include "bji/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace bji {

QueryAttributeMatrix::QueryAttributeMatrix(std::vector<int> row_ids,
                                           std::vector<QualifiedAttribute> columns,
                                           const std::vector<std::vector<bool>>& cells)
    : row_ids_(std::move(row_ids)), columns_(std::move(columns)) {
  if (cells.size() != row_ids_.size())
    throw std::invalid_argument("matrix: row count does not match row ids");
  rows_.reserve(cells.size());
  tidsets_.assign(columns_.size(), Bitset(cells.size()));
  for (std::size_t r = 0; r < cells.size(); ++r) {
    if (cells[r].size() != columns_.size())
      throw std::invalid_argument("matrix: row " + std::to_string(r) + " has the wrong width");
    Bitset row(columns_.size());
    for (std::size_t c = 0; c < columns_.size(); ++c) {
      if (cells[r][c]) {
        row.set(c);
        tidsets_[c].set(r);
      }
    }
    rows_.push_back(std::move(row));
  }
}

QueryAttributeMatrix QueryAttributeMatrix::from_cells(const std::vector<std::vector<bool>>& cells,
                                                      std::size_t column_count) {
  std::vector<int> ids(cells.size());
  for (std::size_t r = 0; r < ids.size(); ++r) ids[r] = static_cast<int>(r + 1);
  std::vector<QualifiedAttribute> cols;
  for (std::size_t c = 0; c < column_count; ++c) cols.push_back({"", "c" + std::to_string(c)});
  return {std::move(ids), std::move(cols), cells};
}

QueryAttributeMatrix build_matrix(const std::vector<Query>& queries, const SchemaCatalog& cat,
                                  const ExtractOptions& options) {
  std::vector<std::set<QualifiedAttribute>> extracted;
  std::set<QualifiedAttribute> all;
  for (const auto& q : queries) {
    extracted.push_back(extract_indexable_attributes(q, cat, options));
    all.insert(extracted.back().begin(), extracted.back().end());
  }
  std::vector<QualifiedAttribute> columns(all.begin(), all.end());

  std::vector<int> ids;
  std::vector<std::vector<bool>> cells;
  for (std::size_t r = 0; r < queries.size(); ++r) {
    ids.push_back(queries[r].id);
    std::vector<bool> row(columns.size(), false);
    for (const auto& a : extracted[r]) {
      const auto it = std::lower_bound(columns.begin(), columns.end(), a);
      row[static_cast<std::size_t>(it - columns.begin())] = true;
    }
    cells.push_back(std::move(row));
  }
  return {std::move(ids), std::move(columns), cells};
}

}  // namespace bji
