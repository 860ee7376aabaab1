#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace bji {

/// Disk page and page pointer sizes. Defaults follow an 8 KiB block.
struct SystemParams {
  std::uint64_t page_size_bytes = 8192;
  std::uint64_t pointer_size_bytes = 4;

  bool operator==(const SystemParams&) const = default;
};

struct AttributeStats {
  std::string name;
  std::uint64_t cardinality = 1;
  std::uint64_t width_bytes = 1;
  bool is_key = false;

  bool operator==(const AttributeStats&) const = default;
};

enum class TableRole { fact, dimension };

struct TableStats {
  std::string name;
  std::uint64_t row_count = 0;
  std::uint64_t tuple_width_bytes = 1;
  std::vector<AttributeStats> attributes;
  TableRole role = TableRole::dimension;
  std::vector<std::string> primary_key;
  std::uint64_t page_count = 1;  // derived on load

  [[nodiscard]] const AttributeStats* find_attribute(std::string_view attr) const;

  bool operator==(const TableStats&) const = default;
};

/// Target of a fact-table foreign key.
struct ForeignKeyTarget {
  std::string dimension;
  std::string attribute;

  bool operator==(const ForeignKeyTarget&) const = default;
};

/// Star schema: one fact table, its dimensions, the fact's foreign keys and
/// the system parameters used by every cost formula. Immutable after load.
struct SchemaCatalog {
  TableStats fact;
  std::vector<TableStats> dimensions;
  std::map<std::string, ForeignKeyTarget> foreign_keys;  // fact attribute -> dim.pk
  SystemParams params;
  std::string source;  // free-form provenance label, e.g. "synthetic"

  [[nodiscard]] const TableStats* find_table(std::string_view name) const;
  [[nodiscard]] const TableStats* find_dimension(std::string_view name) const;
  /// Case-insensitive lookup returning the catalog spelling.
  [[nodiscard]] const TableStats* find_table_ci(std::string_view name) const;

  [[nodiscard]] bool is_fact(std::string_view table) const { return table == fact.name; }
  [[nodiscard]] bool is_foreign_key(std::string_view fact_attribute) const;
  /// The fact attribute that references `dimension`, if any.
  [[nodiscard]] std::optional<std::string> foreign_key_for(std::string_view dimension) const;

  bool operator==(const SchemaCatalog&) const = default;
};

/// ceil(rows * tuple_width / page_size), never below one page.
[[nodiscard]] std::uint64_t page_count(std::uint64_t rows, std::uint64_t tuple_width,
                                       const SystemParams& params);

/// Parses and validates a catalog document; computes page counts.
/// Throws CatalogParseError for malformed input and CatalogError for
/// invariant violations.
[[nodiscard]] SchemaCatalog parse_catalog(std::string_view text);
[[nodiscard]] SchemaCatalog load_catalog(const std::filesystem::path& path);

/// Checks every catalog invariant and recomputes derived page counts.
void validate_catalog(SchemaCatalog& catalog);

[[nodiscard]] nlohmann::ordered_json catalog_to_json(const SchemaCatalog& catalog);

}  // namespace bji
