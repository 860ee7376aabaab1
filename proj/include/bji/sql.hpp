#pragma once

#include <compare>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "bji/catalog.hpp"

namespace bji {

/// `Table.attribute`. An empty table means the reference was unqualified and
/// has not been resolved against a catalog yet.
struct QualifiedAttribute {
  std::string table;
  std::string attribute;

  [[nodiscard]] std::string str() const {
    return table.empty() ? attribute : table + "." + attribute;
  }

  auto operator<=>(const QualifiedAttribute&) const = default;
  bool operator==(const QualifiedAttribute&) const = default;
};

struct Literal {
  std::string text;  // unquoted value
  bool is_string = false;

  auto operator<=>(const Literal&) const = default;
  bool operator==(const Literal&) const = default;
};

enum class PredicateKind { join, restriction };
enum class CompareOp { eq, ne, lt, le, gt, ge, in };

[[nodiscard]] std::string_view to_string(CompareOp op);

/// A conjunct of a WHERE clause. Joins use `right`; restrictions use `values`
/// (one value for comparisons, k values for IN).
struct Predicate {
  PredicateKind kind = PredicateKind::restriction;
  QualifiedAttribute left;
  QualifiedAttribute right;
  CompareOp op = CompareOp::eq;
  std::vector<Literal> values;

  bool operator==(const Predicate&) const = default;
};

struct Query {
  int id = 0;
  std::vector<std::string> tables;  // FROM order, aliases resolved
  std::vector<Predicate> predicates;
  std::vector<QualifiedAttribute> group_by;
  std::string text;

  [[nodiscard]] bool uses_table(std::string_view table) const;
};

struct ParseOptions {
  /// Skip statements with unsupported constructs (or unresolvable
  /// attributes) instead of failing.
  bool lenient = false;
};

struct ParseWarning {
  std::size_t statement = 0;
  std::string message;
};

struct ParsedWorkload {
  std::vector<Query> queries;
  std::vector<ParseWarning> warnings;
};

/// Parses `;`-terminated star-join SELECT statements. Query ids are the
/// 1-based statement ordinal in the file.
[[nodiscard]] ParsedWorkload parse_workload(std::string_view text,
                                            const ParseOptions& options = {});

/// Resolves a parsed query against the catalog: canonical table names,
/// unqualified attributes bound to their unique table, join predicates
/// oriented fact-side left. Predicates touching tables the catalog does not
/// know are dropped. Throws ValidationError.
[[nodiscard]] Query validate_query(const Query& query, const SchemaCatalog& catalog);

/// Parse + validate; under `lenient`, statements failing validation are
/// skipped with a warning.
[[nodiscard]] ParsedWorkload load_workload(std::string_view text, const SchemaCatalog& catalog,
                                           const ParseOptions& options = {});

struct ExtractOptions {
  /// When false, join-predicate key attributes are left out of the
  /// extracted set (joins are then recovered from catalog metadata).
  bool include_join_keys = true;
};

/// Restriction attributes, both sides of join predicates, and group-by
/// attributes, restricted to tables present in the catalog.
[[nodiscard]] std::set<QualifiedAttribute> extract_indexable_attributes(
    const Query& query, const SchemaCatalog& catalog, const ExtractOptions& options = {});

/// Renders a query back into the restricted grammar. The select list is
/// emitted as `*`.
[[nodiscard]] std::string to_sql(const Query& query);

}  // namespace bji
