#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "bji/catalog.hpp"
#include "bji/closeminer.hpp"
#include "bji/sql.hpp"

namespace bji {

/// Fact foreign key = dimension primary key.
struct JoinPredicate {
  QualifiedAttribute fact_key;
  QualifiedAttribute dimension_key;

  [[nodiscard]] std::string str() const { return fact_key.str() + " = " + dimension_key.str(); }

  auto operator<=>(const JoinPredicate&) const = default;
  bool operator==(const JoinPredicate&) const = default;
};

/// A bitmap join index: bitmaps over fact rows for each combination of the
/// On attributes' values, with the dimension joins pre-computed.
struct CandidateIndex {
  std::string id;
  std::vector<QualifiedAttribute> on_attributes;  // sorted, non-key dimension attributes
  std::vector<std::string> from_tables;           // fact first, then dimensions sorted
  std::vector<JoinPredicate> join_predicates;     // sorted, one per dimension
  std::uint64_t combined_cardinality = 1;         // product of On cardinalities
  std::uint64_t key_width_bytes = 1;              // sum of On widths
  std::vector<QualifiedAttribute> source_items;
  Support source_support;

  /// Canonical clause string; equal keys mean equal indexes.
  [[nodiscard]] std::string key() const;
  [[nodiscard]] std::vector<std::string> dimensions() const {
    return {from_tables.begin() + (from_tables.empty() ? 0 : 1), from_tables.end()};
  }
};

struct Rejection {
  std::vector<QualifiedAttribute> items;
  std::string reason;
};

inline constexpr std::string_view kNoNonKeyAttribute = "no non-key attribute";

struct CandidateOptions {
  /// Take each On attribute's join from catalog metadata instead of
  /// requiring the itemset to witness it.
  bool joins_from_metadata = false;
};

using CandidateOutcome = std::variant<CandidateIndex, Rejection>;

/// Assembles the On/From/Where clauses of a bitmap join index from one
/// itemset, or explains why none can be built.
[[nodiscard]] CandidateOutcome generate_candidate(const std::vector<QualifiedAttribute>& items,
                                                  Support support, const SchemaCatalog& catalog,
                                                  const CandidateOptions& options = {});

struct CandidateSet {
  std::vector<CandidateIndex> candidates;
  std::vector<Rejection> rejections;
};

/// Applies generate_candidate to every itemset in miner order, dropping
/// rejections (kept for reporting) and duplicate clause sets.
[[nodiscard]] CandidateSet build_candidate_set(const std::vector<FrequentClosedItemset>& itemsets,
                                               const QueryAttributeMatrix& matrix,
                                               const SchemaCatalog& catalog,
                                               const CandidateOptions& options = {});

}  // namespace bji
