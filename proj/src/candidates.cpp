#include "bji/candidates.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <set>

namespace bji {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

Rejection reject(const std::vector<QualifiedAttribute>& items, std::string reason) {
  return {items, std::move(reason)};
}

}  // namespace

std::string CandidateIndex::key() const {
  std::string k = "ON(";
  for (std::size_t i = 0; i < on_attributes.size(); ++i)
    k += (i ? "," : "") + on_attributes[i].str();
  k += ")WHERE(";
  for (std::size_t i = 0; i < join_predicates.size(); ++i)
    k += (i ? "," : "") + join_predicates[i].str();
  return k + ")";
}

CandidateOutcome generate_candidate(const std::vector<QualifiedAttribute>& items, Support support,
                                    const SchemaCatalog& cat, const CandidateOptions& options) {
  std::set<std::string> witnessed;
  std::set<QualifiedAttribute> on;
  for (const auto& qa : items) {
    const auto* table = cat.find_table(qa.table);
    if (table == nullptr) continue;
    if (cat.is_fact(qa.table)) {
      // Fact foreign keys feed From/Where; other fact attributes (measures)
      // never enter a bitmap join index.
      if (auto fk = cat.foreign_keys.find(qa.attribute); fk != cat.foreign_keys.end())
        witnessed.insert(fk->second.dimension);
      continue;
    }
    const auto* attr = table->find_attribute(qa.attribute);
    if (attr == nullptr) continue;
    if (attr->is_key) witnessed.insert(table->name);
    else on.insert(qa);
  }
  if (on.empty()) return reject(items, std::string(kNoNonKeyAttribute));

  CandidateIndex index;
  index.on_attributes.assign(on.begin(), on.end());
  std::set<std::string> dims;
  for (const auto& qa : index.on_attributes) dims.insert(qa.table);

  for (const auto& d : dims) {
    const auto fk = cat.foreign_key_for(d);
    if (!fk) return reject(items, "dimension " + d + " is not referenced by a fact foreign key");
    if (!options.joins_from_metadata && witnessed.count(d) == 0)
      return reject(items, "dimension " + d + " has no witnessed join to the fact");
    const auto& target = cat.foreign_keys.at(*fk);
    index.join_predicates.push_back(
        {{cat.fact.name, *fk}, {target.dimension, target.attribute}});
  }
  std::sort(index.join_predicates.begin(), index.join_predicates.end());

  index.from_tables.push_back(cat.fact.name);
  index.from_tables.insert(index.from_tables.end(), dims.begin(), dims.end());

  index.combined_cardinality = 1;
  index.key_width_bytes = 0;
  for (const auto& qa : index.on_attributes) {
    const auto* attr = cat.find_table(qa.table)->find_attribute(qa.attribute);
    if (attr->cardinality > std::numeric_limits<std::uint64_t>::max() / index.combined_cardinality)
      return reject(items, "combined cardinality overflows");
    index.combined_cardinality *= attr->cardinality;
    index.key_width_bytes += attr->width_bytes;
  }

  index.id = "bji";
  for (const auto& qa : index.on_attributes) index.id += "_" + lower(qa.table) + "_" + lower(qa.attribute);
  index.source_items = items;
  index.source_support = support;
  return index;
}

CandidateSet build_candidate_set(const std::vector<FrequentClosedItemset>& itemsets,
                                 const QueryAttributeMatrix& matrix, const SchemaCatalog& cat,
                                 const CandidateOptions& options) {
  CandidateSet out;
  std::set<std::string> keys;
  std::map<std::string, std::string> id_owner;  // id -> key
  for (const auto& fci : itemsets) {
    auto outcome = generate_candidate(item_names(fci.items, matrix), fci.support, cat, options);
    if (auto* rejection = std::get_if<Rejection>(&outcome)) {
      out.rejections.push_back(std::move(*rejection));
      continue;
    }
    auto& index = std::get<CandidateIndex>(outcome);
    const auto key = index.key();
    if (!keys.insert(key).second) continue;
    // Distinct clause sets can lowercase to the same name.
    const auto base = index.id;
    for (int n = 2; id_owner.count(index.id) != 0; ++n) index.id = base + "_" + std::to_string(n);
    id_owner.emplace(index.id, key);
    out.candidates.push_back(std::move(index));
  }
  return out;
}

}  // namespace bji
