#include "bji/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "bji/errors.hpp"

namespace bji {

__extension__ typedef unsigned __int128 u128;

namespace {

using json = nlohmann::json;

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

// Field accessors that report the JSON path on failure.
const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw CatalogParseError(path + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw CatalogParseError(path + "." + key + ": missing field");
  return *it;
}

std::string get_string(const json& obj, const std::string& key, const std::string& path) {
  const auto& v = require(obj, key, path);
  if (!v.is_string()) throw CatalogParseError(path + "." + key + ": expected a string");
  auto s = v.get<std::string>();
  if (s.empty()) throw CatalogParseError(path + "." + key + ": must not be empty");
  return s;
}

std::uint64_t get_uint(const json& obj, const std::string& key, const std::string& path) {
  const auto& v = require(obj, key, path);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    throw CatalogParseError(path + "." + key + ": expected a non-negative integer");
  return v.get<std::uint64_t>();
}

AttributeStats parse_attribute(const json& j, const std::string& path) {
  AttributeStats a;
  a.name = get_string(j, "name", path);
  a.cardinality = get_uint(j, "cardinality", path);
  a.width_bytes = get_uint(j, "width_bytes", path);
  if (auto it = j.find("is_key"); it != j.end()) {
    if (!it->is_boolean()) throw CatalogParseError(path + ".is_key: expected a boolean");
    a.is_key = it->get<bool>();
  }
  return a;
}

TableStats parse_table(const json& j, const std::string& path, TableRole role) {
  TableStats t;
  t.role = role;
  t.name = get_string(j, "name", path);
  t.row_count = get_uint(j, "row_count", path);
  t.tuple_width_bytes = get_uint(j, "tuple_width_bytes", path);
  if (auto it = j.find("primary_key"); it != j.end()) {
    const std::string pk_path = path + ".primary_key";
    if (it->is_string()) {
      t.primary_key.push_back(it->get<std::string>());
    } else if (it->is_array()) {
      for (std::size_t k = 0; k < it->size(); ++k) {
        if (!(*it)[k].is_string())
          throw CatalogParseError(pk_path + "[" + std::to_string(k) + "]: expected a string");
        t.primary_key.push_back((*it)[k].get<std::string>());
      }
    } else {
      throw CatalogParseError(pk_path + ": expected a string or an array");
    }
  }
  const auto& attrs = require(j, "attributes", path);
  if (!attrs.is_array()) throw CatalogParseError(path + ".attributes: expected an array");
  for (std::size_t k = 0; k < attrs.size(); ++k)
    t.attributes.push_back(
        parse_attribute(attrs[k], path + ".attributes[" + std::to_string(k) + "]"));
  return t;
}

void parse_foreign_keys(const json& j, const std::string& path, SchemaCatalog& cat) {
  auto it = j.find("foreign_keys");
  if (it == j.end()) return;
  if (!it->is_object()) throw CatalogParseError(path + ".foreign_keys: expected an object");
  for (const auto& [attr, target] : it->items()) {
    const std::string fk_path = path + ".foreign_keys." + attr;
    if (!target.is_string()) throw CatalogParseError(fk_path + ": expected \"Dim.pk\"");
    const auto ref = target.get<std::string>();
    const auto dot = ref.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == ref.size())
      throw CatalogParseError(fk_path + ": expected \"Dim.pk\", got \"" + ref + "\"");
    cat.foreign_keys[attr] = ForeignKeyTarget{ref.substr(0, dot), ref.substr(dot + 1)};
  }
}

void validate_table(TableStats& t, const SystemParams& params) {
  if (t.tuple_width_bytes == 0)
    throw CatalogError("table " + t.name + ": tuple_width_bytes must be positive");
  std::set<std::string> seen;
  for (const auto& a : t.attributes) {
    if (!seen.insert(a.name).second)
      throw CatalogError("table " + t.name + ": duplicate attribute " + a.name);
    if (a.cardinality < 1)
      throw CatalogError("attribute " + t.name + "." + a.name + ": cardinality must be >= 1");
    if (a.width_bytes < 1)
      throw CatalogError("attribute " + t.name + "." + a.name + ": width_bytes must be >= 1");
  }
  for (const auto& pk : t.primary_key) {
    const auto* a = t.find_attribute(pk);
    if (a == nullptr)
      throw CatalogError("table " + t.name + ": primary key " + pk + " is not an attribute");
    if (!a->is_key)
      throw CatalogError("table " + t.name + ": primary key " + pk + " must have is_key = true");
  }
  t.page_count = page_count(t.row_count, t.tuple_width_bytes, params);
}

nlohmann::ordered_json attribute_to_json(const AttributeStats& a) {
  return {{"name", a.name},
          {"cardinality", a.cardinality},
          {"width_bytes", a.width_bytes},
          {"is_key", a.is_key}};
}

}  // namespace

const AttributeStats* TableStats::find_attribute(std::string_view attr) const {
  auto it = std::find_if(attributes.begin(), attributes.end(),
                         [&](const AttributeStats& a) { return a.name == attr; });
  return it == attributes.end() ? nullptr : &*it;
}

const TableStats* SchemaCatalog::find_table(std::string_view name) const {
  if (fact.name == name) return &fact;
  return find_dimension(name);
}

const TableStats* SchemaCatalog::find_dimension(std::string_view name) const {
  auto it = std::find_if(dimensions.begin(), dimensions.end(),
                         [&](const TableStats& t) { return t.name == name; });
  return it == dimensions.end() ? nullptr : &*it;
}

const TableStats* SchemaCatalog::find_table_ci(std::string_view name) const {
  if (const auto* exact = find_table(name)) return exact;
  if (iequals(fact.name, name)) return &fact;
  for (const auto& d : dimensions)
    if (iequals(d.name, name)) return &d;
  return nullptr;
}

bool SchemaCatalog::is_foreign_key(std::string_view fact_attribute) const {
  return foreign_keys.find(std::string(fact_attribute)) != foreign_keys.end();
}

std::optional<std::string> SchemaCatalog::foreign_key_for(std::string_view dimension) const {
  for (const auto& [attr, target] : foreign_keys)
    if (target.dimension == dimension) return attr;
  return std::nullopt;
}

std::uint64_t page_count(std::uint64_t rows, std::uint64_t tuple_width,
                         const SystemParams& params) {
  const auto bytes = static_cast<u128>(rows) * tuple_width;
  const auto pages = (bytes + params.page_size_bytes - 1) / params.page_size_bytes;
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(pages));
}

void validate_catalog(SchemaCatalog& cat) {
  if (cat.params.pointer_size_bytes == 0)
    throw CatalogError("params.pointer_size_bytes must be positive");
  if (cat.params.page_size_bytes <= cat.params.pointer_size_bytes)
    throw CatalogError("params.page_size_bytes must exceed pointer_size_bytes");

  cat.fact.role = TableRole::fact;
  validate_table(cat.fact, cat.params);
  std::set<std::string> names{cat.fact.name};
  for (auto& d : cat.dimensions) {
    d.role = TableRole::dimension;
    if (!names.insert(d.name).second)
      throw CatalogError("duplicate table name " + d.name);
    validate_table(d, cat.params);
  }

  std::set<std::string> referenced;
  for (const auto& [attr, target] : cat.foreign_keys) {
    const std::string key = cat.fact.name + "." + attr;
    if (cat.fact.find_attribute(attr) == nullptr)
      throw CatalogError("foreign key " + key + ": no such fact attribute");
    const auto* dim = cat.find_dimension(target.dimension);
    if (dim == nullptr)
      throw CatalogError("foreign key " + key + ": references missing dimension " +
                         target.dimension);
    if (std::find(dim->primary_key.begin(), dim->primary_key.end(), target.attribute) ==
        dim->primary_key.end())
      throw CatalogError("foreign key " + key + ": " + target.dimension + "." +
                         target.attribute + " is not a declared primary key");
    // One join path per dimension keeps every bitmap join index's Where
    // clause unambiguous.
    if (!referenced.insert(target.dimension).second)
      throw CatalogError("foreign key " + key + ": dimension " + target.dimension +
                         " is already referenced by another foreign key");
  }
}

SchemaCatalog parse_catalog(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into a line number for the message.
    const auto upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + upto, '\n');
    throw CatalogParseError("line " + std::to_string(line) + ": " + e.what());
  }
  if (!doc.is_object()) throw CatalogParseError("$: expected a JSON object");

  SchemaCatalog cat;
  if (auto it = doc.find("params"); it != doc.end()) {
    if (it->contains("page_size_bytes"))
      cat.params.page_size_bytes = get_uint(*it, "page_size_bytes", "params");
    if (it->contains("pointer_size_bytes"))
      cat.params.pointer_size_bytes = get_uint(*it, "pointer_size_bytes", "params");
  }
  if (auto it = doc.find("source"); it != doc.end() && it->is_string())
    cat.source = it->get<std::string>();

  const auto& fact = require(doc, "fact", "$");
  cat.fact = parse_table(fact, "fact", TableRole::fact);
  parse_foreign_keys(fact, "fact", cat);

  if (auto it = doc.find("dimensions"); it != doc.end()) {
    if (!it->is_array()) throw CatalogParseError("dimensions: expected an array");
    for (std::size_t k = 0; k < it->size(); ++k)
      cat.dimensions.push_back(parse_table((*it)[k], "dimensions[" + std::to_string(k) + "]",
                                           TableRole::dimension));
  }
  validate_catalog(cat);
  return cat;
}

SchemaCatalog load_catalog(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ExitCode::failure, "catalog", "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_catalog(buf.str());
}

nlohmann::ordered_json catalog_to_json(const SchemaCatalog& cat) {
  auto table = [](const TableStats& t) {
    nlohmann::ordered_json j;
    j["name"] = t.name;
    j["row_count"] = t.row_count;
    j["tuple_width_bytes"] = t.tuple_width_bytes;
    j["primary_key"] = t.primary_key;
    j["attributes"] = nlohmann::ordered_json::array();
    for (const auto& a : t.attributes) j["attributes"].push_back(attribute_to_json(a));
    return j;
  };
  nlohmann::ordered_json out;
  if (!cat.source.empty()) out["source"] = cat.source;
  out["params"] = {{"page_size_bytes", cat.params.page_size_bytes},
                   {"pointer_size_bytes", cat.params.pointer_size_bytes}};
  auto fact = table(cat.fact);
  nlohmann::ordered_json fks = nlohmann::ordered_json::object();
  for (const auto& [attr, target] : cat.foreign_keys)
    fks[attr] = target.dimension + "." + target.attribute;
  fact["foreign_keys"] = fks;
  out["fact"] = fact;
  out["dimensions"] = nlohmann::ordered_json::array();
  for (const auto& d : cat.dimensions) out["dimensions"].push_back(table(d));
  return out;
}

}  // namespace bji
