#include "bji/sql.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>

#include "bji/errors.hpp"

namespace bji {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

enum class TokenKind { ident, number, string, symbol };

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t offset;
  bool quoted_ident = false;
};

class SourceMap {
 public:
  explicit SourceMap(std::string_view text) : text_(text) {}

  [[nodiscard]] std::pair<std::size_t, std::size_t> line_col(std::size_t offset) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    return {line, col};
  }

  [[noreturn]] void fail(std::size_t statement, std::size_t offset, const std::string& msg,
                         bool unknown_construct = false) const {
    auto [line, col] = line_col(offset);
    throw ParseError(statement, offset, line, col, msg, unknown_construct);
  }

  [[nodiscard]] std::string_view text() const { return text_; }

 private:
  std::string_view text_;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

// Splits the workload into statements of tokens. Statement numbering only
// counts non-empty statements.
std::vector<std::vector<Token>> tokenize(const SourceMap& src) {
  const auto text = src.text();
  std::vector<std::vector<Token>> statements;
  std::vector<Token> current;
  auto stmt_no = [&] { return statements.size() + 1; };

  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '-') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (c == '/' && i + 1 < text.size() && text[i + 1] == '*') {
      const auto end = text.find("*/", i + 2);
      if (end == std::string_view::npos) src.fail(stmt_no(), i, "unterminated block comment");
      i = end + 2;
    } else if (c == ';') {
      if (!current.empty()) statements.push_back(std::move(current));
      current.clear();
      ++i;
    } else if (ident_start(c)) {
      const auto start = i;
      while (i < text.size() && ident_char(text[i])) ++i;
      current.push_back({TokenKind::ident, std::string(text.substr(start, i - start)), start});
    } else if (c == '"') {
      const auto start = i;
      const auto end = text.find('"', i + 1);
      if (end == std::string_view::npos) src.fail(stmt_no(), i, "unterminated quoted identifier");
      current.push_back(
          {TokenKind::ident, std::string(text.substr(start + 1, end - start - 1)), start, true});
      i = end + 1;
    } else if (digit(c)) {
      const auto start = i;
      while (i < text.size() && digit(text[i])) ++i;
      if (i + 1 < text.size() && text[i] == '.' && digit(text[i + 1])) {
        ++i;
        while (i < text.size() && digit(text[i])) ++i;
      }
      current.push_back({TokenKind::number, std::string(text.substr(start, i - start)), start});
    } else if (c == '\'') {
      const auto start = i;
      std::string value;
      ++i;
      for (;;) {
        if (i >= text.size()) src.fail(stmt_no(), start, "unterminated string literal");
        if (text[i] == '\'') {
          if (i + 1 < text.size() && text[i + 1] == '\'') {
            value.push_back('\'');
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        value.push_back(text[i++]);
      }
      current.push_back({TokenKind::string, std::move(value), start});
    } else {
      static constexpr std::string_view two_char[] = {"<>", "!=", "<=", ">="};
      const auto pair = text.substr(i, 2);
      if (std::find(std::begin(two_char), std::end(two_char), pair) != std::end(two_char)) {
        current.push_back({TokenKind::symbol, std::string(pair), i});
        i += 2;
      } else if (std::string_view("(),.*=<>+-/%|").find(c) != std::string_view::npos) {
        current.push_back({TokenKind::symbol, std::string(1, c), i});
        ++i;
      } else {
        src.fail(stmt_no(), i, std::string("unexpected character '") + c + "'");
      }
    }
  }
  if (!current.empty()) statements.push_back(std::move(current));
  return statements;
}

bool is_reserved(std::string_view word) {
  static const std::set<std::string, std::less<>> reserved = {
      "select", "from",  "where", "and",   "or",    "not",   "group",  "by",
      "in",     "as",    "order", "having", "join",  "inner", "left",   "right",
      "outer",  "on",    "between", "like", "union", "exists", "is",   "null",
      "limit",  "cross", "full",  "natural", "using", "date", "intersect", "except"};
  return reserved.count(lower(word)) > 0;
}

class StatementParser {
 public:
  StatementParser(const SourceMap& src, const std::vector<Token>& tokens, std::size_t index)
      : src_(src), tokens_(tokens), index_(index) {}

  Query parse() {
    Query q;
    q.id = static_cast<int>(index_);
    const auto begin = tokens_.front().offset;
    const auto& last = tokens_.back();
    auto end = last.offset + last.text.size() +
               (last.kind == TokenKind::string || last.quoted_ident ? 2 : 0);
    end = std::min(end, src_.text().size());
    q.text = std::string(src_.text().substr(begin, end - begin));

    if (!keyword("select"))
      unsupported(peek(), "only SELECT statements are supported");
    ++pos_;
    skip_select_list();
    expect_keyword("from");
    parse_from(q);
    if (keyword("where")) {
      ++pos_;
      parse_where(q);
    }
    if (keyword("group")) {
      ++pos_;
      expect_keyword("by");
      q.group_by.push_back(column_ref());
      while (symbol(",")) {
        ++pos_;
        q.group_by.push_back(column_ref());
      }
    }
    if (!at_end()) {
      if (keyword("order") || keyword("having") || keyword("limit") || keyword("union") ||
          keyword("intersect") || keyword("except"))
        unsupported(peek(), "unsupported clause " + peek().text);
      syntax(peek(), "unexpected token '" + peek().text + "'");
    }
    return q;
  }

 private:
  [[nodiscard]] bool at_end() const { return pos_ >= tokens_.size(); }

  [[nodiscard]] const Token& peek() const {
    if (at_end()) {
      const auto& last = tokens_.back();
      end_token_ = Token{TokenKind::symbol, "<end of statement>", last.offset + last.text.size()};
      return end_token_;
    }
    return tokens_[pos_];
  }

  [[nodiscard]] bool keyword(std::string_view kw) const {
    return !at_end() && tokens_[pos_].kind == TokenKind::ident && !tokens_[pos_].quoted_ident &&
           lower(tokens_[pos_].text) == kw;
  }
  [[nodiscard]] bool symbol(std::string_view s) const {
    return !at_end() && tokens_[pos_].kind == TokenKind::symbol && tokens_[pos_].text == s;
  }

  [[noreturn]] void syntax(const Token& t, const std::string& msg) const {
    src_.fail(index_, t.offset, msg, false);
  }
  [[noreturn]] void unsupported(const Token& t, const std::string& msg) const {
    src_.fail(index_, t.offset, msg, true);
  }

  void expect_keyword(std::string_view kw) {
    if (!keyword(kw)) syntax(peek(), "expected " + std::string(kw) + ", got '" + peek().text + "'");
    ++pos_;
  }
  void expect_symbol(std::string_view s) {
    if (!symbol(s)) syntax(peek(), "expected '" + std::string(s) + "', got '" + peek().text + "'");
    ++pos_;
  }

  void skip_select_list() {
    int depth = 0;
    const auto start = pos_;
    while (!at_end()) {
      if (symbol("(")) ++depth;
      if (symbol(")")) --depth;
      if (depth == 0 && keyword("from")) break;
      ++pos_;
    }
    if (pos_ == start) syntax(peek(), "empty select list");
  }

  void parse_from(Query& q) {
    for (;;) {
      const auto& t = peek();
      if (symbol("(")) unsupported(t, "subqueries are not supported");
      if (at_end() || t.kind != TokenKind::ident || (!t.quoted_ident && is_reserved(t.text)))
        syntax(t, "expected a table name, got '" + t.text + "'");
      const std::string table = t.text;
      ++pos_;
      std::string alias;
      if (keyword("as")) {
        ++pos_;
        if (at_end() || peek().kind != TokenKind::ident) syntax(peek(), "expected an alias");
        alias = peek().text;
        ++pos_;
      } else if (!at_end() && peek().kind == TokenKind::ident &&
                 (peek().quoted_ident || !is_reserved(peek().text))) {
        alias = peek().text;
        ++pos_;
      }
      if (std::find(q.tables.begin(), q.tables.end(), table) == q.tables.end())
        q.tables.push_back(table);
      qualifiers_[lower(table)] = table;
      if (!alias.empty()) qualifiers_[lower(alias)] = table;

      if (keyword("join") || keyword("inner") || keyword("left") || keyword("right") ||
          keyword("cross") || keyword("full") || keyword("natural"))
        unsupported(peek(), "explicit JOIN syntax is not supported");
      if (!symbol(",")) break;
      ++pos_;
    }
  }

  void parse_where(Query& q) {
    q.predicates.push_back(predicate());
    for (;;) {
      if (keyword("and")) {
        ++pos_;
        q.predicates.push_back(predicate());
      } else if (keyword("or")) {
        unsupported(peek(), "disjunctions are not supported");
      } else {
        break;
      }
    }
  }

  struct Operand {
    std::optional<QualifiedAttribute> column;
    std::optional<Literal> literal;
  };

  Operand operand() {
    const auto& t = peek();
    if (at_end()) syntax(t, "expected an operand");
    if (symbol("(")) unsupported(t, "nested predicates are not supported");
    if (keyword("not") || keyword("exists")) unsupported(t, "negated predicates are not supported");
    if (t.kind == TokenKind::string) {
      ++pos_;
      return {std::nullopt, Literal{t.text, true}};
    }
    if (t.kind == TokenKind::number) {
      ++pos_;
      return {std::nullopt, Literal{t.text, false}};
    }
    if (symbol("-") || symbol("+")) {
      const auto sign = t.text;
      ++pos_;
      if (at_end() || peek().kind != TokenKind::number) syntax(peek(), "expected a number");
      auto value = (sign == "-" ? "-" : "") + peek().text;
      ++pos_;
      return {std::nullopt, Literal{value, false}};
    }
    if (keyword("date") && pos_ + 1 < tokens_.size() &&
        tokens_[pos_ + 1].kind == TokenKind::string) {
      ++pos_;
      const auto value = peek().text;
      ++pos_;
      return {std::nullopt, Literal{value, true}};
    }
    if (t.kind == TokenKind::ident) return {column_ref(), std::nullopt};
    syntax(t, "unexpected token '" + t.text + "'");
  }

  QualifiedAttribute column_ref() {
    const auto& first = peek();
    if (at_end() || first.kind != TokenKind::ident || (!first.quoted_ident && is_reserved(first.text)))
      syntax(first, "expected a column reference, got '" + first.text + "'");
    ++pos_;
    if (!symbol(".")) return {"", first.text};
    ++pos_;
    const auto& second = peek();
    if (at_end() || second.kind != TokenKind::ident) syntax(second, "expected an attribute name");
    ++pos_;
    if (symbol("(")) unsupported(second, "function calls in predicates are not supported");
    auto it = qualifiers_.find(lower(first.text));
    if (it == qualifiers_.end()) syntax(first, "unknown table or alias '" + first.text + "'");
    return {it->second, second.text};
  }

  std::optional<CompareOp> comparison() {
    static const std::map<std::string, CompareOp, std::less<>> ops = {
        {"=", CompareOp::eq},  {"<>", CompareOp::ne}, {"!=", CompareOp::ne},
        {"<", CompareOp::lt},  {"<=", CompareOp::le}, {">", CompareOp::gt},
        {">=", CompareOp::ge}};
    if (at_end() || peek().kind != TokenKind::symbol) return std::nullopt;
    auto it = ops.find(peek().text);
    if (it == ops.end()) return std::nullopt;
    ++pos_;
    return it->second;
  }

  static CompareOp flip(CompareOp op) {
    switch (op) {
      case CompareOp::lt: return CompareOp::gt;
      case CompareOp::le: return CompareOp::ge;
      case CompareOp::gt: return CompareOp::lt;
      case CompareOp::ge: return CompareOp::le;
      default: return op;
    }
  }

  Predicate predicate() {
    const auto& start = peek();
    auto lhs = operand();
    if (keyword("in")) {
      if (!lhs.column) syntax(start, "IN requires a column on the left");
      ++pos_;
      if (symbol("(") && pos_ + 1 < tokens_.size() && tokens_[pos_ + 1].kind == TokenKind::ident &&
          lower(tokens_[pos_ + 1].text) == "select")
        unsupported(peek(), "subqueries are not supported");
      expect_symbol("(");
      Predicate p{PredicateKind::restriction, *lhs.column, {}, CompareOp::in, {}};
      for (;;) {
        auto v = operand();
        if (!v.literal) syntax(start, "IN list must contain literals");
        p.values.push_back(*v.literal);
        if (!symbol(",")) break;
        ++pos_;
      }
      expect_symbol(")");
      return p;
    }
    if (keyword("between") || keyword("like") || keyword("is") || keyword("not"))
      unsupported(peek(), "unsupported predicate " + peek().text);
    const auto op_token = peek();
    auto op = comparison();
    if (!op) syntax(op_token, "expected a comparison operator, got '" + op_token.text + "'");
    auto rhs = operand();

    if (lhs.column && rhs.column) {
      if (*op != CompareOp::eq) unsupported(op_token, "non-equality joins are not supported");
      return {PredicateKind::join, *lhs.column, *rhs.column, CompareOp::eq, {}};
    }
    if (lhs.column && rhs.literal)
      return {PredicateKind::restriction, *lhs.column, {}, *op, {*rhs.literal}};
    if (lhs.literal && rhs.column)
      return {PredicateKind::restriction, *rhs.column, {}, flip(*op), {*lhs.literal}};
    unsupported(start, "constant predicates are not supported");
  }

  const SourceMap& src_;
  const std::vector<Token>& tokens_;
  std::size_t index_;
  std::size_t pos_ = 0;
  std::map<std::string, std::string> qualifiers_;
  mutable Token end_token_{TokenKind::symbol, "", 0};
};

const AttributeStats* find_attribute_ci(const TableStats& t, std::string_view name) {
  if (const auto* exact = t.find_attribute(name)) return exact;
  const auto key = lower(name);
  for (const auto& a : t.attributes)
    if (lower(a.name) == key) return &a;
  return nullptr;
}

std::string emit_literal(const Literal& l) {
  if (!l.is_string) return l.text;
  std::string out = "'";
  for (char c : l.text) {
    if (c == '\'') out += "''";
    else out.push_back(c);
  }
  return out + "'";
}

}  // namespace

std::string_view to_string(CompareOp op) {
  switch (op) {
    case CompareOp::eq: return "=";
    case CompareOp::ne: return "<>";
    case CompareOp::lt: return "<";
    case CompareOp::le: return "<=";
    case CompareOp::gt: return ">";
    case CompareOp::ge: return ">=";
    case CompareOp::in: return "IN";
  }
  return "?";
}

bool Query::uses_table(std::string_view table) const {
  return std::find(tables.begin(), tables.end(), table) != tables.end();
}

ParsedWorkload parse_workload(std::string_view text, const ParseOptions& options) {
  const SourceMap src(text);
  const auto statements = tokenize(src);
  ParsedWorkload out;
  for (std::size_t k = 0; k < statements.size(); ++k) {
    try {
      out.queries.push_back(StatementParser(src, statements[k], k + 1).parse());
    } catch (const ParseError& e) {
      if (!options.lenient || !e.unknown_construct()) throw;
      out.warnings.push_back({k + 1, e.what()});
    }
  }
  return out;
}

Query validate_query(const Query& query, const SchemaCatalog& cat) {
  Query out;
  out.id = query.id;
  out.text = query.text;

  std::map<std::string, std::string> canonical;  // as written -> catalog spelling
  bool has_foreign_table = false;
  for (const auto& t : query.tables) {
    const auto* table = cat.find_table_ci(t);
    canonical[t] = table ? table->name : t;
    if (!table) has_foreign_table = true;
    const auto name = table ? table->name : t;
    if (!out.uses_table(name)) out.tables.push_back(name);
  }

  // nullopt: attribute belongs to a table outside the catalog.
  auto resolve = [&](const QualifiedAttribute& qa) -> std::optional<QualifiedAttribute> {
    if (!qa.table.empty()) {
      const auto it = canonical.find(qa.table);
      if (it == canonical.end())
        throw ValidationError(query.id, "table " + qa.table + " is not in the FROM clause");
      const auto* table = cat.find_table(it->second);
      if (!table) return std::nullopt;
      const auto* attr = find_attribute_ci(*table, qa.attribute);
      if (!attr)
        throw ValidationError(query.id, "unknown attribute " + table->name + "." + qa.attribute);
      return QualifiedAttribute{table->name, attr->name};
    }
    std::vector<QualifiedAttribute> matches;
    for (const auto& name : out.tables) {
      const auto* table = cat.find_table(name);
      if (!table) continue;
      if (const auto* attr = find_attribute_ci(*table, qa.attribute))
        matches.push_back({table->name, attr->name});
    }
    if (matches.size() > 1)
      throw ValidationError(query.id, "ambiguous attribute " + qa.attribute);
    if (matches.empty()) {
      if (has_foreign_table) return std::nullopt;
      throw ValidationError(query.id, "unknown attribute " + qa.attribute);
    }
    return matches.front();
  };

  for (const auto& p : query.predicates) {
    if (p.kind == PredicateKind::join) {
      auto l = resolve(p.left);
      auto r = resolve(p.right);
      if (!l || !r) continue;
      if (cat.is_fact(r->table) && !cat.is_fact(l->table)) std::swap(l, r);
      const auto fk = cat.foreign_keys.find(l->attribute);
      const bool star_join = cat.is_fact(l->table) && fk != cat.foreign_keys.end() &&
                             fk->second.dimension == r->table &&
                             fk->second.attribute == r->attribute;
      if (!star_join)
        throw ValidationError(query.id, "join " + l->str() + " = " + r->str() +
                                            " is not a fact foreign key to dimension primary key");
      Predicate j{PredicateKind::join, *l, *r, CompareOp::eq, {}};
      if (std::find(out.predicates.begin(), out.predicates.end(), j) == out.predicates.end())
        out.predicates.push_back(std::move(j));
    } else {
      auto l = resolve(p.left);
      if (!l) continue;
      Predicate r = p;
      r.left = *l;
      out.predicates.push_back(std::move(r));
    }
  }
  for (const auto& g : query.group_by)
    if (auto r = resolve(g)) out.group_by.push_back(*r);
  return out;
}

ParsedWorkload load_workload(std::string_view text, const SchemaCatalog& cat,
                             const ParseOptions& options) {
  auto parsed = parse_workload(text, options);
  ParsedWorkload out;
  out.warnings = std::move(parsed.warnings);
  for (const auto& q : parsed.queries) {
    try {
      out.queries.push_back(validate_query(q, cat));
    } catch (const ValidationError& e) {
      if (!options.lenient) throw;
      out.warnings.push_back({static_cast<std::size_t>(q.id), e.what()});
    }
  }
  std::sort(out.warnings.begin(), out.warnings.end(),
            [](const ParseWarning& a, const ParseWarning& b) { return a.statement < b.statement; });
  return out;
}

std::set<QualifiedAttribute> extract_indexable_attributes(const Query& query,
                                                          const SchemaCatalog& cat,
                                                          const ExtractOptions& options) {
  std::set<QualifiedAttribute> attrs;
  auto add = [&](const QualifiedAttribute& qa) {
    if (!qa.table.empty() && cat.find_table(qa.table)) attrs.insert(qa);
  };
  for (const auto& p : query.predicates) {
    if (p.kind == PredicateKind::join) {
      if (options.include_join_keys) {
        add(p.left);
        add(p.right);
      }
    } else {
      add(p.left);
    }
  }
  for (const auto& g : query.group_by) add(g);
  return attrs;
}

std::string to_sql(const Query& query) {
  std::string sql = "SELECT * FROM ";
  for (std::size_t k = 0; k < query.tables.size(); ++k) {
    if (k) sql += ", ";
    sql += query.tables[k];
  }
  for (std::size_t k = 0; k < query.predicates.size(); ++k) {
    const auto& p = query.predicates[k];
    sql += k == 0 ? " WHERE " : " AND ";
    sql += p.left.str();
    if (p.kind == PredicateKind::join) {
      sql += " = " + p.right.str();
    } else if (p.op == CompareOp::in) {
      sql += " IN (";
      for (std::size_t v = 0; v < p.values.size(); ++v) {
        if (v) sql += ", ";
        sql += emit_literal(p.values[v]);
      }
      sql += ")";
    } else {
      sql += " ";
      sql += to_string(p.op);
      sql += " " + emit_literal(p.values.front());
    }
  }
  for (std::size_t k = 0; k < query.group_by.size(); ++k) {
    sql += k == 0 ? " GROUP BY " : ", ";
    sql += query.group_by[k].str();
  }
  return sql + ";";
}

}  // namespace bji
