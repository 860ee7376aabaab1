#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bji {

/// Process exit codes used by the `bji` tool.
enum class ExitCode : int {
  ok = 0,
  failure = 1,
  usage = 2,
  parse = 3,
  catalog = 4,
};

/// Base class for every error the advisor reports. Carries the exit code the
/// CLI should terminate with and the module that raised it.
class Error : public std::runtime_error {
 public:
  Error(ExitCode code, std::string module, const std::string& message)
      : std::runtime_error("[" + module + "] " + message),
        code_(code),
        module_(std::move(module)) {}

  [[nodiscard]] ExitCode code() const noexcept { return code_; }
  [[nodiscard]] const std::string& module() const noexcept { return module_; }

 private:
  ExitCode code_;
  std::string module_;
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& message)
      : Error(ExitCode::usage, "cli", message) {}
};

class CatalogError : public Error {
 public:
  explicit CatalogError(const std::string& message)
      : Error(ExitCode::catalog, "catalog", message) {}
};

/// Malformed catalog file (JSON syntax or wrong field types).
class CatalogParseError : public Error {
 public:
  explicit CatalogParseError(const std::string& message)
      : Error(ExitCode::parse, "catalog", message) {}
};

/// Workload syntax error or unsupported construct. `statement` is 1-based;
/// `offset` is the byte offset into the workload text.
class ParseError : public Error {
 public:
  ParseError(std::size_t statement, std::size_t offset, std::size_t line,
             std::size_t column, const std::string& message,
             bool unknown_construct)
      : Error(ExitCode::parse, "sqlparse",
              "statement " + std::to_string(statement) + " (line " +
                  std::to_string(line) + ", column " + std::to_string(column) +
                  ", offset " + std::to_string(offset) + "): " + message),
        statement_(statement),
        offset_(offset),
        unknown_construct_(unknown_construct) {}

  [[nodiscard]] std::size_t statement() const noexcept { return statement_; }
  [[nodiscard]] std::size_t offset() const noexcept { return offset_; }
  [[nodiscard]] bool unknown_construct() const noexcept {
    return unknown_construct_;
  }

 private:
  std::size_t statement_;
  std::size_t offset_;
  bool unknown_construct_;
};

/// A parsed query that cannot be resolved against the catalog.
class ValidationError : public Error {
 public:
  ValidationError(int query_id, const std::string& message)
      : Error(ExitCode::parse, "sqlparse",
              "query " + std::to_string(query_id) + ": " + message),
        query_id_(query_id) {}

  [[nodiscard]] int query_id() const noexcept { return query_id_; }

 private:
  int query_id_;
};

}  // namespace bji
