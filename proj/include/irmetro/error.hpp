#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace irmetro {

enum class ErrorKind {
  parse,
  invariant,
  ir_id_conflict,
  key_collision,
  empty_hypergraph,
  config,
};

/// Stable kebab-case code used in diagnostics, e.g. "parse-error".
std::string_view error_code(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view code() const { return error_code(kind_); }

 private:
  ErrorKind kind_;
};

}  // namespace irmetro
