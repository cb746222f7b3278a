#include "irmetro/error.hpp"

namespace irmetro {

std::string_view error_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::parse:
      return "parse-error";
    case ErrorKind::invariant:
      return "invariant-error";
    case ErrorKind::ir_id_conflict:
      return "ir-id-conflict";
    case ErrorKind::key_collision:
      return "key-collision";
    case ErrorKind::empty_hypergraph:
      return "empty-hypergraph";
    case ErrorKind::config:
      return "config-error";
  }
  return "error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(error_code(kind)) + ": " + message),
      kind_(kind) {}

}  // namespace irmetro
