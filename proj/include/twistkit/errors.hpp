#pragma once

#include <stdexcept>
#include <string>

namespace twistkit {

// Input violates an operation's contract (wrong region class, bad move, ...).
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A move that is not available in the given tiling.
struct MoveError : DomainError {
  using DomainError::DomainError;
};

// A configured resource cap (enumeration count, component cap, ...) was hit.
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input text; carries 1-based line/column when known.
struct ParseError : std::runtime_error {
  int line = 0;
  int col = 0;
  ParseError(const std::string& msg, int line_ = 0, int col_ = 0)
      : std::runtime_error(line_ ? msg + " (line " + std::to_string(line_) +
                                       ", col " + std::to_string(col_) + ")"
                                 : msg),
        line(line_),
        col(col_) {}
};

// A proven invariant failed at runtime; always a bug, never user error.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace twistkit
