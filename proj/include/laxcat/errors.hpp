#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace laxcat {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Syntax error with source position (1-based line/column).
struct ParseError : Error {
  ParseError(std::size_t line, std::size_t col, const std::string& what)
      : Error("parse error at " + std::to_string(line) + ":" + std::to_string(col) + ": " + what),
        line(line),
        col(col) {}
  std::size_t line, col;
};

// Undeclared generator or duplicate name.
struct NameError : Error {
  using Error::Error;
};

// Composition or relation boundary mismatch; `path` locates the offending
// subterm (dot-separated argument positions from the root).
struct TypeError : Error {
  explicit TypeError(const std::string& what, std::string path = "")
      : Error(path.empty() ? what : what + " (at subterm " + path + ")"), path(std::move(path)) {}
  std::string path;
};

// K or Q used in a lax term, L or J in an oplax term.
struct FlavorError : Error {
  using Error::Error;
};

// Model invariant violation (construction or validation).
struct ModelError : Error {
  using Error::Error;
};

// Tabulated model queried beyond its tabulation depth.
struct DepthError : Error {
  using Error::Error;
};

}  // namespace laxcat
