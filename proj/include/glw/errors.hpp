#pragma once

#include <stdexcept>
#include <string>

namespace glw {

// Malformed input text. Carries 1-based line/column of the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line, int col)
      : std::runtime_error("line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + msg),
        line_(line), col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

// Structurally valid input that violates a semantic precondition
// (non-prime field, dimension mismatch, filter fails a required axiom, ...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An enumeration (morphisms, fiber vectors, lattice ideals, census candidates)
// would exceed the configured cap. Never silently truncated.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computed value violated one of its structural postconditions.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace glw
