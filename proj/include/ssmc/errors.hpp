#pragma once

#include <stdexcept>
#include <string>

namespace ssmc {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad data handed in by a caller or a file (out-of-range vertex, empty
// clause, header mismatch, ...).
struct MalformedInputError : Error {
  using Error::Error;
};

// A documented precondition of an operation was violated by the caller.
struct ContractError : Error {
  using Error::Error;
};

// An internal invariant failed; indicates a bug, never a bad input.
struct InternalError : Error {
  using Error::Error;
};

// Parse failure carrying the source location.
struct ParseError : Error {
  ParseError(const std::string& source, int line, const std::string& message)
      : Error(source + ":" + std::to_string(line) + ": " + message),
        line_number(line) {}
  int line_number;
};

// A brute-force routine refused an input beyond its hard budget.
struct BudgetError : Error {
  using Error::Error;
};

inline void internal_check(bool ok, const char* message) {
  if (!ok) throw InternalError(message);
}

}  // namespace ssmc
