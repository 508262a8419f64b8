#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mislab {

/// Invalid generator or solver parameters.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed input text. `line()` is 1-based; 0 when no line applies.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A caller broke an operation's precondition (e.g. non-maximal input to a
/// 2-improvement pass, multi-vertex step passed to natural replay).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A vertex set that is not independent, or inconsistent with its graph.
class InvalidSolution : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mislab
