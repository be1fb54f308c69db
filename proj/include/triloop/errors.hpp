#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace triloop {

// Input could not be parsed; position is 1-based.
class ParseError : public std::runtime_error {
public:
  ParseError(std::string msg, std::size_t line, std::size_t col)
      : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                           std::to_string(col) + ": " + msg),
        line_(line), col_(col) {}

  std::size_t line() const { return line_; }
  std::size_t col() const { return col_; }

private:
  std::size_t line_;
  std::size_t col_;
};

// The update matrix cannot be reordered into triangular form; carries one
// dependency cycle as evidence.
class NotTriangularizableError : public std::runtime_error {
public:
  explicit NotTriangularizableError(std::vector<std::string> cycle)
      : std::runtime_error("update matrix is not triangularizable; dependency cycle: " +
                           join(cycle)),
        cycle_(std::move(cycle)) {}

  const std::vector<std::string>& cycle() const { return cycle_; }

private:
  static std::string join(const std::vector<std::string>& cycle) {
    std::string s;
    for (const auto& v : cycle) {
      if (!s.empty()) s += " -> ";
      s += v;
    }
    if (!cycle.empty()) s += " -> " + cycle.front();
    return s;
  }

  std::vector<std::string> cycle_;
};

class MissingVariableError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatchError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Configured step budget exhausted (not reachable on desk-scale inputs).
class ResourceLimitError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// External SMT process failed, produced garbage, or contradicted the
// built-in solver.
class SolverBackendError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A checked internal invariant failed; always a bug, never an input error.
class InternalError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

} // namespace triloop
