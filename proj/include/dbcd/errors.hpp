// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace dbcd {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Argument outside an operation's stated domain.
struct ParameterError : Error {
  using Error::Error;
};

// Node count incompatible with the block count.
struct PartitionError : Error {
  using Error::Error;
};

// Torus width does not divide the node count, or a malformed ring.
struct TopologyError : Error {
  using Error::Error;
};

// Nonpositive quadratic coefficient handed to a 1-D prox solve.
struct CurvatureError : Error {
  using Error::Error;
};

// Exhaustive enumeration would exceed the configured outcome budget.
struct BudgetError : Error {
  using Error::Error;
};

// No strong convexity available where a linear-rate bound needs it.
struct StrongConvexityError : Error {
  using Error::Error;
};

// Objective became non-finite during a run.
struct DivergenceError : Error {
  using Error::Error;
};

// Internal bookkeeping violated (history ring underflow, residual drift
// beyond repair tolerance).
struct InvariantError : Error {
  using Error::Error;
};

// Malformed instance file; carries a 1-based line number when known.
struct ParseError : Error {
  ParseError(const std::string& message, long line_number = 0)
      : Error(line_number > 0
                  ? message + " (line " + std::to_string(line_number) + ")"
                  : message),
        line(line_number) {}
  long line;
};

}  // namespace dbcd
