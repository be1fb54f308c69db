#pragma once

#include "triloop/loop.hpp"
#include "triloop/omega.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace triloop {

struct DecideOptions {
  std::uint64_t horizon = 10000;         // simulation scan for the witness prefix
  std::optional<std::string> solver_cmd; // external SMT cross-check, optional
  SolveOptions solver{};
};

struct Verdict {
  bool terminates;
  // Meaningful iff !terminates: a state, in the order the user declared
  // the variables, from which the loop eventually runs forever.
  std::vector<Int> witness;
  // Heuristic: first simulated index after which the guard held through
  // the whole horizon.  Absent when the scan was inconclusive.
  std::optional<std::uint64_t> eventual_prefix;
};

// Full decision pipeline: triangularize, chain, closed forms, normalized
// guard expressions, positivity formula, integer satisfiability.  The loop
// terminates on every integer initial state iff the formula has no model;
// a model, mapped back through the triangularization permutation, is an
// eventual-non-termination witness.  When an external solver command is
// given, it must agree with the built-in one on satisfiability —
// disagreement raises SolverBackendError.
Verdict decide_termination(const Loop& presented, const DecideOptions& opts = {});

} // namespace triloop
