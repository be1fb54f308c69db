#pragma once

#include "triloop/formula.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace triloop {

struct SolveOptions {
  // Upper bound on elimination nodes across one satisfiability query;
  // exceeded only by inputs far beyond this tool's intended scale.
  std::uint64_t step_budget = 500000;
};

// Decides one conjunction of linear constraints over dim integer variables
// with the Omega test: equalities are eliminated by unit or modular
// substitution, inequalities variable by variable through the real shadow
// (refutation), dark shadow (satisfaction), and splinter enumeration in
// between.  Returns a model (length dim, unconstrained variables 0) or
// nullopt when unsatisfiable.  Deterministic: fixed variable choice and
// smallest-first splinters.
std::optional<std::vector<Int>> solve_conjunction(const Conjunction& conj, std::size_t dim,
                                                  const SolveOptions& opts = {});

// Satisfiability of a full formula: expands the conjunction of disjunctions
// into conjunctions (pruning constant constraints first) and returns the
// model of the first satisfiable one in enumeration order.
std::optional<std::vector<Int>> solve_lia(const LiaFormula& f, const SolveOptions& opts = {});

} // namespace triloop
