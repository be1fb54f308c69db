#pragma once

#include "triloop/formula.hpp"

#include <map>
#include <string>
#include <vector>

namespace triloop {

// Byte-deterministic QF_LIA script for the formula: set-logic, one
// declare-const per variable, a single assertion with all denominators
// cleared, check-sat, get-model.
std::string export_smtlib(const LiaFormula& f, const std::vector<std::string>& names);

enum class ExtStatus { Sat, Unsat };

struct ExtResult {
  ExtStatus status;
  std::map<std::string, Int> model; // possibly partial; absent means free
};

// Interprets a solver's stdout: first "sat"/"unsat" token decides the
// status; on sat, model bindings are read from both common shapes,
// (define-fun v () Int k) and ((v k)), with negative literals as (- k).
// Anything else (including "unknown") is a SolverBackendError.
ExtResult parse_solver_reply(const std::string& text);

// Writes the script to a temp file, runs "cmd <file>", parses the reply.
ExtResult run_external_solver(const std::string& cmd, const std::string& script);

} // namespace triloop
