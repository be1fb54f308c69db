#pragma once

#include "triloop/loop.hpp"

#include <string>

namespace triloop {

// Parses the loop surface syntax:
//
//   vars: x y
//   guard: x > 0 && y >= 1
//   update:
//   x := x + y
//   y := y - 1
//
// Guard atoms are strict or non-strict comparisons of affine expressions
// with rational coefficients; each atom is stored as expr > 0 with integer
// coefficients (denominators cleared per atom, non-strict atoms tightened
// by one since states are integral).  Update right-hand sides must have
// integer coefficients, and every declared variable gets exactly one
// assignment; all assignments apply simultaneously.
Loop parse_loop(const std::string& text);

// Canonical rendering in the same syntax; parse_loop(print_loop(l)) == l
// for any loop produced by parse_loop.
std::string print_loop(const Loop& loop);

} // namespace triloop
