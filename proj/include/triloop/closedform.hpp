#pragma once

#include "triloop/loop.hpp"
#include "triloop/polyexp.hpp"
#include "triloop/polynomial.hpp"

#include <vector>

namespace triloop {

// Unique polynomial r with q(n) = r(n) - c*r(n-1), for c > 0.  Recursion on
// the degree of q; the degree of each remainder strictly decreases (checked,
// violation is an internal error).
Polynomial solve_difference(const Polynomial& q, const Rational& c);

// Closed form of the inhomogeneous part of one recurrence step:
//   sum_{i=1..n} m^(n-i) * p(i-1)
// as a poly-exponential expression, for m >= 0 and p poly-exponential.
// Every addend of p is summed separately: for m = 0 only the final summand
// survives; an addend live at exactly one step contributes one exponential
// term; unconditionally live addends split into an explicit prefix plus a
// tail folded through solve_difference.
PolyExp symbolic_sum(const Int& m, const PolyExp& p);

// Closed form of x(n) for the single recurrence x(n) = m*x(n-1) + p(n-1):
// m^n * x(0) plus the symbolic sum of the inhomogeneous part.
PolyExp closed_form_var(VarId x, const Int& m, const PolyExp& p);

// Componentwise exact closed form of a lower-triangular loop with
// nonnegative diagonal: result[i] evaluated at (n, initial state) equals
// component i of the n-th iterate of the update.
std::vector<PolyExp> closed_form(const Loop& nnt);

// Keeps only the addends that stay live for all large n and drops their
// conditions; agrees with the input for every n > input.max_constant().
NormPolyExp normalize(const PolyExp& q);

} // namespace triloop
