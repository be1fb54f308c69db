#pragma once

#include "triloop/loop.hpp"
#include "triloop/polyexp.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace triloop {

// A poly-exponential addend viewed as a coefficient alpha marked with its
// growth key (base, power); keys are compared lexicographically, and the
// largest key present dominates the expression as n grows.
using MarkedCoeff = NormTerm;

// true iff a's growth key (base, power) strictly dominates b's.
bool dominates(const MarkedCoeff& a, const MarkedCoeff& b);

// The coefficients of p in strictly descending dominance order.  The zero
// expression yields the single coefficient 0 with key (1, 0), so callers
// always see at least one entry.
std::vector<MarkedCoeff> marked_coeffs(const NormPolyExp& p);

// Sign of p(n) for all large n; requires every alpha to be constant.
int sign_at_infinity(const NormPolyExp& p);

enum class ConstraintKind { GreaterZero, EqualZero };

struct LinConstraint {
  AffineExpr expr;
  ConstraintKind kind;

  bool holds(const std::vector<Rational>& state) const {
    Rational v = expr.eval(state);
    return kind == ConstraintKind::GreaterZero ? v > 0 : v == 0;
  }

  friend bool operator==(const LinConstraint&, const LinConstraint&) = default;
};

using Conjunction = std::vector<LinConstraint>;
using Disjunction = std::vector<Conjunction>;

// Conjunction (over guard atoms) of disjunctions of conjunctions of linear
// constraints over the initial state.  dim is the size of the variable
// space; an empty conjunct list is the true formula.
struct LiaFormula {
  std::size_t dim{0};
  std::vector<Disjunction> conjuncts;

  bool holds(const std::vector<Rational>& state) const {
    for (const auto& disj : conjuncts) {
      bool any = false;
      for (const auto& conj : disj) {
        bool all = true;
        for (const auto& c : conj)
          if (!c.holds(state)) {
            all = false;
            break;
          }
        if (all) {
          any = true;
          break;
        }
      }
      if (!any) return false;
    }
    return true;
  }
};

// QF-LIA characterization of "p(n) > 0 for all large n": some coefficient
// is positive while every more dominant one vanishes.
Disjunction positivity_formula(const NormPolyExp& p);

// The termination formula of a lower-triangular nonnegative-diagonal loop:
// one positivity disjunction per guard atom, each over the atom's
// closed form with conditions normalized away.  Its models are exactly the
// initial states from which the guard eventually holds forever.
LiaFormula build_formula(const Loop& nnt);

std::string constraint_to_string(const LinConstraint& c, const std::vector<std::string>& names);
std::string formula_to_string(const LiaFormula& f, const std::vector<std::string>& names);

} // namespace triloop
