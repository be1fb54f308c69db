#include "triloop/formula.hpp"

#include "triloop/closedform.hpp"
#include "triloop/errors.hpp"

#include <sstream>

namespace triloop {

bool dominates(const MarkedCoeff& a, const MarkedCoeff& b) {
  if (a.base != b.base) return a.base > b.base;
  return a.power > b.power;
}

std::vector<MarkedCoeff> marked_coeffs(const NormPolyExp& p) {
  if (p.is_zero())
    return {MarkedCoeff{AffineExpr(Rational(0)), 0, Int(1)}};
  // Terms are already stored in descending dominance order.
  return p.terms();
}

int sign_at_infinity(const NormPolyExp& p) {
  for (const auto& t : p.terms())
    if (!t.alpha.is_constant())
      throw InternalError("asymptotic sign of an open expression");
  if (p.is_zero()) return 0;
  return sign_of(p.terms().front().alpha.constant());
}

Disjunction positivity_formula(const NormPolyExp& p) {
  auto coeffs = marked_coeffs(p);
  Disjunction out;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    Conjunction c;
    c.push_back(LinConstraint{coeffs[j].alpha, ConstraintKind::GreaterZero});
    // All more dominant coefficients must vanish, most dominant last.
    for (std::size_t i = j; i-- > 0;)
      c.push_back(LinConstraint{coeffs[i].alpha, ConstraintKind::EqualZero});
    out.push_back(std::move(c));
  }
  return out;
}

LiaFormula build_formula(const Loop& nnt) {
  auto q = closed_form(nnt);
  std::vector<NormPolyExp> qn;
  qn.reserve(q.size());
  for (const auto& qi : q) qn.push_back(normalize(qi));

  LiaFormula f;
  f.dim = nnt.dim();
  for (const auto& atom : nnt.guard.atoms) {
    // The atom's value n steps in, as a function of the initial state.
    NormPolyExp patom;
    if (atom.constant() != 0)
      patom.add_term(NormTerm{AffineExpr(atom.constant()), 0, Int(1)});
    for (const auto& [v, c] : atom.coeffs()) patom += qn[v.index].scaled(c);
    f.conjuncts.push_back(positivity_formula(patom));
  }
  return f;
}

std::string constraint_to_string(const LinConstraint& c,
                                 const std::vector<std::string>& names) {
  return c.expr.to_string(names) +
         (c.kind == ConstraintKind::GreaterZero ? " > 0" : " = 0");
}

std::string formula_to_string(const LiaFormula& f, const std::vector<std::string>& names) {
  if (f.conjuncts.empty()) return "true";
  std::ostringstream out;
  for (std::size_t i = 0; i < f.conjuncts.size(); ++i) {
    if (i > 0) out << "\n&&\n";
    const auto& disj = f.conjuncts[i];
    if (disj.empty()) {
      out << "false";
      continue;
    }
    for (std::size_t j = 0; j < disj.size(); ++j) {
      if (j > 0) out << " || ";
      out << "(";
      for (std::size_t k = 0; k < disj[j].size(); ++k) {
        if (k > 0) out << " && ";
        out << constraint_to_string(disj[j][k], names);
      }
      out << ")";
    }
  }
  return out.str();
}

} // namespace triloop
