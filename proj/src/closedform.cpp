#include "triloop/closedform.hpp"

#include "triloop/errors.hpp"

namespace triloop {

namespace {

// (n-1)^a as a polynomial in n.
Polynomial n_minus_one_pow(std::uint64_t a) {
  return Polynomial::monomial(Rational(1), a).shifted_arg(Rational(-1));
}

// Sums one addend  cond * alpha * n^a * b^n  of p against factor m.
void sum_addend(const Int& m, const PeTerm& t, PolyExp& out) {
  const std::uint64_t a = t.power;
  const Int& b = t.base;

  if (m == 0) {
    // 0^(n-i) kills every summand but i = n, leaving p's addend one step
    // back, live only once n > 0.
    auto cond = t.cond.shifted_up().conjoin(CondConj::neq(0));
    if (!cond) throw InternalError("shifted step condition cannot be contradictory");
    // alpha * (n-1)^a * b^(n-1), with (n-1)^a expanded binomially.
    Polynomial poly = n_minus_one_pow(a);
    for (std::size_t k = 0; k < poly.coeffs().size(); ++k) {
      if (poly.coeffs()[k] == 0) continue;
      out.add_term(PeTerm{*cond, t.alpha * (poly.coeffs()[k] / Rational(b)), k, b});
    }
    return;
  }

  if (t.cond.equals()) {
    // The addend is live at exactly one step c, contributing once i-1 = c
    // enters the summation range, i.e. for n > c.
    std::uint64_t c = *t.cond.equals();
    Rational scale = Rational(int_pow(Int(c), a)) * Rational(int_pow(b, c)) /
                     Rational(int_pow(m, c + 1));
    out.add_term(PeTerm{CondConj::greater(c), t.alpha * scale, 0, m});
    return;
  }

  // Exclusion-only condition: split at its largest constant cmax.  Summands
  // with i-1 <= cmax are finitely many and written out; the tail from
  // i = cmax+2 on is geometric-polynomial and folds through the difference
  // solver at ratio m/b.
  std::int64_t cmax = t.cond.max_constant(); // -1 when the condition is true
  for (std::int64_t i = 1; i <= cmax + 1; ++i) {
    if (!t.cond.holds_at(static_cast<std::uint64_t>(i - 1))) continue;
    Rational scale = Rational(int_pow(Int(i - 1), a)) * Rational(int_pow(b, i - 1)) /
                     Rational(int_pow(m, i));
    out.add_term(PeTerm{CondConj::greater(static_cast<std::uint64_t>(i - 1)),
                        t.alpha * scale, 0, m});
  }

  std::uint64_t split = static_cast<std::uint64_t>(cmax + 1);
  Polynomial r = solve_difference(n_minus_one_pow(a), Rational(m, b));
  CondConj tail = CondConj::greater(split);
  // (alpha/b) * r(n) * b^n ...
  for (std::size_t k = 0; k < r.coeffs().size(); ++k) {
    if (r.coeffs()[k] == 0) continue;
    out.add_term(PeTerm{tail, t.alpha * (r.coeffs()[k] / Rational(b)), k, b});
  }
  // ... minus the telescoping anchor (alpha/b) * r(split) * (b/m)^split * m^n.
  Rational anchor = r.eval(Rational(split)) * rat_pow(Rational(b, m), split) / Rational(b);
  out.add_term(PeTerm{tail, t.alpha * (-anchor), 0, m});
}

} // namespace

Polynomial solve_difference(const Polynomial& q, const Rational& c) {
  if (c <= 0) throw InternalError("difference solver needs a positive factor");
  if (q.is_zero()) return Polynomial{};
  std::size_t d = q.degree();
  if (d == 0) {
    if (c == 1) return Polynomial::monomial(q.coeff(0), 1);
    return Polynomial::constant(q.coeff(0) / (Rational(1) - c));
  }
  Polynomial s = (c == 1)
                     ? Polynomial::monomial(q.leading() / Rational(Int(d + 1)), d + 1)
                     : Polynomial::monomial(q.leading() / (Rational(1) - c), d);
  Polynomial rest = q - s + s.shifted_arg(Rational(-1)) * c;
  if (!rest.is_zero() && rest.degree() >= d)
    throw InternalError("difference solver: remainder degree did not decrease");
  return s + solve_difference(rest, c);
}

PolyExp symbolic_sum(const Int& m, const PolyExp& p) {
  if (m < 0) throw InternalError("symbolic sum needs a nonnegative factor");
  PolyExp out;
  for (const auto& t : p.terms()) sum_addend(m, t, out);
  return out;
}

PolyExp closed_form_var(VarId x, const Int& m, const PolyExp& p) {
  if (m < 0) throw InternalError("closed form needs a nonnegative diagonal entry");
  PolyExp q;
  if (m == 0) {
    // x survives only at step 0; afterwards the recurrence forgets it.
    q.add_term(PeTerm{CondConj::eq(0), AffineExpr::variable(x), 0, Int(1)});
  } else {
    q.add_term(PeTerm{CondConj{}, AffineExpr::variable(x), 0, m});
  }
  return q + symbolic_sum(m, p);
}

std::vector<PolyExp> closed_form(const Loop& nnt) {
  if (!nnt.lower_triangular())
    throw InternalError("closed form expects a lower-triangular update matrix");
  if (!nnt.nonnegative_diagonal())
    throw InternalError("closed form expects a nonnegative diagonal");

  std::size_t d = nnt.dim();
  // inhom[i] starts as the constant offset and absorbs the closed forms of
  // the earlier variables that i reads.
  std::vector<PolyExp> inhom(d);
  for (std::size_t i = 0; i < d; ++i)
    inhom[i] = PolyExp(AffineExpr(Rational(nnt.offset[i])));

  std::vector<PolyExp> q(d);
  for (std::size_t i = 0; i < d; ++i) {
    q[i] = closed_form_var(VarId{i}, nnt.update[i][i], inhom[i]);
    for (std::size_t j = i + 1; j < d; ++j)
      if (nnt.update[j][i] != 0) inhom[j] += q[i].scaled(Rational(nnt.update[j][i]));
  }
  return q;
}

NormPolyExp normalize(const PolyExp& q) {
  NormPolyExp out;
  for (const auto& t : q.terms()) {
    // Addends pinned to a single step vanish for all large n.
    if (t.cond.equals()) continue;
    out.add_term(NormTerm{t.alpha, t.power, t.base});
  }
  return out;
}

} // namespace triloop
