#include "triloop/chain.hpp"

#include "triloop/errors.hpp"

namespace triloop {

Loop chain(const Loop& triangular) {
  if (!triangular.lower_triangular())
    throw InternalError("chain expects a lower-triangular update matrix");
  std::size_t d = triangular.dim();

  Loop out;
  out.var_names = triangular.var_names;

  // Images of the variables after one step, for substitution into atoms.
  std::vector<AffineExpr> step(d);
  for (std::size_t i = 0; i < d; ++i) {
    AffineExpr e(Rational(triangular.offset[i]));
    for (std::size_t j = 0; j < d; ++j)
      e.add_term(VarId{j}, Rational(triangular.update[i][j]));
    step[i] = e;
  }

  out.guard.atoms = triangular.guard.atoms;
  for (const auto& atom : triangular.guard.atoms)
    out.guard.atoms.push_back(atom.substitute(step));

  out.update.assign(d, std::vector<Int>(d, Int(0)));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Int acc = 0;
      for (std::size_t k = 0; k < d; ++k) acc += triangular.update[i][k] * triangular.update[k][j];
      out.update[i][j] = acc;
    }

  out.offset.assign(d, Int(0));
  for (std::size_t i = 0; i < d; ++i) {
    Int acc = triangular.offset[i];
    for (std::size_t k = 0; k < d; ++k) acc += triangular.update[i][k] * triangular.offset[k];
    out.offset[i] = acc;
  }

  if (!out.nonnegative_diagonal())
    throw InternalError("chained triangular matrix must have a nonnegative diagonal");
  return out;
}

} // namespace triloop
