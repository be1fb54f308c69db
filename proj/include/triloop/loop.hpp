#pragma once

#include "triloop/affine.hpp"
#include "triloop/rational.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace triloop {

// Conjunction of strict inequalities expr > 0.  Empty conjunction is true.
struct Guard {
  std::vector<AffineExpr> atoms;

  bool holds(const std::vector<Rational>& state) const {
    for (const auto& a : atoms)
      if (!(a.eval(state) > 0)) return false;
    return true;
  }

  friend bool operator==(const Guard&, const Guard&) = default;
};

using IntMatrix = std::vector<std::vector<Int>>;
using IntVector = std::vector<Int>;

// Single-path loop "while guard do x := update * x + offset" over integer
// states.  update is dim x dim, offset has length dim; var_names give the
// presentation order used for parsing and printing.
struct Loop {
  std::vector<std::string> var_names;
  Guard guard;
  IntMatrix update;
  IntVector offset;

  std::size_t dim() const { return var_names.size(); }

  bool lower_triangular() const {
    for (std::size_t i = 0; i < update.size(); ++i)
      for (std::size_t j = i + 1; j < update[i].size(); ++j)
        if (update[i][j] != 0) return false;
    return true;
  }

  bool nonnegative_diagonal() const {
    for (std::size_t i = 0; i < update.size(); ++i)
      if (update[i][i] < 0) return false;
    return true;
  }

  std::vector<Int> step(const std::vector<Int>& state) const {
    std::vector<Int> next(dim(), Int(0));
    for (std::size_t i = 0; i < dim(); ++i) {
      Int acc = offset[i];
      for (std::size_t j = 0; j < dim(); ++j)
        if (update[i][j] != 0) acc += update[i][j] * state[j];
      next[i] = acc;
    }
    return next;
  }

  bool guard_holds(const std::vector<Int>& state) const {
    std::vector<Rational> rstate(state.begin(), state.end());
    return guard.holds(rstate);
  }

  friend bool operator==(const Loop&, const Loop&) = default;
};

} // namespace triloop
