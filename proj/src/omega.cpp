#include "triloop/omega.hpp"

#include "triloop/errors.hpp"

#include <algorithm>
#include <map>
#include <utility>

namespace triloop {

namespace {

// Integer constraint sum(coeffs) + k  >= 0  (or == 0 when eq).
struct IC {
  std::map<std::size_t, Int> coeffs;
  Int k{0};
  bool eq{false};
};

// Affine definition var := sum(coeffs) + k recorded during elimination,
// replayed in reverse to rebuild a model over the original variables.
struct Definition {
  std::size_t var;
  std::map<std::size_t, Int> coeffs;
  Int k;
};

enum class Norm { Kept, True, False };

Int gcd_int(Int a, Int b) {
  a = abs(a);
  b = abs(b);
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Canonicalizes one constraint: drops zero coefficients, divides by the
// gcd (tightening the constant of an inequality), decides variable-free
// constraints outright.
Norm normalize(IC& c) {
  for (auto it = c.coeffs.begin(); it != c.coeffs.end();)
    it = it->second == 0 ? c.coeffs.erase(it) : std::next(it);
  if (c.coeffs.empty()) {
    bool ok = c.eq ? c.k == 0 : c.k >= 0;
    return ok ? Norm::True : Norm::False;
  }
  Int g = 0;
  for (const auto& [v, a] : c.coeffs) g = gcd_int(g, a);
  if (g > 1) {
    if (c.eq) {
      if (c.k % g != 0) return Norm::False; // no integer point on the hyperplane
      c.k /= g;
    } else {
      c.k = floor_div(c.k, g);
    }
    for (auto& [v, a] : c.coeffs) a /= g;
  }
  return Norm::Kept;
}

// sum + k after replacing var by the definition body.
void substitute(IC& c, const Definition& def) {
  auto it = c.coeffs.find(def.var);
  if (it == c.coeffs.end()) return;
  Int f = it->second;
  c.coeffs.erase(it);
  for (const auto& [v, a] : def.coeffs) {
    auto [jt, fresh] = c.coeffs.emplace(v, f * a);
    if (!fresh) jt->second += f * a;
  }
  c.k += f * def.k;
}

Int eval_definition(const Definition& def, const std::map<std::size_t, Int>& model) {
  Int acc = def.k;
  for (const auto& [v, a] : def.coeffs) {
    auto it = model.find(v);
    if (it != model.end()) acc += a * it->second; // absent vars are free, use 0
  }
  return acc;
}

// Symmetric residue in (-m/2, m/2].
Int mod_hat(const Int& v, const Int& m) {
  Int r = v % m;
  if (r < 0) r += m;
  if (2 * r > m) r -= m;
  return r;
}

class OmegaSolver {
public:
  OmegaSolver(std::size_t dim, const SolveOptions& opts)
      : next_fresh_(dim), budget_(opts.step_budget) {}

  std::optional<std::map<std::size_t, Int>> solve(std::vector<IC> cs) {
    if (budget_ == 0) throw ResourceLimitError("solver step budget exhausted");
    --budget_;

    std::vector<IC> kept;
    kept.reserve(cs.size());
    for (auto& c : cs) {
      switch (normalize(c)) {
        case Norm::True: break;
        case Norm::False: return std::nullopt;
        case Norm::Kept: kept.push_back(std::move(c)); break;
      }
    }
    if (kept.empty()) return std::map<std::size_t, Int>{};

    for (std::size_t i = 0; i < kept.size(); ++i)
      if (kept[i].eq) return eliminate_equality(std::move(kept), i);
    return eliminate_inequality(std::move(kept));
  }

private:
  std::optional<std::map<std::size_t, Int>> eliminate_equality(std::vector<IC> cs,
                                                               std::size_t at) {
    const IC& e = cs[at];
    // Variable with the smallest |coefficient|, smallest index on ties.
    std::size_t var = 0;
    Int best = 0;
    for (const auto& [v, a] : e.coeffs) {
      Int m = abs(a);
      if (best == 0 || m < best) {
        best = m;
        var = v;
      }
    }

    Definition def;
    if (best == 1) {
      // Unit coefficient: solve for var directly.
      Int s = e.coeffs.at(var); // +-1
      def.var = var;
      def.k = -s * e.k;
      for (const auto& [v, a] : e.coeffs)
        if (v != var) def.coeffs[v] = -s * a;
      cs.erase(cs.begin() + static_cast<std::ptrdiff_t>(at));
    } else {
      // Modular step: with m = |a|+1 every coefficient's symmetric residue
      // keeps var at -sign(a), so the residue equation is unit in var and
      // substituting it back shrinks the original equality's coefficients.
      Int a = e.coeffs.at(var);
      Int m = best + 1;
      Int s = a > 0 ? 1 : -1;
      std::size_t sigma = next_fresh_++;
      def.var = var;
      def.k = s * mod_hat(e.k, m);
      for (const auto& [v, c] : e.coeffs)
        if (v != var) def.coeffs[v] = s * mod_hat(c, m);
      def.coeffs[sigma] = -s * m;
    }

    for (auto& c : cs) substitute(c, def);
    auto model = solve(std::move(cs));
    if (!model) return std::nullopt;
    (*model)[def.var] = eval_definition(def, *model);
    return model;
  }

  struct Bound {
    // lower: a*var >= rhs; upper: a*var <= rhs — with a > 0 and rhs the
    // affine rest of the constraint moved across.
    Int a;
    std::map<std::size_t, Int> rhs_coeffs;
    Int rhs_k;
  };

  static Bound lower_of(const IC& c, std::size_t var) {
    // c: a*var + rest + k >= 0 with a > 0  =>  a*var >= -rest - k
    Bound b;
    b.a = c.coeffs.at(var);
    for (const auto& [v, x] : c.coeffs)
      if (v != var) b.rhs_coeffs[v] = -x;
    b.rhs_k = -c.k;
    return b;
  }

  static Bound upper_of(const IC& c, std::size_t var) {
    // c: -a*var + rest + k >= 0 with a > 0  =>  a*var <= rest + k
    Bound b;
    b.a = -c.coeffs.at(var);
    for (const auto& [v, x] : c.coeffs)
      if (v != var) b.rhs_coeffs[v] = x;
    b.rhs_k = c.k;
    return b;
  }

  // b.lo * u.rhs - u.a * b_lo.rhs >= slack  encoded back as an IC.
  static IC shadow_of(const Bound& lo, const Bound& up, const Int& slack) {
    IC c;
    for (const auto& [v, x] : up.rhs_coeffs) c.coeffs[v] = lo.a * x;
    for (const auto& [v, x] : lo.rhs_coeffs) {
      auto [it, fresh] = c.coeffs.emplace(v, -up.a * x);
      if (!fresh) it->second -= up.a * x;
    }
    c.k = lo.a * up.rhs_k - up.a * lo.rhs_k - slack;
    return c;
  }

  std::optional<std::map<std::size_t, Int>> eliminate_inequality(std::vector<IC> cs) {
    // Pick the variable to project out.
    std::map<std::size_t, std::pair<std::size_t, std::size_t>> counts; // var -> (low, up)
    for (const auto& c : cs)
      for (const auto& [v, a] : c.coeffs) {
        auto& [lo, up] = counts[v];
        (a > 0 ? lo : up)++;
      }
    std::size_t var = 0;
    bool have = false;
    bool one_sided = false;
    std::size_t best_cost = 0;
    for (const auto& [v, lu] : counts) {
      bool os = lu.first == 0 || lu.second == 0;
      std::size_t cost = lu.first * lu.second;
      if (!have || (os && !one_sided) || (os == one_sided && cost < best_cost)) {
        have = true;
        var = v;
        one_sided = os;
        best_cost = cost;
      }
    }
    if (!have) throw InternalError("inequality elimination with no variables");

    // cs stays intact: the splinter branch re-solves the full system.
    std::vector<IC> rest;
    std::vector<Bound> lowers, uppers;
    for (const auto& c : cs) {
      auto it = c.coeffs.find(var);
      if (it == c.coeffs.end()) rest.push_back(c);
      else if (it->second > 0) lowers.push_back(lower_of(c, var));
      else uppers.push_back(upper_of(c, var));
    }

    if (lowers.empty() || uppers.empty()) {
      // var is unbounded on one side: the rest decides, then clamp var to
      // the tightest bound still present.
      auto model = solve(std::move(rest));
      if (!model) return std::nullopt;
      (*model)[var] = pick_one_sided(lowers, uppers, *model);
      return model;
    }

    bool exact = true;
    for (const auto& lo : lowers)
      for (const auto& up : uppers)
        if (lo.a > 1 && up.a > 1) exact = false;

    // Real shadow: necessary condition, and exact when every pairing has a
    // unit coefficient.
    std::vector<IC> shadow = rest;
    for (const auto& lo : lowers)
      for (const auto& up : uppers) shadow.push_back(shadow_of(lo, up, Int(0)));

    if (exact) {
      auto model = solve(std::move(shadow));
      if (!model) return std::nullopt;
      (*model)[var] = pick_bounded(lowers, uppers, *model);
      return model;
    }

    if (!solve(shadow)) return std::nullopt; // no rational point at all

    // Dark shadow: sufficient condition for an integer point between the
    // bounds.
    std::vector<IC> dark = rest;
    for (const auto& lo : lowers)
      for (const auto& up : uppers)
        dark.push_back(shadow_of(lo, up, (lo.a - 1) * (up.a - 1)));
    if (auto model = solve(std::move(dark))) {
      (*model)[var] = pick_bounded(lowers, uppers, *model);
      return model;
    }

    // Between the shadows: any solution hugs some lower bound; enumerate
    // the finitely many offsets (splinters), smallest first.
    Int amax = 1;
    for (const auto& up : uppers) amax = std::max(amax, up.a);
    for (const auto& lo : lowers) {
      Int top = floor_div(amax * lo.a - amax - lo.a, amax);
      for (Int i = 0; i <= top; ++i) {
        std::vector<IC> sp = cs; // original system of this level
        IC pin;                  // lo.a * var = lo.rhs + i
        pin.eq = true;
        pin.coeffs[var] = lo.a;
        for (const auto& [v, x] : lo.rhs_coeffs) {
          auto [it, fresh] = pin.coeffs.emplace(v, -x);
          if (!fresh) it->second -= x;
        }
        pin.k = -lo.rhs_k - i;
        sp.push_back(std::move(pin));
        if (auto model = solve(std::move(sp))) return model;
      }
    }
    return std::nullopt;
  }

  // Value for a variable bounded on one side only (or not at all).
  static Int pick_one_sided(const std::vector<Bound>& lowers, const std::vector<Bound>& uppers,
                            const std::map<std::size_t, Int>& model) {
    if (!lowers.empty()) {
      Int best;
      bool first = true;
      for (const auto& lo : lowers) {
        Int v = ceil_div(eval_bound(lo, model), lo.a);
        if (first || v > best) best = v;
        first = false;
      }
      return best;
    }
    if (!uppers.empty()) {
      Int best;
      bool first = true;
      for (const auto& up : uppers) {
        Int v = floor_div(eval_bound(up, model), up.a);
        if (first || v < best) best = v;
        first = false;
      }
      return best;
    }
    return 0;
  }

  // Smallest integer between the instantiated bounds; their existence is
  // guaranteed by the shadow that admitted the model.
  static Int pick_bounded(const std::vector<Bound>& lowers, const std::vector<Bound>& uppers,
                          const std::map<std::size_t, Int>& model) {
    Int lo_v, hi_v;
    bool first = true;
    for (const auto& lo : lowers) {
      Int v = ceil_div(eval_bound(lo, model), lo.a);
      if (first || v > lo_v) lo_v = v;
      first = false;
    }
    first = true;
    for (const auto& up : uppers) {
      Int v = floor_div(eval_bound(up, model), up.a);
      if (first || v < hi_v) hi_v = v;
      first = false;
    }
    if (lo_v > hi_v)
      throw InternalError("omega: no integer between certified bounds");
    return lo_v;
  }

  static Int eval_bound(const Bound& b, const std::map<std::size_t, Int>& model) {
    Int acc = b.rhs_k;
    for (const auto& [v, a] : b.rhs_coeffs) {
      auto it = model.find(v);
      if (it != model.end()) acc += a * it->second;
    }
    return acc;
  }

  std::size_t next_fresh_;
  std::uint64_t budget_;
};

// Clears denominators and turns strict positivity into >= 0 form over Z.
IC lower_constraint(const LinConstraint& lc) {
  IC c;
  c.eq = lc.kind == ConstraintKind::EqualZero;
  Int l = lc.expr.denominator_lcm();
  for (const auto& [v, q] : lc.expr.coeffs()) c.coeffs[v.index] = numerator(q * Rational(l));
  c.k = numerator(lc.expr.constant() * Rational(l));
  if (!c.eq) c.k -= 1; // integer-valued e > 0  iff  e - 1 >= 0
  return c;
}

} // namespace

std::optional<std::vector<Int>> solve_conjunction(const Conjunction& conj, std::size_t dim,
                                                  const SolveOptions& opts) {
  std::vector<IC> cs;
  cs.reserve(conj.size());
  for (const auto& lc : conj) cs.push_back(lower_constraint(lc));
  OmegaSolver solver(dim, opts);
  auto model = solver.solve(std::move(cs));
  if (!model) return std::nullopt;
  std::vector<Int> out(dim, Int(0));
  for (const auto& [v, x] : *model)
    if (v < dim) out[v] = x;
  return out;
}

std::optional<std::vector<Int>> solve_lia(const LiaFormula& f, const SolveOptions& opts) {
  // Constant constraints are decided here so trivially true disjuncts
  // drop whole conjuncts and trivially false ones never reach the core.
  std::vector<Disjunction> work;
  for (const auto& disj : f.conjuncts) {
    Disjunction live;
    bool disj_true = false;
    for (const auto& conj : disj) {
      Conjunction pruned;
      bool conj_false = false;
      for (const auto& lc : conj) {
        if (lc.expr.is_constant()) {
          bool ok = lc.kind == ConstraintKind::GreaterZero ? lc.expr.constant() > 0
                                                           : lc.expr.constant() == 0;
          if (!ok) {
            conj_false = true;
            break;
          }
        } else {
          pruned.push_back(lc);
        }
      }
      if (conj_false) continue;
      if (pruned.empty()) {
        disj_true = true;
        break;
      }
      live.push_back(std::move(pruned));
    }
    if (disj_true) continue;
    if (live.empty()) return std::nullopt;
    work.push_back(std::move(live));
  }

  if (work.empty()) return std::vector<Int>(f.dim, Int(0));

  // Enumerate picks lexicographically; the first satisfiable combination
  // fixes the model, making the witness deterministic.
  std::vector<std::size_t> pick(work.size(), 0);
  while (true) {
    Conjunction all;
    for (std::size_t i = 0; i < work.size(); ++i)
      all.insert(all.end(), work[i][pick[i]].begin(), work[i][pick[i]].end());
    if (auto model = solve_conjunction(all, f.dim, opts)) return model;
    std::size_t i = work.size();
    while (i-- > 0) {
      if (++pick[i] < work[i].size()) break;
      pick[i] = 0;
      if (i == 0) return std::nullopt;
    }
  }
}

} // namespace triloop
