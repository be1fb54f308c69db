// Acceptance gate: six end-to-end criteria, one PASS/FAIL line each.
// Exit code is the number of failed criteria.  argv[1] (optional) is the
// path of the command-line binary; criterion 3 runs it end-to-end when
// present and falls back to the library otherwise.
#include "testutil.hpp"
#include "triloop/chain.hpp"
#include "triloop/cli.hpp"
#include "triloop/closedform.hpp"
#include "triloop/decide.hpp"
#include "triloop/formula.hpp"
#include "triloop/omega.hpp"
#include "triloop/parser.hpp"
#include "triloop/simulate.hpp"
#include "triloop/smtlib.hpp"
#include "triloop/triangular.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace triloop;
using testutil::Rng;

namespace {

using Clock = std::chrono::steady_clock;

// Pinned budgets: single-loop pipeline runs and the whole property suite.
constexpr double kLoopBudgetSeconds = 1.0;
constexpr double kSuiteBudgetSeconds = 60.0;

double elapsed(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

AffineExpr var(std::size_t i, const Rational& c = Rational(1)) {
  return AffineExpr::variable(VarId{i}, c);
}

bool disj_holds(const Disjunction& d, const std::vector<Rational>& state) {
  for (const auto& conj : d) {
    bool all = true;
    for (const auto& c : conj)
      if (!c.holds(state)) {
        all = false;
        break;
      }
    if (all) return true;
  }
  return false;
}

// Substitutes the normalized closed forms into one guard atom, the way the
// formula builder does internally.
NormPolyExp subst_atom(const AffineExpr& atom, const std::vector<NormPolyExp>& qn) {
  NormPolyExp p;
  if (atom.constant() != 0)
    p.add_term(NormTerm{AffineExpr(atom.constant()), 0, Int(1)});
  for (const auto& [v, c] : atom.coeffs()) p += qn[v.index].scaled(c);
  return p;
}

struct ToolRun {
  int exit_code;
  std::string output;
};

std::optional<ToolRun> run_tool(const std::string& cli, const std::string& loop_text,
                                const std::string& tag) {
  auto path = std::filesystem::temp_directory_path() / ("acceptance_" + tag + ".loop");
  {
    std::ofstream f(path);
    f << loop_text;
  }
  std::string cmd = cli + " " + path.string() + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return std::nullopt;
  std::string out;
  char buf[256];
  while (std::size_t got = fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
  int status = pclose(pipe);
  if (status < 0 || !WIFEXITED(status)) return std::nullopt;
  return ToolRun{WEXITSTATUS(status), out};
}

// ---- criterion 1: the four-variable reference loop, whole pipeline ----

bool criterion1() {
  auto t0 = Clock::now();

  Loop presented = parse_loop(testutil::kNegDiagLoop);
  ParsedLoop pl = triangularize(presented);
  Loop ch = chain(pl.loop);

  // Chained loop: squared update, folded offset, doubled guard.
  IntMatrix want_update{{0, 0, 0, 0}, {0, 1, 0, 0}, {2, 0, 4, 0}, {0, 1, 0, 0}};
  IntVector want_offset{2, 2, -2, 1};
  if (ch.update != want_update || ch.offset != want_offset) {
    std::cout << "FAIL: criterion 1 — chained update/offset differ from the reference\n";
    return false;
  }
  Guard want_guard{{var(2) + var(3), var(0, -1) + var(1) + var(2, -2)}};
  if (ch.guard != want_guard) {
    std::cout << "FAIL: criterion 1 — chained guard differs from the reference\n";
    return false;
  }

  // Closed form: semantic agreement with independently written expressions.
  auto q = closed_form(ch);
  Rng rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Rational> s = testutil::rstate(rng, 4, 9);
    const Rational &w = s[0], &x = s[1], &y = s[2], &z = s[3];
    for (std::uint64_t n = 0; n <= 10; ++n) {
      Rational p4n(int_pow(Int(4), n));
      Rational q1 = n != 0 ? Rational(1, 2) * w * p4n : Rational(0);
      Rational q2 = n > 1 ? Rational(-4, 3) + Rational(1, 3) * p4n : Rational(0);
      Rational q3 = Rational(2, 3) - Rational(2, 3) * p4n;
      Rational want_w = n == 0 ? w : Rational(2);
      Rational want_x = x + Rational(2 * n);
      Rational want_y = y * p4n + q1 + q2 + q3;
      Rational want_z = n == 0 ? z : x - 1 + Rational(2 * n);
      if (q[0].eval(n, s) != want_w || q[1].eval(n, s) != want_x ||
          q[2].eval(n, s) != want_y || q[3].eval(n, s) != want_z) {
        std::cout << "FAIL: criterion 1 — closed form disagrees with the reference "
                     "evaluation at n="
                  << n << "\n";
        return false;
      }
    }
  }

  // Normalized forms, structurally.
  std::vector<NormPolyExp> qn;
  for (const auto& qi : q) qn.push_back(normalize(qi));
  NormPolyExp want_qn_w{{NormTerm{AffineExpr(Rational(2)), 0, Int(1)}}};
  NormPolyExp want_qn_x{{NormTerm{AffineExpr(Rational(2)), 1, Int(1)},
                         NormTerm{var(1), 0, Int(1)}}};
  NormPolyExp want_qn_y{
      {NormTerm{var(0, Rational(1, 2)) + var(2) + AffineExpr(Rational(-1, 3)), 0, Int(4)},
       NormTerm{AffineExpr(Rational(-2, 3)), 0, Int(1)}}};
  NormPolyExp want_qn_z{{NormTerm{AffineExpr(Rational(2)), 1, Int(1)},
                         NormTerm{var(1) + AffineExpr(Rational(-1)), 0, Int(1)}}};
  if (qn[0] != want_qn_w || qn[1] != want_qn_x || qn[2] != want_qn_y ||
      qn[3] != want_qn_z) {
    std::cout << "FAIL: criterion 1 — normalized closed forms differ\n";
    return false;
  }

  // Marked coefficients of both substituted guard atoms.
  std::vector<MarkedCoeff> want_c1{
      MarkedCoeff{var(0, Rational(1, 2)) + var(2) + AffineExpr(Rational(-1, 3)), 0, Int(4)},
      MarkedCoeff{AffineExpr(Rational(2)), 1, Int(1)},
      MarkedCoeff{var(1) + AffineExpr(Rational(-5, 3)), 0, Int(1)}};
  std::vector<MarkedCoeff> want_c2{
      MarkedCoeff{var(0, Rational(-1)) + var(2, Rational(-2)) + AffineExpr(Rational(2, 3)),
                  0, Int(4)},
      MarkedCoeff{AffineExpr(Rational(2)), 1, Int(1)},
      MarkedCoeff{var(1) + AffineExpr(Rational(-2, 3)), 0, Int(1)}};
  if (marked_coeffs(subst_atom(ch.guard.atoms[0], qn)) != want_c1 ||
      marked_coeffs(subst_atom(ch.guard.atoms[1], qn)) != want_c2) {
    std::cout << "FAIL: criterion 1 — marked coefficients differ\n";
    return false;
  }

  // Verdict.  The built formula collapses to an equality with no integer
  // solution (3w + 6y = 2 has gcd 3 on the left).
  if (solve_lia(build_formula(ch))) {
    std::cout << "FAIL: criterion 1 — eventual-guard formula is satisfiable\n";
    return false;
  }
  Conjunction collapse{{var(0, Rational(3)) + var(2, Rational(6)) + AffineExpr(Rational(-2)),
                        ConstraintKind::EqualZero}};
  if (solve_conjunction(collapse, 4)) {
    std::cout << "FAIL: criterion 1 — collapsed equality should be unsatisfiable\n";
    return false;
  }
  if (!decide_termination(presented).terminates) {
    std::cout << "FAIL: criterion 1 — verdict should be TERMINATES\n";
    return false;
  }

  double dt = elapsed(t0);
  if (dt >= kLoopBudgetSeconds) {
    std::cout << "FAIL: criterion 1 — pipeline took " << dt << "s (budget "
              << kLoopBudgetSeconds << "s)\n";
    return false;
  }
  std::cout << "PASS: criterion 1 — reference pipeline: chain, closed form, "
               "normalization, marked coefficients, verdict ("
            << dt << "s)\n";
  return true;
}

// ---- criterion 2: difference solver pin and the symbolic sum ----

bool criterion2() {
  Polynomial r = solve_difference(Polynomial(std::vector<Rational>{Rational(1)}), Rational(4));
  if (r != Polynomial(std::vector<Rational>{Rational(-1, 3)})) {
    std::cout << "FAIL: criterion 2 — difference solver pin r = -1/3\n";
    return false;
  }

  // sum_{i=1..n} 4^(n-i) * ([n=0]*2w + [n!=0]*4 - 2)[n/i-1], against the
  // hand-derived split q1 + q2 + q3.
  PolyExp p;
  p.add_term(PeTerm{CondConj::eq(0), var(0, Rational(2)), 0, Int(1)});
  p.add_term(PeTerm{CondConj::neq(0), AffineExpr(Rational(4)), 0, Int(1)});
  p.add_term(PeTerm{CondConj{}, AffineExpr(Rational(-2)), 0, Int(1)});
  PolyExp got = symbolic_sum(Int(4), p);

  Rng rng(2025);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Rational> s{Rational(testutil::rint(rng, -9, 9))};
    for (std::uint64_t n = 0; n <= 10; ++n) {
      Rational p4n(int_pow(Int(4), n));
      Rational q1 = n != 0 ? Rational(1, 2) * s[0] * p4n : Rational(0);
      Rational q2 = n > 1 ? Rational(-4, 3) + Rational(1, 3) * p4n : Rational(0);
      Rational q3 = Rational(2, 3) - Rational(2, 3) * p4n;
      if (got.eval(n, s) != q1 + q2 + q3) {
        std::cout << "FAIL: criterion 2 — symbolic sum disagrees at n=" << n << "\n";
        return false;
      }
      if (got.eval(n, s) != testutil::explicit_sum(Int(4), p, n, s)) {
        std::cout << "FAIL: criterion 2 — symbolic sum disagrees with direct summation "
                     "at n="
                  << n << "\n";
        return false;
      }
    }
  }
  std::cout << "PASS: criterion 2 — difference solver pin and symbolic sum reference\n";
  return true;
}

// ---- criterion 3: three reference verdicts through the tool ----

bool criterion3(const std::string& cli) {
  struct Case {
    const char* name;
    const char* text;
    bool terminates;
  };
  const Case cases[] = {
      {"constant-reset climb", testutil::kClimbLoop, false},
      {"drift-down pair", testutil::kDriftDownLoop, true},
      {"five-variable drift", testutil::kDriftDownWideLoop, true},
  };
  for (const auto& c : cases) {
    auto t0 = Clock::now();
    bool terminates;
    if (!cli.empty()) {
      auto run = run_tool(cli, c.text, c.name[0] == 'c' ? "climb" : "drift");
      if (!run || (run->exit_code != kExitTerminates &&
                   run->exit_code != kExitNonTerminates)) {
        std::cout << "FAIL: criterion 3 — tool run failed on the " << c.name << " loop\n";
        return false;
      }
      terminates = run->exit_code == kExitTerminates;
      bool says_term = run->output.rfind("TERMINATES", 0) == 0;
      bool says_non = run->output.rfind("NONTERMINATES", 0) == 0;
      if (terminates != says_term || (!terminates && !says_non)) {
        std::cout << "FAIL: criterion 3 — exit code and verdict line disagree on the "
                  << c.name << " loop\n";
        return false;
      }
    } else {
      terminates = decide_termination(parse_loop(c.text)).terminates;
    }
    double dt = elapsed(t0);
    if (terminates != c.terminates) {
      std::cout << "FAIL: criterion 3 — wrong verdict on the " << c.name << " loop\n";
      return false;
    }
    if (dt >= kLoopBudgetSeconds) {
      std::cout << "FAIL: criterion 3 — " << c.name << " took " << dt << "s (budget "
                << kLoopBudgetSeconds << "s)\n";
      return false;
    }
  }
  std::cout << "PASS: criterion 3 — reference verdicts (one nonterminating, two "
               "terminating), each under "
            << kLoopBudgetSeconds << "s\n";
  return true;
}

// ---- criterion 4: the structural properties at desk scale ----

bool criterion4() {
  auto t0 = Clock::now();
  Rng rng(404);

  // Chaining yields a lower-triangular update with nonnegative diagonal.
  for (int it = 0; it < 500; ++it) {
    std::size_t d = static_cast<std::size_t>(testutil::rint(rng, 1, 4));
    Loop l = testutil::rtriangular_loop(rng, d, -3, 3, 3, 4, 2);
    Loop ch = chain(l);
    if (!ch.lower_triangular() || !ch.nonnegative_diagonal()) {
      std::cout << "FAIL: criterion 4 — chained loop not triangular/nonnegative\n";
      return false;
    }
  }

  // One chained step equals two original steps, iterated.
  for (int it = 0; it < 200; ++it) {
    std::size_t d = static_cast<std::size_t>(testutil::rint(rng, 1, 4));
    Loop l = testutil::rtriangular_loop(rng, d, -3, 3, 3, 4, 2);
    Loop ch = chain(l);
    std::vector<Int> s = testutil::ristate(rng, d, 5);
    for (std::uint64_t n = 0; n <= 8; ++n) {
      if (testutil::naive_iterate(ch, s, n) != testutil::naive_iterate(l, s, 2 * n)) {
        std::cout << "FAIL: criterion 4 — chained trace differs from doubled trace\n";
        return false;
      }
    }
  }

  // Closed forms replay exact simulation on nonnegative-diagonal loops.
  for (int it = 0; it < 200; ++it) {
    std::size_t d = static_cast<std::size_t>(testutil::rint(rng, 1, 4));
    Loop l = testutil::rtriangular_loop(rng, d, 0, 3, 3, 4, 2);
    auto q = closed_form(l);
    std::vector<Int> s = testutil::ristate(rng, d, 5);
    std::vector<Rational> rs(s.begin(), s.end());
    for (std::uint64_t c = 0; c <= 10; ++c) {
      std::vector<Int> direct = testutil::naive_iterate(l, s, c);
      for (std::size_t i = 0; i < d; ++i)
        if (q[i].eval(c, rs) != Rational(direct[i])) {
          std::cout << "FAIL: criterion 4 — closed form disagrees with simulation\n";
          return false;
        }
    }
  }

  // Dropping the step conditions is sound past the largest mentioned step.
  for (int it = 0; it < 200; ++it) {
    PolyExp q = testutil::rpolyexp(rng, 3, 5, 3, 2);
    NormPolyExp qn = normalize(q);
    std::uint64_t start =
        static_cast<std::uint64_t>(std::max<std::int64_t>(q.max_constant(), 0)) + 1;
    std::vector<Rational> s = testutil::rstate(rng, 3, 5);
    for (std::uint64_t n = start; n < start + 6; ++n)
      if (q.eval(n, s) != qn.eval(n, s)) {
        std::cout << "FAIL: criterion 4 — normalization changes values past the "
                     "condition horizon\n";
        return false;
      }
  }

  // Positivity formula <=> dominant-sign <=> sampled evaluation.  Bound
  // analysis for the fixed window: instantiated coefficients stay within
  // |c| <= 14 per raw addend and at most four addends merge per growth key,
  // so |c| <= 56 after merging while a nonzero lead is >= 1; the worst
  // same-base crossover n^2 > 56n + 112 settles by n = 58 < 200.
  for (int it = 0; it < 200; ++it) {
    NormPolyExp open = testutil::rnormpolyexp(rng, 3, 4, 3, 2, 2, 1);
    std::vector<Rational> s = testutil::rstate(rng, 3, 2);
    NormPolyExp p = open.instantiate(s);
    bool via_formula = disj_holds(positivity_formula(p), {});
    bool via_sign = sign_at_infinity(p) > 0;
    bool via_eval = true;
    for (std::uint64_t n = 200; n <= 220; ++n)
      if (!(p.eval(n, {}) > 0)) {
        via_eval = false;
        break;
      }
    if (via_formula != via_sign || via_sign != via_eval) {
      std::cout << "FAIL: criterion 4 — positivity formula, dominant sign, and "
                   "evaluation disagree\n";
      return false;
    }
  }

  double dt = elapsed(t0);
  if (dt >= kSuiteBudgetSeconds) {
    std::cout << "FAIL: criterion 4 — property suite took " << dt << "s (budget "
              << kSuiteBudgetSeconds << "s)\n";
    return false;
  }
  std::cout << "PASS: criterion 4 — chaining, closed-form, normalization, and "
               "positivity properties on random corpora ("
            << dt << "s)\n";
  return true;
}

// ---- criterion 5: integer solver against brute force and backend ----

bool criterion5() {
  Rng rng(505);
  const char* env_cmd = std::getenv("TRILOOP_SMT_CMD");
  int sat_count = 0;
  for (int it = 0; it < 300; ++it) {
    std::size_t dim = static_cast<std::size_t>(testutil::rint(rng, 1, 3));
    LiaFormula f;
    f.dim = dim;
    int atoms = testutil::rint(rng, 1, 3);
    for (int a = 0; a < atoms; ++a) {
      Disjunction disj;
      int branches = testutil::rint(rng, 1, 3);
      for (int b = 0; b < branches; ++b) {
        Conjunction conj;
        int k = testutil::rint(rng, 1, 3);
        for (int c = 0; c < k; ++c) {
          AffineExpr e(Rational(testutil::rint(rng, -6, 6)));
          for (std::size_t v = 0; v < dim; ++v) {
            Rational coeff(testutil::rint(rng, -4, 4));
            if (testutil::rint(rng, 0, 5) == 0)
              coeff /= Rational(testutil::rint(rng, 2, 3));
            if (coeff != 0) e.add_term(VarId{v}, coeff);
          }
          conj.push_back(LinConstraint{e, testutil::rint(rng, 0, 3) == 0
                                              ? ConstraintKind::EqualZero
                                              : ConstraintKind::GreaterZero});
        }
        disj.push_back(std::move(conj));
      }
      f.conjuncts.push_back(std::move(disj));
    }

    auto model = solve_lia(f);
    bool box = testutil::box_satisfiable(f, 8);
    if (model) {
      ++sat_count;
      std::vector<Rational> s(model->begin(), model->end());
      if (!f.holds(s)) {
        std::cout << "FAIL: criterion 5 — reported model does not satisfy its formula\n";
        return false;
      }
    } else if (box) {
      std::cout << "FAIL: criterion 5 — solver says unsatisfiable but the box search "
                   "found a model\n";
      return false;
    }

    if (env_cmd) {
      std::vector<std::string> names;
      for (std::size_t v = 0; v < dim; ++v) names.push_back("x" + std::to_string(v));
      ExtResult ext = run_external_solver(env_cmd, export_smtlib(f, names));
      if ((ext.status == ExtStatus::Sat) != model.has_value()) {
        std::cout << "FAIL: criterion 5 — external backend disagrees on formula " << it
                  << "\n";
        return false;
      }
    }
  }
  if (sat_count == 0 || sat_count == 300) {
    std::cout << "FAIL: criterion 5 — degenerate corpus (all one verdict)\n";
    return false;
  }
  std::cout << "PASS: criterion 5 — built-in solver vs box search on 300 formulas, "
            << sat_count << " satisfiable (external backend: "
            << (env_cmd ? "agreed" : "not configured") << ")\n";
  return true;
}

// ---- criterion 6: witness semantics over a random corpus ----

bool criterion6() {
  Rng rng(606);
  int nonterminating = 0;
  int terminating = 0;
  for (int it = 0; it < 110; ++it) {
    std::size_t d = static_cast<std::size_t>(testutil::rint(rng, 1, 3));
    Loop l = testutil::rtriangular_loop(rng, d, -2, 2, 2, 3, 2);
    if (testutil::rint(rng, 0, 1)) {
      std::vector<std::size_t> perm;
      l = testutil::shuffle_vars(rng, l, perm);
    }
    Verdict v = decide_termination(l);
    if (!v.terminates) {
      ++nonterminating;
      WitnessCheck wc = check_eventual_witness(l, v.witness, 10000);
      if (wc.status != WitnessStatus::Confirmed) {
        std::cout << "FAIL: criterion 6 — witness not confirmed within 10^4 steps\n";
        return false;
      }
    } else {
      ++terminating;
      // Every start in the [-6,6]^d box must violate the guard within 10^4
      // steps; stream the states to keep memory flat.
      std::vector<int> cur(d, -6);
      while (true) {
        std::vector<Int> s(cur.begin(), cur.end());
        bool halted = false;
        for (int step = 0; step <= 10000; ++step) {
          if (!l.guard_holds(s)) {
            halted = true;
            break;
          }
          s = l.step(s);
        }
        if (!halted) {
          std::cout << "FAIL: criterion 6 — loop judged terminating still runs after "
                       "10^4 steps\n";
          return false;
        }
        std::size_t i = 0;
        while (i < d && ++cur[i] > 6) {
          cur[i] = -6;
          ++i;
        }
        if (i == d) break;
      }
    }
  }
  if (nonterminating == 0 || terminating == 0) {
    std::cout << "FAIL: criterion 6 — corpus produced only one kind of verdict\n";
    return false;
  }
  std::cout << "PASS: criterion 6 — " << nonterminating
            << " witnesses confirmed, " << terminating
            << " terminating loops exhausted over the start box\n";
  return true;
}

} // namespace

int main(int argc, char** argv) {
  std::string cli = argc > 1 ? argv[1] : "";
  int failures = 0;
  failures += criterion1() ? 0 : 1;
  failures += criterion2() ? 0 : 1;
  failures += criterion3(cli) ? 0 : 1;
  failures += criterion4() ? 0 : 1;
  failures += criterion5() ? 0 : 1;
  failures += criterion6() ? 0 : 1;
  return failures;
}
