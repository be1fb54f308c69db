#include "triloop/decide.hpp"

#include "triloop/chain.hpp"
#include "triloop/errors.hpp"
#include "triloop/formula.hpp"
#include "triloop/simulate.hpp"
#include "triloop/smtlib.hpp"
#include "triloop/triangular.hpp"

namespace triloop {

Verdict decide_termination(const Loop& presented, const DecideOptions& opts) {
  ParsedLoop pl = triangularize(presented);
  Loop nnt = chain(pl.loop);
  LiaFormula f = build_formula(nnt);

  auto model = solve_lia(f, opts.solver);

  if (opts.solver_cmd) {
    ExtResult ext = run_external_solver(*opts.solver_cmd,
                                        export_smtlib(f, nnt.var_names));
    bool ext_sat = ext.status == ExtStatus::Sat;
    if (ext_sat != model.has_value())
      throw SolverBackendError(std::string("external solver says ") +
                               (ext_sat ? "sat" : "unsat") +
                               ", built-in solver disagrees");
  }

  if (!model) return Verdict{true, {}, std::nullopt};

  // Map the internal-order model back to the order the user declared.
  std::vector<Int> witness(presented.dim());
  for (std::size_t i = 0; i < presented.dim(); ++i)
    witness[i] = (*model)[pl.to_internal[i]];

  Verdict v{false, std::move(witness), std::nullopt};
  WitnessCheck wc = check_eventual_witness(presented, v.witness, opts.horizon);
  if (wc.status == WitnessStatus::Confirmed) v.eventual_prefix = wc.prefix;
  return v;
}

} // namespace triloop
