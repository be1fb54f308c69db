#include "triloop/cli.hpp"

#include "triloop/chain.hpp"
#include "triloop/closedform.hpp"
#include "triloop/decide.hpp"
#include "triloop/errors.hpp"
#include "triloop/formula.hpp"
#include "triloop/parser.hpp"
#include "triloop/records.hpp"
#include "triloop/simulate.hpp"
#include "triloop/smtlib.hpp"
#include "triloop/triangular.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace triloop {

namespace {

std::vector<Int> parse_init(const std::string& text, std::size_t dim) {
  std::vector<Int> vals;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, ',')) {
    // trim blanks
    std::size_t a = cur.find_first_not_of(" \t");
    std::size_t b = cur.find_last_not_of(" \t");
    if (a == std::string::npos) throw ParseError("empty entry in --init", 1, 1);
    cur = cur.substr(a, b - a + 1);
    bool ok = !cur.empty();
    for (std::size_t i = 0; i < cur.size(); ++i) {
      char c = cur[i];
      if (i == 0 && (c == '-' || c == '+')) {
        ok = cur.size() > 1;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(c))) ok = false;
    }
    if (!ok) throw ParseError("invalid integer '" + cur + "' in --init", 1, 1);
    vals.push_back(Int(cur));
  }
  if (vals.size() != dim)
    throw ParseError("--init has " + std::to_string(vals.size()) + " values, loop has " +
                         std::to_string(dim) + " variables",
                     1, 1);
  return vals;
}

bool records(const RunConfig& c) { return c.format == "structured-records"; }

int run_simulate(const RunConfig& config, const Loop& loop, std::ostream& out,
                 std::ostream& err) {
  if (!config.init) {
    err << "error: --mode simulate requires --init\n";
    return kExitInputError;
  }
  std::vector<Int> init;
  try {
    init = parse_init(*config.init, loop.dim());
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  // Stored states per run stay bounded; the guard/witness checks stream
  // instead, so a large --horizon should be pointed at those.
  Trace t = simulate(loop, init, config.horizon);
  if (records(config)) {
    out << trace_record(t, loop.var_names).dump() << "\n";
    return kExitTerminates;
  }
  out << "n";
  for (const auto& n : loop.var_names) out << "\t" << n;
  out << "\tguard\n";
  for (std::size_t i = 0; i < t.states.size(); ++i) {
    out << i;
    for (const auto& v : t.states[i]) out << "\t" << to_string(v);
    out << "\t" << (t.guard_holds[i] ? "holds" : "violated") << "\n";
  }
  return kExitTerminates;
}

int run_decide(const RunConfig& config, const Loop& loop, const ParsedLoop& pl,
               std::ostream& out) {
  DecideOptions opts;
  opts.horizon = config.horizon;
  opts.solver_cmd = config.solver_cmd;
  Verdict v = decide_termination(loop, opts);
  if (records(config)) {
    out << verdict_record(v, loop.var_names, pl.to_internal).dump() << "\n";
  } else if (v.terminates) {
    out << "TERMINATES\n";
  } else {
    out << "NONTERMINATES witness:";
    for (std::size_t i = 0; i < loop.dim(); ++i)
      out << " " << loop.var_names[i] << "=" << to_string(v.witness[i]);
    out << "\n";
    if (v.eventual_prefix)
      out << "guard holds from step " << *v.eventual_prefix + 1
          << " on within the simulated horizon (heuristic prefix n0=" << *v.eventual_prefix
          << ")\n";
  }
  return v.terminates ? kExitTerminates : kExitNonTerminates;
}

int run_checked(const RunConfig& config, std::istream& in, std::ostream& out,
                std::ostream& err) {
  // Input text.
  std::string text;
  if (config.input_path && *config.input_path != "-") {
    std::ifstream f(*config.input_path);
    if (!f) {
      err << "error: cannot open input file '" << *config.input_path << "'\n";
      return kExitInputError;
    }
    std::ostringstream buf;
    buf << f.rdbuf();
    text = buf.str();
  } else {
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }

  Loop loop;
  try {
    loop = parse_loop(text);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  if (config.mode == "simulate") return run_simulate(config, loop, out, err);

  ParsedLoop pl;
  try {
    pl = triangularize(loop);
  } catch (const NotTriangularizableError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNotTriangular;
  }

  if (config.mode == "decide") return run_decide(config, loop, pl, out);

  Loop chained = chain(pl.loop);

  if (config.mode == "chain") {
    if (records(config)) {
      Json j = loop_record(chained);
      j["permutation"] = pl.to_internal;
      out << j.dump() << "\n";
    } else {
      out << print_loop(chained);
    }
    return kExitTerminates;
  }

  if (config.mode == "closed-form") {
    auto q = closed_form(chained);
    if (records(config)) {
      for (std::size_t i = 0; i < q.size(); ++i)
        out << closed_form_record(chained.var_names[i], q[i], chained.var_names).dump()
            << "\n";
    } else {
      for (std::size_t i = 0; i < q.size(); ++i)
        out << chained.var_names[i] << "(n) = " << q[i].to_string(chained.var_names)
            << "\n";
    }
    return kExitTerminates;
  }

  LiaFormula f = build_formula(chained);

  if (config.mode == "formula") {
    if (records(config)) out << formula_record(f, chained.var_names).dump() << "\n";
    else out << formula_to_string(f, chained.var_names) << "\n";
    return kExitTerminates;
  }

  if (config.mode == "smtlib") {
    std::string script = export_smtlib(f, chained.var_names);
    if (records(config)) out << Json{{"record", "smtlib"}, {"script", script}}.dump() << "\n";
    else out << script;
    return kExitTerminates;
  }

  err << "error: unknown mode '" << config.mode << "'\n";
  return kExitInputError;
}

} // namespace

int run(const RunConfig& config, std::istream& in, std::ostream& out, std::ostream& err) {
  std::ofstream file_out;
  std::ostream* sink = &out;
  if (config.output_path) {
    file_out.open(*config.output_path);
    if (!file_out) {
      err << "error: cannot open output file '" << *config.output_path << "'\n";
      return kExitInputError;
    }
    sink = &file_out;
  }
  try {
    return run_checked(config, in, *sink, err);
  } catch (const SolverBackendError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInternalError;
  } catch (const ResourceLimitError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInternalError;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternalError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternalError;
  }
}

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  RunConfig config;
  std::string input;

  CLI::App app{"Termination analysis for affine integer loops with triangularizable "
               "update matrices"};
  app.add_option("input", input, "Loop file (default: stdin)");
  app.add_option("--mode", config.mode, "decide|chain|closed-form|formula|smtlib|simulate")
      ->check(CLI::IsMember(
          {"decide", "chain", "closed-form", "formula", "smtlib", "simulate"}));
  app.add_option("--format", config.format, "human|structured-records")
      ->check(CLI::IsMember({"human", "structured-records"}));
  std::string solver_cmd;
  auto* sc = app.add_option("--solver-cmd", solver_cmd,
                            "External SMT solver command to cross-check satisfiability");
  app.add_option("--horizon", config.horizon,
                 "Step bound for simulation and witness confirmation");
  std::string init;
  auto* io = app.add_option("--init", init, "Comma-separated initial state for simulate");
  std::string output;
  auto* oo = app.add_option("--output", output, "Write output to this file");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) { // --help
      out << app.help();
      return kExitTerminates;
    }
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  if (!input.empty()) config.input_path = input;
  if (*sc) config.solver_cmd = solver_cmd;
  if (*io) config.init = init;
  if (*oo) config.output_path = output;
  return run(config, in, out, err);
}

} // namespace triloop
