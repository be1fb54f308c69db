#include "triloop/smtlib.hpp"

#include "triloop/errors.hpp"

#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <unistd.h>
#include <variant>

namespace triloop {

namespace {

std::string smt_int(const Int& v) {
  if (v < 0) return "(- " + Int(-v).str() + ")";
  return v.str();
}

// Affine expression with denominators cleared, as an SMT-LIB sum.
std::string smt_affine(const AffineExpr& e, const std::vector<std::string>& names) {
  Int l = e.denominator_lcm();
  std::vector<std::string> parts;
  for (const auto& [v, q] : e.coeffs()) {
    Int c = numerator(q * Rational(l));
    if (v.index >= names.size()) throw InternalError("smtlib: variable index out of range");
    parts.push_back(c == 1 ? names[v.index]
                           : "(* " + smt_int(c) + " " + names[v.index] + ")");
  }
  Int k = numerator(e.constant() * Rational(l));
  if (k != 0 || parts.empty()) parts.push_back(smt_int(k));
  if (parts.size() == 1) return parts.front();
  std::string out = "(+";
  for (const auto& p : parts) out += " " + p;
  return out + ")";
}

std::string smt_constraint(const LinConstraint& c, const std::vector<std::string>& names) {
  const char* op = c.kind == ConstraintKind::GreaterZero ? ">" : "=";
  return std::string("(") + op + " " + smt_affine(c.expr, names) + " 0)";
}

std::string smt_nary(const char* op, const std::vector<std::string>& parts,
                     const char* empty) {
  if (parts.empty()) return empty;
  if (parts.size() == 1) return parts.front();
  std::string out = std::string("(") + op;
  for (const auto& p : parts) out += " " + p;
  return out + ")";
}

// --- reply parsing ------------------------------------------------------

struct Sexp {
  std::variant<std::string, std::vector<Sexp>> v;
  bool is_atom() const { return v.index() == 0; }
  const std::string& atom() const { return std::get<0>(v); }
  const std::vector<Sexp>& list() const { return std::get<1>(v); }
};

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> toks;
  std::string cur;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == ';') { // comment to end of line
      while (i < text.size() && text[i] != '\n') ++i;
      c = ' ';
    }
    if (c == '(' || c == ')') {
      if (!cur.empty()) {
        toks.push_back(cur);
        cur.clear();
      }
      toks.push_back(std::string(1, c));
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) {
        toks.push_back(cur);
        cur.clear();
      }
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) toks.push_back(cur);
  return toks;
}

std::vector<Sexp> parse_sexps(const std::vector<std::string>& toks) {
  std::vector<Sexp> roots;
  std::vector<std::vector<Sexp>> stack;
  for (const auto& t : toks) {
    if (t == "(") {
      stack.emplace_back();
    } else if (t == ")") {
      if (stack.empty()) throw SolverBackendError("unbalanced ')' in solver reply");
      Sexp done{std::move(stack.back())};
      stack.pop_back();
      (stack.empty() ? roots : stack.back()).push_back(std::move(done));
    } else {
      (stack.empty() ? roots : stack.back()).push_back(Sexp{t});
    }
  }
  if (!stack.empty()) throw SolverBackendError("unbalanced '(' in solver reply");
  return roots;
}

bool integer_atom(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = s[0] == '-' ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

std::optional<Int> read_value(const Sexp& s) {
  if (s.is_atom())
    return integer_atom(s.atom()) ? std::optional<Int>(Int(s.atom())) : std::nullopt;
  const auto& l = s.list();
  if (l.size() == 2 && l[0].is_atom() && l[0].atom() == "-") {
    auto inner = read_value(l[1]);
    if (inner) return -*inner;
  }
  return std::nullopt;
}

void collect_bindings(const Sexp& s, std::map<std::string, Int>& model) {
  if (s.is_atom()) return;
  const auto& l = s.list();
  // (define-fun v () Int k)
  if (l.size() == 5 && l[0].is_atom() && l[0].atom() == "define-fun" && l[1].is_atom()) {
    if (auto v = read_value(l[4])) {
      model[l[1].atom()] = *v;
      return;
    }
  }
  // (v k)
  if (l.size() == 2 && l[0].is_atom() && !l[0].atom().empty() &&
      (std::isalpha(static_cast<unsigned char>(l[0].atom()[0])) || l[0].atom()[0] == '_')) {
    if (auto v = read_value(l[1])) {
      model[l[0].atom()] = *v;
      return;
    }
  }
  for (const auto& child : l) collect_bindings(child, model);
}

} // namespace

std::string export_smtlib(const LiaFormula& f, const std::vector<std::string>& names) {
  if (names.size() != f.dim) throw InternalError("smtlib: name count != formula dimension");
  std::ostringstream out;
  out << "(set-logic QF_LIA)\n";
  for (const auto& n : names) out << "(declare-const " << n << " Int)\n";

  std::vector<std::string> conjs;
  for (const auto& disj : f.conjuncts) {
    std::vector<std::string> djs;
    for (const auto& conj : disj) {
      std::vector<std::string> cs;
      for (const auto& c : conj) cs.push_back(smt_constraint(c, names));
      djs.push_back(smt_nary("and", cs, "true"));
    }
    conjs.push_back(smt_nary("or", djs, "false"));
  }
  out << "(assert " << smt_nary("and", conjs, "true") << ")\n";
  out << "(check-sat)\n(get-model)\n";
  return out.str();
}

ExtResult parse_solver_reply(const std::string& text) {
  auto roots = parse_sexps(tokenize(text));
  std::size_t i = 0;
  while (i < roots.size() && !(roots[i].is_atom())) ++i;
  if (i == roots.size())
    throw SolverBackendError("solver reply contains no status token");
  const std::string& status = roots[i].atom();
  if (status == "unsat") return {ExtStatus::Unsat, {}};
  if (status != "sat")
    throw SolverBackendError("unexpected solver status '" + status + "'");
  ExtResult r{ExtStatus::Sat, {}};
  for (; i < roots.size(); ++i) collect_bindings(roots[i], r.model);
  return r;
}

ExtResult run_external_solver(const std::string& cmd, const std::string& script) {
  namespace fs = std::filesystem;
  fs::path file =
      fs::temp_directory_path() / ("triloop-query-" + std::to_string(::getpid()) + ".smt2");
  {
    std::ofstream out(file);
    if (!out) throw SolverBackendError("cannot write solver query file");
    out << script;
  }
  std::string full = cmd + " " + file.string() + " 2>&1";
  std::string reply;
  {
    std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(full.c_str(), "r"), pclose);
    if (!pipe) {
      fs::remove(file);
      throw SolverBackendError("cannot start solver command: " + cmd);
    }
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe.get())) > 0) reply.append(buf, got);
  }
  fs::remove(file);
  return parse_solver_reply(reply);
}

} // namespace triloop
