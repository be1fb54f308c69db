#include "triloop/records.hpp"

#include "triloop/errors.hpp"

#include <algorithm>

namespace triloop {

namespace {

Json affine_json(const AffineExpr& e, const std::vector<std::string>& names) {
  Json coeffs = Json::object();
  for (const auto& [v, c] : e.coeffs()) {
    if (v.index >= names.size()) throw InternalError("record: variable index out of range");
    coeffs[names[v.index]] = to_string(c);
  }
  return Json{{"coeffs", coeffs}, {"const", to_string(e.constant())}};
}

AffineExpr affine_from_json(const Json& j, const std::vector<std::string>& names) {
  AffineExpr e(rational_from_string(j.at("const").get<std::string>()));
  for (const auto& [name, val] : j.at("coeffs").items()) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw InternalError("record: unknown variable '" + name + "'");
    e.add_term(VarId{static_cast<std::size_t>(it - names.begin())},
               rational_from_string(val.get<std::string>()));
  }
  return e;
}

Json cond_json(const CondConj& c) {
  Json excludes = Json::array();
  for (auto x : c.excludes()) excludes.push_back(x);
  return Json{{"equals", c.equals() ? Json(*c.equals()) : Json(nullptr)},
              {"excludes", excludes}};
}

Json polyexp_terms_json(const PolyExp& q, const std::vector<std::string>& names) {
  Json terms = Json::array();
  for (const auto& t : q.terms()) {
    Json jt = affine_json(t.alpha, names);
    jt["cond"] = cond_json(t.cond);
    jt["power"] = t.power;
    jt["base"] = to_string(t.base);
    terms.push_back(std::move(jt));
  }
  return terms;
}

} // namespace

Rational rational_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(Int(s));
  return Rational(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

Json loop_record(const Loop& loop) {
  Json guard = Json::array();
  for (const auto& a : loop.guard.atoms) guard.push_back(affine_json(a, loop.var_names));
  Json update = Json::array();
  for (const auto& row : loop.update) {
    Json jr = Json::array();
    for (const auto& v : row) jr.push_back(to_string(v));
    update.push_back(std::move(jr));
  }
  Json offset = Json::array();
  for (const auto& v : loop.offset) offset.push_back(to_string(v));
  return Json{{"record", "loop"},
              {"vars", loop.var_names},
              {"guard", guard},
              {"update", update},
              {"offset", offset}};
}

Json closed_form_record(const std::string& variable, const PolyExp& q,
                        const std::vector<std::string>& names) {
  return Json{{"record", "closed_form"},
              {"vars", names},
              {"variable", variable},
              {"terms", polyexp_terms_json(q, names)},
              {"rendered", q.to_string(names)}};
}

PolyExp polyexp_from_record(const Json& record) {
  std::vector<std::string> names = record.at("vars").get<std::vector<std::string>>();
  PolyExp q;
  for (const auto& jt : record.at("terms")) {
    const Json& jc = jt.at("cond");
    std::optional<std::uint64_t> equals;
    if (!jc.at("equals").is_null()) equals = jc.at("equals").get<std::uint64_t>();
    std::set<std::uint64_t> excludes;
    for (const auto& x : jc.at("excludes")) excludes.insert(x.get<std::uint64_t>());
    auto cond = CondConj::make(equals, std::move(excludes));
    if (!cond) throw InternalError("record: contradictory term condition");
    q.add_term(PeTerm{*cond, affine_from_json(jt, names),
                      jt.at("power").get<std::uint64_t>(),
                      Int(jt.at("base").get<std::string>())});
  }
  return q;
}

Json formula_record(const LiaFormula& f, const std::vector<std::string>& names) {
  Json conjuncts = Json::array();
  for (const auto& disj : f.conjuncts) {
    Json jd = Json::array();
    for (const auto& conj : disj) {
      Json jc = Json::array();
      for (const auto& c : conj) {
        Json e = affine_json(c.expr, names);
        e["kind"] = c.kind == ConstraintKind::GreaterZero ? ">" : "=";
        jc.push_back(std::move(e));
      }
      jd.push_back(std::move(jc));
    }
    conjuncts.push_back(std::move(jd));
  }
  return Json{{"record", "formula"},
              {"vars", names},
              {"conjuncts", conjuncts},
              {"rendered", formula_to_string(f, names)}};
}

Json verdict_record(const Verdict& v, const std::vector<std::string>& names,
                    const std::vector<std::size_t>& permutation) {
  Json j{{"record", "verdict"},
         {"verdict", v.terminates ? "terminates" : "nonterminates"},
         {"permutation", permutation}};
  if (!v.terminates) {
    Json w = Json::object();
    for (std::size_t i = 0; i < names.size(); ++i) w[names[i]] = to_string(v.witness[i]);
    j["witness"] = w;
    j["eventual_prefix"] =
        v.eventual_prefix ? Json(*v.eventual_prefix) : Json(nullptr);
  }
  return j;
}

Json trace_record(const Trace& t, const std::vector<std::string>& names) {
  Json states = Json::array();
  for (const auto& s : t.states) {
    Json js = Json::array();
    for (const auto& v : s) js.push_back(to_string(v));
    states.push_back(std::move(js));
  }
  Json guard = Json::array();
  for (bool g : t.guard_holds) guard.push_back(g);
  return Json{{"record", "trace"}, {"vars", names}, {"states", states}, {"guard", guard}};
}

} // namespace triloop
