#include "triloop/polyexp.hpp"

#include <algorithm>
#include <sstream>

namespace triloop {

namespace {

std::strong_ordering compare_int(const Int& a, const Int& b) {
  if (a < b) return std::strong_ordering::less;
  if (b < a) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

// Key order for PeTerms: (base, power, cond), used descending.
std::strong_ordering key_order(const PeTerm& a, const PeTerm& b) {
  if (auto c = compare_int(a.base, b.base); c != std::strong_ordering::equal) return c;
  if (auto c = a.power <=> b.power; c != std::strong_ordering::equal) return c;
  return a.cond.order(b.cond);
}

std::strong_ordering key_order(const NormTerm& a, const NormTerm& b) {
  if (auto c = compare_int(a.base, b.base); c != std::strong_ordering::equal) return c;
  return a.power <=> b.power;
}

// Renders one multiplicative factor chain  [cond*] alpha [*n^p] [*base^n].
// A unit alpha is omitted when another factor is present; negative or
// compound alphas are parenthesized so the rendering stays unambiguous.
std::string render_term(const std::string& cond, const AffineExpr& alpha,
                        std::uint64_t power, const Int& base,
                        const std::vector<std::string>& names) {
  std::vector<std::string> factors;
  if (!cond.empty()) factors.push_back("⟦" + cond + "⟧");

  bool has_growth = power > 0 || base != 1;
  std::string a = alpha.to_string(names);
  bool atomic = alpha.is_constant()
                    ? !(alpha.constant() < 0)
                    : (alpha.coeffs().size() == 1 && alpha.constant() == 0 &&
                       alpha.coeffs().begin()->second == 1);
  if (!(a == "1" && has_growth)) {
    if (!atomic && (has_growth || !cond.empty())) a = "(" + a + ")";
    factors.push_back(a);
  }
  if (power > 0) factors.push_back(power == 1 ? "n" : "n^" + std::to_string(power));
  if (base != 1) factors.push_back(to_string(base) + "^n");

  std::string out;
  for (const auto& f : factors) {
    if (!out.empty()) out += "*";
    out += f;
  }
  return out;
}

std::string join_terms(const std::vector<std::string>& rendered) {
  if (rendered.empty()) return "0";
  std::string out;
  for (const auto& r : rendered) {
    if (!out.empty()) out += " + ";
    out += r;
  }
  return out;
}

} // namespace

std::string CondConj::to_string() const {
  if (equals_) return "n=" + std::to_string(*equals_);
  if (excludes_.empty()) return "";
  // Contiguous exclusions 0..c of size >= 2 read as n>c.
  bool contiguous = *excludes_.begin() == 0 &&
                    *excludes_.rbegin() == excludes_.size() - 1;
  if (contiguous && excludes_.size() >= 2)
    return "n>" + std::to_string(*excludes_.rbegin());
  std::string out;
  for (auto c : excludes_) {
    if (!out.empty()) out += "&";
    out += "n!=" + std::to_string(c);
  }
  return out;
}

void PolyExp::add_term(PeTerm t) {
  if (t.alpha.is_zero()) return;
  if (t.base < 1) throw InternalError("poly-exponential base must be >= 1");
  // Binary search for the key position in the descending order.
  auto it = std::lower_bound(terms_.begin(), terms_.end(), t,
                             [](const PeTerm& a, const PeTerm& b) {
                               return key_order(a, b) == std::strong_ordering::greater;
                             });
  if (it != terms_.end() && key_order(*it, t) == std::strong_ordering::equal) {
    it->alpha += t.alpha;
    if (it->alpha.is_zero()) terms_.erase(it);
    return;
  }
  terms_.insert(it, std::move(t));
}

void NormPolyExp::add_term(NormTerm t) {
  if (t.alpha.is_zero()) return;
  if (t.base < 1) throw InternalError("poly-exponential base must be >= 1");
  auto it = std::lower_bound(terms_.begin(), terms_.end(), t,
                             [](const NormTerm& a, const NormTerm& b) {
                               return key_order(a, b) == std::strong_ordering::greater;
                             });
  if (it != terms_.end() && key_order(*it, t) == std::strong_ordering::equal) {
    it->alpha += t.alpha;
    if (it->alpha.is_zero()) terms_.erase(it);
    return;
  }
  terms_.insert(it, std::move(t));
}

std::string AffineExpr::to_string(const std::vector<std::string>& names) const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  auto emit = [&](const Rational& c, const std::string& sym) {
    bool neg = c < 0;
    Rational mag = neg ? Rational(-c) : c;
    if (first) {
      if (neg) out << "-";
      first = false;
    } else {
      out << (neg ? " - " : " + ");
    }
    if (sym.empty()) {
      out << triloop::to_string(mag);
    } else {
      if (mag != 1) out << triloop::to_string(mag) << "*";
      out << sym;
    }
  };
  for (const auto& [v, c] : coeffs_) {
    if (v.index >= names.size())
      throw InternalError("render: variable index out of range");
    emit(c, names[v.index]);
  }
  if (constant_ != 0) emit(constant_, "");
  return out.str();
}

std::string PolyExp::to_string(const std::vector<std::string>& names) const {
  std::vector<std::string> rendered;
  rendered.reserve(terms_.size());
  for (const auto& t : terms_)
    rendered.push_back(render_term(t.cond.to_string(), t.alpha, t.power, t.base, names));
  return join_terms(rendered);
}

std::string NormPolyExp::to_string(const std::vector<std::string>& names) const {
  std::vector<std::string> rendered;
  rendered.reserve(terms_.size());
  for (const auto& t : terms_)
    rendered.push_back(render_term("", t.alpha, t.power, t.base, names));
  return join_terms(rendered);
}

} // namespace triloop
