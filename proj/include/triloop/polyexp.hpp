#pragma once

#include "triloop/affine.hpp"
#include "triloop/errors.hpp"
#include "triloop/rational.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace triloop {

// Conjunction of literals over the step counter n: at most one equality
// n = c plus finitely many exclusions n != c.  Canonical form: when the
// equality is present the exclusion set is empty (a consistent equality
// subsumes every exclusion); contradictory combinations are rejected at
// construction so owning terms get dropped instead.
class CondConj {
public:
  CondConj() = default; // trivially true

  static CondConj eq(std::uint64_t c) {
    CondConj k;
    k.equals_ = c;
    return k;
  }

  static CondConj neq(std::uint64_t c) {
    CondConj k;
    k.excludes_.insert(c);
    return k;
  }

  // n > c, i.e. n differs from 0..c.
  static CondConj greater(std::uint64_t c) {
    CondConj k;
    for (std::uint64_t i = 0; i <= c; ++i) k.excludes_.insert(i);
    return k;
  }

  // Canonicalizing constructor; nullopt when the literals are contradictory.
  static std::optional<CondConj> make(std::optional<std::uint64_t> equals,
                                      std::set<std::uint64_t> excludes) {
    CondConj k;
    if (equals) {
      if (excludes.count(*equals)) return std::nullopt;
      k.equals_ = equals;
    } else {
      k.excludes_ = std::move(excludes);
    }
    return k;
  }

  bool is_true() const { return !equals_ && excludes_.empty(); }
  const std::optional<std::uint64_t>& equals() const { return equals_; }
  const std::set<std::uint64_t>& excludes() const { return excludes_; }

  bool holds_at(std::uint64_t n) const {
    if (equals_) return n == *equals_;
    return excludes_.count(n) == 0;
  }

  std::optional<CondConj> conjoin(const CondConj& o) const {
    std::optional<std::uint64_t> eq;
    if (equals_ && o.equals_ && *equals_ != *o.equals_) return std::nullopt;
    eq = equals_ ? equals_ : o.equals_;
    std::set<std::uint64_t> ex = excludes_;
    ex.insert(o.excludes_.begin(), o.excludes_.end());
    if (eq && ex.count(*eq)) return std::nullopt;
    return make(eq, std::move(ex));
  }

  // Substitutes n-1 for n: every literal constant moves up by one.
  CondConj shifted_up() const {
    CondConj k;
    if (equals_) k.equals_ = *equals_ + 1;
    for (auto c : excludes_) k.excludes_.insert(c + 1);
    return k;
  }

  // Largest constant mentioned by any literal; -1 when trivially true.
  std::int64_t max_constant() const {
    if (equals_) return static_cast<std::int64_t>(*equals_);
    if (!excludes_.empty()) return static_cast<std::int64_t>(*excludes_.rbegin());
    return -1;
  }

  std::strong_ordering order(const CondConj& o) const {
    if (equals_.has_value() != o.equals_.has_value())
      return equals_.has_value() ? std::strong_ordering::greater
                                 : std::strong_ordering::less;
    if (equals_ && *equals_ != *o.equals_)
      return *equals_ <=> *o.equals_;
    if (auto c = excludes_.size() <=> o.excludes_.size(); c != std::strong_ordering::equal)
      return c;
    auto it = excludes_.begin();
    auto jt = o.excludes_.begin();
    for (; it != excludes_.end(); ++it, ++jt)
      if (auto c = *it <=> *jt; c != std::strong_ordering::equal) return c;
    return std::strong_ordering::equal;
  }

  friend bool operator==(const CondConj&, const CondConj&) = default;

  // "n=2", "n!=0", "n>3" (contiguous exclusions from 0), "n!=1&n!=4".
  std::string to_string() const;

private:
  std::optional<std::uint64_t> equals_;
  std::set<std::uint64_t> excludes_;
};

// One addend of a poly-exponential expression: cond * alpha * n^power * base^n
// with alpha affine over the program variables and base >= 1.
struct PeTerm {
  CondConj cond;
  AffineExpr alpha;
  std::uint64_t power{0};
  Int base{1};

  friend bool operator==(const PeTerm&, const PeTerm&) = default;
};

// Poly-exponential expression: finite sum of PeTerms.  Canonical form:
// no zero alphas, at most one term per (base, power, cond) key, terms
// sorted descending by that key.  The empty sum is zero.
class PolyExp {
public:
  PolyExp() = default;

  explicit PolyExp(const AffineExpr& alpha) {
    add_term(PeTerm{CondConj{}, alpha, 0, Int(1)});
  }

  explicit PolyExp(std::vector<PeTerm> terms) {
    for (auto& t : terms) add_term(std::move(t));
  }

  static PolyExp zero() { return PolyExp{}; }

  bool is_zero() const { return terms_.empty(); }
  const std::vector<PeTerm>& terms() const { return terms_; }

  void add_term(PeTerm t);

  PolyExp& operator+=(const PolyExp& o) {
    for (const auto& t : o.terms_) add_term(t);
    return *this;
  }

  friend PolyExp operator+(PolyExp a, const PolyExp& b) { return a += b; }

  PolyExp scaled(const Rational& s) const {
    PolyExp out;
    if (s == 0) return out;
    for (auto t : terms_) {
      t.alpha *= s;
      out.add_term(std::move(t));
    }
    return out;
  }

  // Exact value at step n under a full assignment of the program variables.
  Rational eval(std::uint64_t n, const std::vector<Rational>& state) const {
    Rational acc(0);
    for (const auto& t : terms_) {
      if (!t.cond.holds_at(n)) continue;
      acc += t.alpha.eval(state) * Rational(int_pow(Int(n), t.power)) *
             Rational(int_pow(t.base, n));
    }
    return acc;
  }

  // Largest literal constant in any condition; -1 when all are true.
  std::int64_t max_constant() const {
    std::int64_t m = -1;
    for (const auto& t : terms_) m = std::max(m, t.cond.max_constant());
    return m;
  }

  friend bool operator==(const PolyExp&, const PolyExp&) = default;

  std::string to_string(const std::vector<std::string>& names) const;

private:
  std::vector<PeTerm> terms_;
};

// Condition-free poly-exponential term: alpha * n^power * base^n.
struct NormTerm {
  AffineExpr alpha;
  std::uint64_t power{0};
  Int base{1};

  friend bool operator==(const NormTerm&, const NormTerm&) = default;
};

// Condition-free poly-exponential expression.  Canonical: (base, power)
// keys pairwise distinct, sorted descending, no zero alphas.  Descending
// key order is dominance order for n -> infinity, so the first term rules
// the asymptotic sign.
class NormPolyExp {
public:
  NormPolyExp() = default;

  explicit NormPolyExp(std::vector<NormTerm> terms) {
    for (auto& t : terms) add_term(std::move(t));
  }

  bool is_zero() const { return terms_.empty(); }
  const std::vector<NormTerm>& terms() const { return terms_; }

  void add_term(NormTerm t);

  NormPolyExp& operator+=(const NormPolyExp& o) {
    for (const auto& t : o.terms_) add_term(t);
    return *this;
  }

  friend NormPolyExp operator+(NormPolyExp a, const NormPolyExp& b) { return a += b; }

  NormPolyExp scaled(const Rational& s) const {
    NormPolyExp out;
    if (s == 0) return out;
    for (auto t : terms_) {
      t.alpha *= s;
      out.add_term(std::move(t));
    }
    return out;
  }

  Rational eval(std::uint64_t n, const std::vector<Rational>& state) const {
    Rational acc(0);
    for (const auto& t : terms_)
      acc += t.alpha.eval(state) * Rational(int_pow(Int(n), t.power)) *
             Rational(int_pow(t.base, n));
    return acc;
  }

  // Instantiates every alpha at the given state, producing an expression
  // whose alphas are constants (terms vanishing at the state are dropped).
  NormPolyExp instantiate(const std::vector<Rational>& state) const {
    NormPolyExp out;
    for (const auto& t : terms_) {
      Rational v = t.alpha.eval(state);
      if (v == 0) continue;
      out.add_term(NormTerm{AffineExpr(v), t.power, t.base});
    }
    return out;
  }

  friend bool operator==(const NormPolyExp&, const NormPolyExp&) = default;

  std::string to_string(const std::vector<std::string>& names) const;

private:
  std::vector<NormTerm> terms_;
};

} // namespace triloop
