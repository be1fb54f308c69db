#pragma once

#include "triloop/errors.hpp"
#include "triloop/rational.hpp"

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace triloop {

// Index of a program variable within one loop's variable order.
struct VarId {
  std::size_t index{};

  friend auto operator<=>(const VarId&, const VarId&) = default;
};

// Affine expression c0 + sum_i c_i * x_i over exact rationals.
// Canonical: zero coefficients are never stored.
class AffineExpr {
public:
  AffineExpr() = default;
  explicit AffineExpr(Rational constant) : constant_(std::move(constant)) {}

  static AffineExpr variable(VarId v, Rational coeff = Rational(1)) {
    AffineExpr e;
    e.add_term(v, coeff);
    return e;
  }

  const Rational& constant() const { return constant_; }
  const std::map<VarId, Rational>& coeffs() const { return coeffs_; }

  Rational coeff(VarId v) const {
    auto it = coeffs_.find(v);
    return it == coeffs_.end() ? Rational(0) : it->second;
  }

  bool is_constant() const { return coeffs_.empty(); }
  bool is_zero() const { return coeffs_.empty() && constant_ == 0; }

  void add_term(VarId v, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = coeffs_.emplace(v, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) coeffs_.erase(it);
    }
  }

  void add_constant(const Rational& c) { constant_ += c; }

  AffineExpr& operator+=(const AffineExpr& o) {
    constant_ += o.constant_;
    for (const auto& [v, c] : o.coeffs_) add_term(v, c);
    return *this;
  }

  AffineExpr& operator-=(const AffineExpr& o) {
    constant_ -= o.constant_;
    for (const auto& [v, c] : o.coeffs_) add_term(v, -c);
    return *this;
  }

  AffineExpr& operator*=(const Rational& s) {
    if (s == 0) {
      coeffs_.clear();
      constant_ = 0;
      return *this;
    }
    constant_ *= s;
    for (auto& [v, c] : coeffs_) c *= s;
    return *this;
  }

  friend AffineExpr operator+(AffineExpr a, const AffineExpr& b) { return a += b; }
  friend AffineExpr operator-(AffineExpr a, const AffineExpr& b) { return a -= b; }
  friend AffineExpr operator*(AffineExpr a, const Rational& s) { return a *= s; }
  friend AffineExpr operator*(const Rational& s, AffineExpr a) { return a *= s; }
  friend AffineExpr operator-(AffineExpr a) { return a *= Rational(-1); }

  friend bool operator==(const AffineExpr&, const AffineExpr&) = default;

  // Sparse evaluation; every variable occurring in the expression must be
  // assigned.
  Rational eval(const std::map<VarId, Rational>& asg) const {
    Rational acc = constant_;
    for (const auto& [v, c] : coeffs_) {
      auto it = asg.find(v);
      if (it == asg.end())
        throw MissingVariableError("no value for variable #" + std::to_string(v.index));
      acc += c * it->second;
    }
    return acc;
  }

  // Dense evaluation against a full state vector.
  Rational eval(const std::vector<Rational>& state) const {
    Rational acc = constant_;
    for (const auto& [v, c] : coeffs_) {
      if (v.index >= state.size())
        throw MissingVariableError("no value for variable #" + std::to_string(v.index));
      acc += c * state[v.index];
    }
    return acc;
  }

  // Replaces every variable by the given affine expression of its index;
  // out-of-range indices are an internal error.
  AffineExpr substitute(const std::vector<AffineExpr>& images) const {
    AffineExpr result(constant_);
    for (const auto& [v, c] : coeffs_) {
      if (v.index >= images.size())
        throw InternalError("substitute: variable index out of range");
      result += images[v.index] * c;
    }
    return result;
  }

  // Least common multiple of all coefficient denominators (>= 1).
  Int denominator_lcm() const {
    Int l = denominator(constant_);
    for (const auto& [v, c] : coeffs_) l = lcm(l, denominator(c));
    return l;
  }

  // Deterministic rendering: variables by ascending index, constant last.
  // "x - 2*y + 1/2", "0" when zero.
  std::string to_string(const std::vector<std::string>& names) const;

  // Total order for use as a sort key (constant, then coefficient map).
  std::strong_ordering order(const AffineExpr& o) const {
    if (auto c = compare_rat(constant_, o.constant_); c != std::strong_ordering::equal)
      return c;
    auto it = coeffs_.begin();
    auto jt = o.coeffs_.begin();
    for (; it != coeffs_.end() && jt != o.coeffs_.end(); ++it, ++jt) {
      if (auto c = it->first <=> jt->first; c != std::strong_ordering::equal) return c;
      if (auto c = compare_rat(it->second, jt->second); c != std::strong_ordering::equal)
        return c;
    }
    if (it != coeffs_.end()) return std::strong_ordering::greater;
    if (jt != o.coeffs_.end()) return std::strong_ordering::less;
    return std::strong_ordering::equal;
  }

private:
  static std::strong_ordering compare_rat(const Rational& a, const Rational& b) {
    if (a < b) return std::strong_ordering::less;
    if (b < a) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  Rational constant_{0};
  std::map<VarId, Rational> coeffs_;
};

} // namespace triloop
