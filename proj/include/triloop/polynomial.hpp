#pragma once

#include "triloop/errors.hpp"
#include "triloop/rational.hpp"

#include <cstddef>
#include <vector>

namespace triloop {

// Univariate polynomial over the rationals in the step counter n.
// Dense coefficient list, lowest power first; the zero polynomial is the
// empty list, so the leading coefficient is always nonzero.
class Polynomial {
public:
  Polynomial() = default;

  explicit Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    trim();
  }

  static Polynomial constant(Rational c) {
    return Polynomial(std::vector<Rational>{std::move(c)});
  }

  static Polynomial monomial(Rational c, std::size_t power) {
    std::vector<Rational> v(power + 1, Rational(0));
    v[power] = std::move(c);
    return Polynomial(std::move(v));
  }

  bool is_zero() const { return coeffs_.empty(); }

  // Only defined for nonzero polynomials.
  std::size_t degree() const {
    if (is_zero()) throw InternalError("degree of zero polynomial");
    return coeffs_.size() - 1;
  }

  const std::vector<Rational>& coeffs() const { return coeffs_; }

  Rational coeff(std::size_t power) const {
    return power < coeffs_.size() ? coeffs_[power] : Rational(0);
  }

  Rational leading() const {
    if (is_zero()) throw InternalError("leading coefficient of zero polynomial");
    return coeffs_.back();
  }

  Rational eval(const Rational& n) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * n + *it;
    return acc;
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }

  Polynomial& operator-=(const Polynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), Rational(0));
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }

  Polynomial& operator*=(const Rational& s) {
    if (s == 0) {
      coeffs_.clear();
      return *this;
    }
    for (auto& c : coeffs_) c *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }

  // p(n + delta) via binomial expansion.
  Polynomial shifted_arg(const Rational& delta) const {
    std::vector<Rational> out(coeffs_.size(), Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      // Distribute coeffs_[i] * (n + delta)^i; binom tracks C(i, k).
      Rational binom(1);
      Rational dpow(1);
      for (std::size_t k = 0; k <= i; ++k) {
        out[i - k] += coeffs_[i] * binom * dpow;
        binom = binom * Rational(Int(i - k)) / Rational(Int(k + 1));
        dpow *= delta;
      }
    }
    return Polynomial(std::move(out));
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_;
};

} // namespace triloop
