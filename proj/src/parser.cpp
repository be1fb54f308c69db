#include "triloop/parser.hpp"

#include "triloop/errors.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <sstream>

namespace triloop {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Cursor over a single physical line; columns are 1-based and count from
// the start of the original line.
class LineCursor {
public:
  LineCursor(std::string text, std::size_t line_no, std::size_t col_offset)
      : text_(std::move(text)), line_(line_no), offset_(col_offset) {}

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  bool eof() {
    skip_ws();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool consume(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool consume_word(const std::string& w) {
    skip_ws();
    if (text_.compare(pos_, w.size(), w) == 0) {
      // Keyword-like words must not swallow an identifier prefix.
      if (ident_char(w.back()) && pos_ + w.size() < text_.size() &&
          ident_char(text_[pos_ + w.size()]))
        return false;
      pos_ += w.size();
      return true;
    }
    return false;
  }

  std::size_t col() { return offset_ + pos_ + 1; }
  std::size_t line() const { return line_; }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line_, col()); }

  std::string parse_ident() {
    skip_ws();
    if (pos_ >= text_.size() || !ident_start(text_[pos_])) fail("expected identifier");
    std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  Int parse_natural() {
    skip_ws();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected number");
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return Int(text_.substr(start, pos_ - start));
  }

  // rational := integer | integer "/" positive-integer
  Rational parse_rational() {
    Int n = parse_natural();
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      std::size_t dcol = col();
      Int d = parse_natural();
      if (d == 0) throw ParseError("zero denominator", line_, dcol);
      return Rational(n, d);
    }
    return Rational(n);
  }

  // linexpr := ["+"|"-"] term (("+"|"-") term)*
  // term    := rational ["*" ident] | ident
  AffineExpr parse_linexpr(const std::map<std::string, std::size_t>& vars) {
    AffineExpr e;
    bool first = true;
    while (true) {
      skip_ws();
      Rational sign(1);
      if (consume('-')) sign = -1;
      else if (consume('+')) sign = 1;
      else if (!first) break;
      parse_term(vars, sign, e);
      first = false;
      skip_ws();
      if (pos_ >= text_.size() || (text_[pos_] != '+' && text_[pos_] != '-')) break;
    }
    return e;
  }

private:
  void parse_term(const std::map<std::string, std::size_t>& vars, const Rational& sign,
                  AffineExpr& e) {
    skip_ws();
    if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      Rational c = sign * parse_rational();
      skip_ws();
      if (consume('*')) {
        std::size_t vcol = col();
        skip_ws();
        if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
          throw ParseError("expected variable after '*'", line_, vcol);
        std::string name = parse_ident();
        e.add_term(lookup(vars, name, vcol), c);
        reject_nonlinear();
      } else {
        e.add_constant(c);
      }
      return;
    }
    std::size_t vcol = col();
    std::string name = parse_ident();
    Rational c = sign;
    // "x/2" reads as x scaled by 1/2 (guards only; update coefficients are
    // re-checked for integrality by the caller).
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      std::size_t dcol = col();
      Int d = parse_natural();
      if (d == 0) throw ParseError("zero denominator", line_, dcol);
      c /= Rational(d);
    }
    e.add_term(lookup(vars, name, vcol), c);
    reject_nonlinear();
  }

  // A '*' directly after a variable means a variable-times-something
  // product, which the affine grammar has no place for.
  void reject_nonlinear() {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '*')
      fail("nonlinear term: variable used as a factor");
  }

  VarId lookup(const std::map<std::string, std::size_t>& vars, const std::string& name,
               std::size_t at_col) {
    auto it = vars.find(name);
    if (it == vars.end())
      throw ParseError("unknown variable '" + name + "'", line_, at_col);
    return VarId{it->second};
  }

  std::string text_;
  std::size_t pos_{0};
  std::size_t line_;
  std::size_t offset_;
};

struct Line {
  std::string text;
  std::size_t no;
};

std::vector<Line> split_lines(const std::string& text) {
  std::vector<Line> lines;
  std::size_t no = 1;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back({cur, no++});
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  if (!cur.empty()) lines.push_back({cur, no});
  return lines;
}

bool blank(const std::string& s) {
  for (char c : s)
    if (c != ' ' && c != '\t') return false;
  return true;
}

// Multiplies by the lcm of coefficient denominators, giving an integer
// expression defining the same comparison with 0.
AffineExpr clear_denominators(const AffineExpr& e) {
  Int l = e.denominator_lcm();
  return l == 1 ? e : e * Rational(l);
}

} // namespace

Loop parse_loop(const std::string& text) {
  auto lines = split_lines(text);
  std::size_t li = 0;
  auto next_line = [&]() -> Line* {
    while (li < lines.size() && blank(lines[li].text)) ++li;
    return li < lines.size() ? &lines[li++] : nullptr;
  };
  auto last_line_no = [&]() { return lines.empty() ? 1 : lines.back().no; };

  // vars: header
  Line* l = next_line();
  if (!l) throw ParseError("expected 'vars:' header", 1, 1);
  {
    LineCursor c(l->text, l->no, 0);
    if (!c.consume_word("vars:")) c.fail("expected 'vars:' header");
    Loop loop;
    std::map<std::string, std::size_t> vars;
    while (!c.eof()) {
      std::size_t vcol = c.col();
      std::string name = c.parse_ident();
      if (vars.count(name))
        throw ParseError("duplicate variable '" + name + "'", l->no, vcol);
      vars[name] = loop.var_names.size();
      loop.var_names.push_back(name);
    }
    if (loop.var_names.empty()) c.fail("expected at least one variable");

    // guard: line
    l = next_line();
    if (!l) throw ParseError("expected 'guard:' line", last_line_no(), 1);
    LineCursor g(l->text, l->no, 0);
    if (!g.consume_word("guard:")) g.fail("expected 'guard:' line");
    if (g.consume_word("true")) {
      if (!g.eof()) g.fail("unexpected input after 'true'");
    } else {
      while (true) {
        AffineExpr lhs = g.parse_linexpr(vars);
        bool strict;
        if (g.consume_word(">=")) strict = false;
        else if (g.consume('>')) strict = true;
        else g.fail("expected '>' or '>=' in guard atom");
        AffineExpr rhs = g.parse_linexpr(vars);
        AffineExpr atom = clear_denominators(lhs - rhs);
        // Over the integers, e >= 0 is e + 1 > 0.
        if (!strict) atom.add_constant(Rational(1));
        loop.guard.atoms.push_back(atom);
        if (g.eof()) break;
        if (!g.consume_word("&&")) g.fail("expected '&&' between guard atoms");
      }
    }

    // update: header
    l = next_line();
    if (!l) throw ParseError("expected 'update:' line", last_line_no(), 1);
    LineCursor u(l->text, l->no, 0);
    if (!u.consume_word("update:") || !u.eof()) u.fail("expected 'update:' line");

    // one assignment per declared variable
    std::size_t d = loop.var_names.size();
    loop.update.assign(d, std::vector<Int>(d, Int(0)));
    loop.offset.assign(d, Int(0));
    std::vector<bool> assigned(d, false);
    while ((l = next_line())) {
      LineCursor a(l->text, l->no, 0);
      std::size_t vcol = a.col();
      std::string name = a.parse_ident();
      auto it = vars.find(name);
      if (it == vars.end())
        throw ParseError("unknown variable '" + name + "'", l->no, vcol);
      std::size_t i = it->second;
      if (assigned[i])
        throw ParseError("variable '" + name + "' assigned twice", l->no, vcol);
      if (!a.consume_word(":=")) a.fail("expected ':='");
      std::size_t rcol = a.col();
      AffineExpr rhs = a.parse_linexpr(vars);
      if (!a.eof()) a.fail("unexpected input after assignment");
      if (denominator(rhs.constant()) != 1)
        throw ParseError("non-integer update coefficient", l->no, rcol);
      for (const auto& [v, coeff] : rhs.coeffs())
        if (denominator(coeff) != 1)
          throw ParseError("non-integer update coefficient", l->no, rcol);
      assigned[i] = true;
      loop.offset[i] = numerator(rhs.constant());
      for (const auto& [v, coeff] : rhs.coeffs()) loop.update[i][v.index] = numerator(coeff);
    }
    for (std::size_t i = 0; i < d; ++i)
      if (!assigned[i])
        throw ParseError("variable '" + loop.var_names[i] + "' has no assignment",
                         last_line_no(), 1);
    return loop;
  }
}

std::string print_loop(const Loop& loop) {
  std::ostringstream out;
  out << "vars:";
  for (const auto& n : loop.var_names) out << " " << n;
  out << "\nguard:";
  if (loop.guard.atoms.empty()) {
    out << " true";
  } else {
    bool first = true;
    for (const auto& a : loop.guard.atoms) {
      out << (first ? " " : " && ") << a.to_string(loop.var_names) << " > 0";
      first = false;
    }
  }
  out << "\nupdate:\n";
  for (std::size_t i = 0; i < loop.dim(); ++i) {
    AffineExpr rhs(Rational(loop.offset[i]));
    for (std::size_t j = 0; j < loop.dim(); ++j)
      rhs.add_term(VarId{j}, Rational(loop.update[i][j]));
    out << loop.var_names[i] << " := " << rhs.to_string(loop.var_names) << "\n";
  }
  return out.str();
}

} // namespace triloop
