#pragma once

#include <cctype>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gpdcalc/chart.hpp"
#include "gpdcalc/rational.hpp"

namespace gpdcalc {

// Canonical multivariate polynomial over exact rationals in chart coordinates.
// Stored sparsely as exponent-vector -> coefficient with no zero entries, so
// equality of canonical forms is map equality and every identity check is a
// zero test.
class PolyExpr {
 public:
  using Exponents = std::vector<unsigned>;
  using Monomials = std::map<Exponents, Rational>;

  explicit PolyExpr(ChartPtr chart) : chart_(std::move(chart)) {}

  static PolyExpr zero(ChartPtr chart) { return PolyExpr(std::move(chart)); }

  static PolyExpr constant(ChartPtr chart, Rational c) {
    PolyExpr p(std::move(chart));
    if (!c.is_zero()) p.monomials_[Exponents(p.chart_->size(), 0)] = std::move(c);
    return p;
  }

  static PolyExpr coordinate(ChartPtr chart, const std::string& name) {
    PolyExpr p(chart);
    Exponents e(chart->size(), 0);
    e[chart->index(name)] = 1;
    p.monomials_[std::move(e)] = Rational(1);
    return p;
  }

  static PolyExpr monomial(ChartPtr chart, Exponents exps, Rational c) {
    PolyExpr p(std::move(chart));
    if (!c.is_zero()) p.monomials_[std::move(exps)] = std::move(c);
    return p;
  }

  const ChartPtr& chart() const { return chart_; }
  const Monomials& monomials() const { return monomials_; }
  bool is_zero() const { return monomials_.empty(); }

  bool is_constant() const {
    if (monomials_.empty()) return true;
    if (monomials_.size() != 1) return false;
    const auto& e = monomials_.begin()->first;
    for (unsigned x : e)
      if (x != 0) return false;
    return true;
  }

  Rational constant_value() const {
    if (monomials_.empty()) return Rational(0);
    return monomials_.begin()->second;
  }

  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : monomials_) {
      unsigned t = 0;
      for (unsigned x : e) t += x;
      d = std::max(d, t);
    }
    return d;
  }

  unsigned degree_in(std::size_t coord) const {
    unsigned d = 0;
    for (const auto& [e, c] : monomials_) d = std::max(d, e[coord]);
    return d;
  }

  PolyExpr operator-() const {
    PolyExpr r(chart_);
    for (const auto& [e, c] : monomials_) r.monomials_[e] = -c;
    return r;
  }

  PolyExpr& operator+=(const PolyExpr& o) {
    require_same_chart(o);
    for (const auto& [e, c] : o.monomials_) add_term(e, c);
    return *this;
  }
  PolyExpr& operator-=(const PolyExpr& o) {
    require_same_chart(o);
    for (const auto& [e, c] : o.monomials_) add_term(e, -c);
    return *this;
  }

  friend PolyExpr operator+(PolyExpr a, const PolyExpr& b) { return a += b; }
  friend PolyExpr operator-(PolyExpr a, const PolyExpr& b) { return a -= b; }

  friend PolyExpr operator*(const PolyExpr& a, const PolyExpr& b) {
    a.require_same_chart(b);
    PolyExpr r(a.chart_);
    for (const auto& [ea, ca] : a.monomials_)
      for (const auto& [eb, cb] : b.monomials_) {
        Exponents e = ea;
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }

  PolyExpr& operator*=(const PolyExpr& o) { return *this = *this * o; }

  friend PolyExpr operator*(const PolyExpr& a, const Rational& c) {
    PolyExpr r(a.chart_);
    if (c.is_zero()) return r;
    for (const auto& [e, coeff] : a.monomials_) r.monomials_[e] = coeff * c;
    return r;
  }
  friend PolyExpr operator*(const Rational& c, const PolyExpr& a) { return a * c; }

  PolyExpr pow(unsigned n) const {
    PolyExpr r = constant(chart_, Rational(1));
    for (unsigned i = 0; i < n; ++i) r = r * *this;
    return r;
  }

  friend bool operator==(const PolyExpr& a, const PolyExpr& b) {
    return *a.chart_ == *b.chart_ && a.monomials_ == b.monomials_;
  }
  friend bool operator!=(const PolyExpr& a, const PolyExpr& b) { return !(a == b); }
  friend bool operator<(const PolyExpr& a, const PolyExpr& b) {
    return a.monomials_ < b.monomials_;
  }

  PolyExpr derivative(const std::string& coordinate) const {
    std::size_t i = chart_->index(coordinate);
    PolyExpr r(chart_);
    for (const auto& [e, c] : monomials_) {
      if (e[i] == 0) continue;
      Exponents d = e;
      d[i] -= 1;
      r.add_term(d, c * Rational(e[i]));
    }
    return r;
  }

  // Simultaneous substitution. Every key must be a chart coordinate; bindings
  // must share this chart. Unbound coordinates stay put.
  PolyExpr substitute(const std::map<std::string, PolyExpr>& bindings) const {
    std::vector<const PolyExpr*> target(chart_->size(), nullptr);
    for (const auto& [name, value] : bindings) {
      if (*value.chart_ != *chart_)
        throw Error(ErrorKind::ChartMismatch, "substitution value for '" + name +
                                                  "' lives on a different chart");
      target[chart_->index(name)] = &value;
    }
    PolyExpr r(chart_);
    for (const auto& [e, c] : monomials_) {
      PolyExpr term = constant(chart_, c);
      Exponents kept(chart_->size(), 0);
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (target[i] == nullptr)
          kept[i] = e[i];
        else if (e[i] > 0)
          term = term * target[i]->pow(e[i]);
      }
      term = term * monomial(chart_, kept, Rational(1));
      r += term;
    }
    return r;
  }

  // Canonical text: monomials in descending lexicographic exponent order,
  // '*' between factors, '^' for powers, e.g. "2*q^2*p - 1/3".
  std::string str() const {
    if (monomials_.empty()) return "0";
    std::string out;
    for (auto it = monomials_.rbegin(); it != monomials_.rend(); ++it) {
      const Rational& c = it->second;
      Rational a = c.is_negative() ? -c : c;
      if (out.empty())
        out += c.is_negative() ? "-" : "";
      else
        out += c.is_negative() ? " - " : " + ";
      std::string vars;
      for (std::size_t i = 0; i < it->first.size(); ++i) {
        unsigned x = it->first[i];
        if (x == 0) continue;
        if (!vars.empty()) vars += "*";
        vars += chart_->name(i);
        if (x > 1) vars += "^" + std::to_string(x);
      }
      if (vars.empty())
        out += a.str();
      else if (a.is_one())
        out += vars;
      else
        out += a.str() + "*" + vars;
    }
    return out;
  }

 private:
  void require_same_chart(const PolyExpr& o) const {
    if (*chart_ != *o.chart_)
      throw Error(ErrorKind::ChartMismatch, "polynomial operands live on different charts");
  }

  void add_term(const Exponents& e, const Rational& c) {
    if (c.is_zero()) return;
    auto it = monomials_.find(e);
    if (it == monomials_.end()) {
      monomials_[e] = c;
      return;
    }
    it->second += c;
    if (it->second.is_zero()) monomials_.erase(it);
  }

  ChartPtr chart_;
  Monomials monomials_;
};

namespace detail {

// Recursive-descent parser for the polynomial grammar:
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' factor) | factor-adjacency-not-allowed)*
//   factor := base ('^' uint)?
//   base   := rational | coordinate | '(' expr ')' | '-' factor
//   rational := uint ('/' uint)?
class PolyParser {
 public:
  PolyParser(const std::string& text, ChartPtr chart) : text_(text), chart_(std::move(chart)) {}

  PolyExpr parse() {
    PolyExpr p = expr();
    skip_ws();
    if (pos_ != text_.size()) throw SyntaxError(pos_, "end of input", describe_here());
    return p;
  }

 private:
  PolyExpr expr() {
    PolyExpr p = term();
    for (;;) {
      skip_ws();
      if (peek() == '+') {
        ++pos_;
        p += term();
      } else if (peek() == '-') {
        ++pos_;
        p -= term();
      } else {
        return p;
      }
    }
  }

  PolyExpr term() {
    PolyExpr p = factor();
    for (;;) {
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        p = p * factor();
      } else {
        return p;
      }
    }
  }

  PolyExpr factor() {
    PolyExpr b = base();
    skip_ws();
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      if (!std::isdigit(peek())) throw SyntaxError(pos_, "nonnegative integer exponent", describe_here());
      return b.pow(static_cast<unsigned>(parse_uint()));
    }
    return b;
  }

  PolyExpr base() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      ++pos_;
      PolyExpr p = expr();
      skip_ws();
      if (peek() != ')') throw SyntaxError(pos_, "')'", describe_here());
      ++pos_;
      return p;
    }
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (std::isdigit(c)) {
      BigInt num = parse_uint();
      skip_ws();
      if (peek() == '/') {
        ++pos_;
        skip_ws();
        if (!std::isdigit(peek())) throw SyntaxError(pos_, "denominator digits", describe_here());
        BigInt den = parse_uint();
        if (den == 0) throw SyntaxError(pos_, "nonzero denominator", "0");
        return PolyExpr::constant(chart_, Rational(num, den));
      }
      return PolyExpr::constant(chart_, Rational(num));
    }
    if (std::isalpha(c) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                     text_[pos_] == '_'))
        ++pos_;
      std::string name = text_.substr(start, pos_ - start);
      if (!chart_->has(name)) throw unknown_coordinate(name);
      return PolyExpr::coordinate(chart_, name);
    }
    throw SyntaxError(pos_, "number, coordinate, '(' or '-'", describe_here());
  }

  BigInt parse_uint() {
    BigInt v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      ++pos_;
    }
    return v;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  std::string describe_here() const {
    if (pos_ >= text_.size()) return "end of input";
    return std::string("'") + text_[pos_] + "'";
  }

  const std::string& text_;
  ChartPtr chart_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline PolyExpr parse_poly(const std::string& text, ChartPtr chart) {
  return detail::PolyParser(text, std::move(chart)).parse();
}

}  // namespace gpdcalc
