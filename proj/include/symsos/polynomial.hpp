// Sparse multivariate polynomials over an exact field, graded-lex monomial
// bases, linear substitution and the text grammar used by the CLI and files.
#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "symsos/matrix.hpp"

namespace symsos {

/// Exponent vector, one entry per variable.
using Monomial = std::vector<int>;

inline int total_degree(const Monomial& m) {
  int d = 0;
  for (int e : m) d += e;
  return d;
}

/// Graded lexicographic order: lower total degree first; within a degree,
/// x1 before x2 before ... (x^2 < xy < y^2).
struct GradedLex {
  bool operator()(const Monomial& a, const Monomial& b) const {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
  }
};

inline Monomial monomial_product(const Monomial& a, const Monomial& b) {
  Monomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

/// Total degree with an explicit marker for the zero polynomial.
class Degree {
 public:
  static Degree minus_infinity() { return Degree(); }
  explicit Degree(int v) : value_(v) {}
  bool is_minus_infinity() const { return !value_.has_value(); }
  int value() const {
    if (!value_) throw Error("degree of the zero polynomial is minus infinity");
    return *value_;
  }
  friend bool operator==(const Degree& a, const Degree& b) { return a.value_ == b.value_; }
  friend bool operator<(const Degree& a, const Degree& b) {
    if (!a.value_) return b.value_.has_value();
    if (!b.value_) return false;
    return *a.value_ < *b.value_;
  }

 private:
  Degree() = default;
  std::optional<int> value_;
};

/// All monomials in n variables of total degree exactly k, graded-lex order.
inline std::vector<Monomial> monomials_of_degree(int n, int k) {
  std::vector<Monomial> out;
  Monomial cur(n, 0);
  // recursive fill, largest exponent of x1 first
  auto rec = [&](auto&& self, int var, int left) -> void {
    if (var == n - 1) {
      cur[var] = left;
      out.push_back(cur);
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur[var] = e;
      self(self, var + 1, left - e);
    }
  };
  if (n == 0) {
    if (k == 0) out.push_back(cur);
    return out;
  }
  rec(rec, 0, k);
  return out;
}

/// Ordered list of monomials (the vector Y of a Gram formulation).
struct MonomialVector {
  int nvars = 0;
  std::vector<Monomial> entries;
  std::size_t size() const { return entries.size(); }
  std::size_t index_of(const Monomial& m) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), m, GradedLex());
    if (it == entries.end() || *it != m) throw Error("monomial not in vector");
    return static_cast<std::size_t>(it - entries.begin());
  }
};

/// All monomials of total degree <= d, graded-lex; the constant comes first.
inline MonomialVector monomial_vector(int n, int d) {
  if (n < 1) throw DimensionError("monomial_vector needs at least one variable");
  if (d < 0) throw Error("monomial_vector needs a nonnegative degree");
  MonomialVector v;
  v.nvars = n;
  for (int k = 0; k <= d; ++k) {
    auto part = monomials_of_degree(n, k);
    v.entries.insert(v.entries.end(), part.begin(), part.end());
  }
  return v;
}

template <class F>
class BasicPolynomial {
 public:
  using Terms = std::map<Monomial, F, GradedLex>;

  BasicPolynomial() = default;
  explicit BasicPolynomial(int nvars) : nvars_(nvars) {
    if (nvars < 0) throw DimensionError("negative variable count");
  }
  static BasicPolynomial constant(int nvars, const F& c) {
    BasicPolynomial p(nvars);
    p.add_term(Monomial(nvars, 0), c);
    return p;
  }
  static BasicPolynomial variable(int nvars, int index) {
    BasicPolynomial p(nvars);
    Monomial m(nvars, 0);
    m.at(index) = 1;
    p.add_term(m, F(1));
    return p;
  }
  static BasicPolynomial monomial(const Monomial& m, const F& c = F(1)) {
    BasicPolynomial p(static_cast<int>(m.size()));
    p.add_term(m, c);
    return p;
  }

  int nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Degree degree() const {
    if (terms_.empty()) return Degree::minus_infinity();
    return Degree(total_degree(terms_.rbegin()->first));
  }

  F coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? F(0) : it->second;
  }

  void add_term(const Monomial& m, const F& c) {
    if (static_cast<int>(m.size()) != nvars_) throw DimensionError("monomial length does not match nvars");
    if (Field<F>::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (Field<F>::is_zero(it->second)) terms_.erase(it);
    }
  }

  BasicPolynomial& operator+=(const BasicPolynomial& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  BasicPolynomial& operator-=(const BasicPolynomial& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  BasicPolynomial operator-() const { return scaled(F(-1)); }

  friend BasicPolynomial operator+(BasicPolynomial a, const BasicPolynomial& b) { return a += b; }
  friend BasicPolynomial operator-(BasicPolynomial a, const BasicPolynomial& b) { return a -= b; }
  friend BasicPolynomial operator*(const BasicPolynomial& a, const BasicPolynomial& b) {
    a.check(b);
    BasicPolynomial out(a.nvars_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add_term(monomial_product(ma, mb), ca * cb);
    return out;
  }
  BasicPolynomial& operator*=(const BasicPolynomial& o) {
    *this = *this * o;
    return *this;
  }
  friend bool operator==(const BasicPolynomial& a, const BasicPolynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const BasicPolynomial& a, const BasicPolynomial& b) { return !(a == b); }

  BasicPolynomial scaled(const F& s) const {
    BasicPolynomial out(nvars_);
    if (Field<F>::is_zero(s)) return out;
    for (const auto& [m, c] : terms_) out.terms_.emplace(m, c * s);
    return out;
  }

  BasicPolynomial pow(int e) const {
    if (e < 0) throw Error("negative polynomial power");
    BasicPolynomial result = constant(nvars_, F(1));
    BasicPolynomial base = *this;
    while (e > 0) {
      if (e & 1) result *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return result;
  }

  /// Part of total degree exactly k.
  BasicPolynomial homogeneous_part(int k) const {
    BasicPolynomial out(nvars_);
    for (const auto& [m, c] : terms_)
      if (total_degree(m) == k) out.terms_.emplace(m, c);
    return out;
  }
  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    return total_degree(terms_.begin()->first) == total_degree(terms_.rbegin()->first);
  }

  F evaluate(const std::vector<F>& point) const {
    if (static_cast<int>(point.size()) != nvars_) throw DimensionError("evaluation point has wrong length");
    F sum(0);
    for (const auto& [m, c] : terms_) {
      F v = c;
      for (int i = 0; i < nvars_; ++i)
        for (int e = 0; e < m[i]; ++e) v *= point[i];
      sum += v;
    }
    return sum;
  }

  template <class G, class Conv>
  BasicPolynomial<G> map_coefficients(Conv conv) const {
    BasicPolynomial<G> out(nvars_);
    for (const auto& [m, c] : terms_) out.add_term(m, conv(c));
    return out;
  }

 private:
  void check(const BasicPolynomial& o) const {
    if (o.nvars_ != nvars_) throw DimensionError("polynomials have different numbers of variables");
  }

  int nvars_ = 0;
  Terms terms_;
};

using Polynomial = BasicPolynomial<Rational>;
using AlgPolynomial = BasicPolynomial<AlgNum>;

inline AlgPolynomial to_alg(const Polynomial& p) {
  return p.map_coefficients<AlgNum>([](const Rational& c) { return AlgNum(c); });
}
/// Throws when a coefficient is irrational.
inline Polynomial to_rational(const AlgPolynomial& p) {
  return p.map_coefficients<Rational>([](const AlgNum& c) { return c.to_rational(); });
}

/// True when every row of m has a single nonzero entry equal to +-1.
template <class F>
bool is_signed_permutation(const Matrix<F>& m) {
  if (!m.square()) return false;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    int nz = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const F& v = m(r, c);
      if (Field<F>::is_zero(v)) continue;
      if (v != F(1) && v != F(-1)) return false;
      ++nz;
    }
    if (nz != 1) return false;
  }
  return true;
}

/// p(M x): every variable x_i is replaced by the i-th entry of M x.
template <class F, class M>
BasicPolynomial<F> substitute_linear(const BasicPolynomial<F>& p, const Matrix<M>& mat) {
  const int n = p.nvars();
  if (!mat.square() || static_cast<int>(mat.rows()) != n)
    throw DimensionError("substitution matrix must be " + std::to_string(n) + "x" + std::to_string(n));
  BasicPolynomial<F> out(n);
  if (is_signed_permutation(mat)) {
    std::vector<int> target(n);
    std::vector<bool> negative(n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        if (!Field<M>::is_zero(mat(r, c))) {
          target[r] = c;
          negative[r] = mat(r, c) == M(-1);
        }
    for (const auto& [m, coef] : p.terms()) {
      Monomial img(n, 0);
      int parity = 0;
      for (int i = 0; i < n; ++i) {
        img[target[i]] += m[i];
        if (negative[i]) parity += m[i];
      }
      out.add_term(img, (parity % 2) ? F(-coef) : coef);
    }
    return out;
  }
  std::vector<BasicPolynomial<F>> forms;
  for (int i = 0; i < n; ++i) {
    BasicPolynomial<F> l(n);
    for (int j = 0; j < n; ++j) {
      Monomial m(n, 0);
      m[j] = 1;
      l.add_term(m, F(mat(i, j)));
    }
    forms.push_back(std::move(l));
  }
  std::map<std::pair<int, int>, BasicPolynomial<F>> cache;
  auto power = [&](int var, int e) -> const BasicPolynomial<F>& {
    auto key = std::make_pair(var, e);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    return cache.emplace(key, forms[var].pow(e)).first->second;
  };
  for (const auto& [m, coef] : p.terms()) {
    BasicPolynomial<F> term = BasicPolynomial<F>::constant(n, coef);
    for (int i = 0; i < n; ++i)
      if (m[i] > 0) term *= power(i, m[i]);
    out += term;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Text grammar.
//
//   expr    := ['+'|'-'] term (('+'|'-') term)*
//   term    := factor (("*"|"/") factor)*   (divisor must be constant)
//   factor  := primary ['^' integer]
//   primary := integer ['/' integer] | variable | 'sqrt(' integer ')' | '(' expr ')'

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : Error("parse error at position " + std::to_string(pos) + ": " + msg), position(pos) {}
  std::size_t position;
};

namespace detail {

class PolyParser {
 public:
  PolyParser(std::string_view text, const std::vector<std::string>& vars) : s_(text), vars_(vars) {}

  AlgPolynomial parse() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("empty polynomial", pos_);
    AlgPolynomial p = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError(std::string("unexpected character '") + s_[pos_] + "'", pos_);
    return p;
  }

 private:
  int n() const { return static_cast<int>(vars_.size()); }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  AlgPolynomial expr() {
    AlgPolynomial acc(n());
    bool neg = false;
    if (peek('+')) {
      ++pos_;
    } else if (peek('-')) {
      ++pos_;
      neg = true;
    }
    AlgPolynomial t = term();
    acc += neg ? -t : t;
    while (true) {
      if (peek('+')) {
        ++pos_;
        acc += term();
      } else if (peek('-')) {
        ++pos_;
        acc -= term();
      } else {
        break;
      }
    }
    return acc;
  }

  AlgPolynomial term() {
    AlgPolynomial acc = factor();
    while (true) {
      if (peek('*')) {
        ++pos_;
        acc *= factor();
      } else if (peek('/')) {
        std::size_t at = pos_++;
        AlgPolynomial d = factor();
        if (d.degree().is_minus_infinity()) throw ParseError("division by zero", at);
        if (d.degree().value() != 0) throw ParseError("can only divide by a constant", at);
        acc = acc.scaled(d.coefficient(Monomial(n(), 0)).inverse());
      } else {
        break;
      }
    }
    return acc;
  }

  AlgPolynomial factor() {
    AlgPolynomial base = primary();
    if (peek('^')) {
      ++pos_;
      skip();
      std::size_t at = pos_;
      if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '('))
        throw ParseError("exponent must be a nonnegative integer", at);
      std::string digits = read_digits();
      if (digits.empty()) throw ParseError("exponent must be a nonnegative integer", at);
      if (pos_ < s_.size() && (s_[pos_] == '.' || s_[pos_] == '/'))
        throw ParseError("exponent must be a nonnegative integer", at);
      base = base.pow(std::stoi(digits));
    }
    return base;
  }

  std::string read_digits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  AlgPolynomial primary() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      AlgPolynomial inner = expr();
      if (!peek(')')) throw ParseError("expected ')'", pos_);
      ++pos_;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t at = pos_;
      std::string num = read_digits();
      if (pos_ < s_.size() && s_[pos_] == '.') throw ParseError("decimal literals are not supported", pos_);
      Rational value(Integer(num), Integer(1));
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        std::string den = read_digits();
        if (den.empty()) throw ParseError("expected denominator", pos_);
        Integer d(den);
        if (d == 0) throw ParseError("zero denominator", at);
        value = Rational(Integer(num), d);
        value.canonicalize();
      }
      return AlgPolynomial::constant(n(), AlgNum(value));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t at = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name(s_.substr(at, pos_ - at));
      if (name == "sqrt" && peek('(')) {
        ++pos_;
        skip();
        std::string digits = read_digits();
        if (digits.empty() || !peek(')')) throw ParseError("sqrt takes a positive integer", pos_);
        ++pos_;
        return AlgPolynomial::constant(n(), AlgNum::sqrt_of(std::stol(digits)));
      }
      for (int i = 0; i < n(); ++i)
        if (vars_[i] == name) return AlgPolynomial::variable(n(), i);
      throw ParseError("unknown variable '" + name + "'", at);
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  std::string_view s_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses text with coefficients in the multi-quadratic field.
inline AlgPolynomial parse_alg_polynomial(std::string_view text, const std::vector<std::string>& variables) {
  return detail::PolyParser(text, variables).parse();
}

inline Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& variables) {
  AlgPolynomial p = parse_alg_polynomial(text, variables);
  for (const auto& [m, c] : p.terms())
    if (!c.is_rational()) throw Error("polynomial has irrational coefficients");
  return to_rational(p);
}

namespace detail {

inline std::string coefficient_text(const Rational& c, bool& negative) {
  negative = c < 0;
  return Rational(abs(c)).get_str();
}
inline std::string coefficient_text(const AlgNum& c, bool& negative) {
  if (c.terms().size() == 1) {
    negative = c.terms()[0].second < 0;
    return (negative ? -c : c).to_string();
  }
  negative = false;
  return "(" + c.to_string() + ")";
}

}  // namespace detail

/// Canonical text: terms in decreasing graded-lex order.
template <class F>
std::string render_polynomial(const BasicPolynomial<F>& p, const std::vector<std::string>& variables) {
  if (static_cast<int>(variables.size()) != p.nvars()) throw DimensionError("variable name count mismatch");
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    bool neg = false;
    std::string coef = detail::coefficient_text(c, neg);
    std::string mono;
    for (int i = 0; i < p.nvars(); ++i) {
      if (m[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += variables[i];
      if (m[i] > 1) mono += "^" + std::to_string(m[i]);
    }
    std::string body;
    if (mono.empty()) body = coef;
    else if (coef == "1") body = mono;
    else body = coef + "*" + mono;
    if (first) out += neg ? "-" + body : body;
    else out += (neg ? " - " : " + ") + body;
    first = false;
  }
  return out;
}

/// x, y, z for up to three variables, otherwise x1..xn.
inline std::vector<std::string> default_variables(int n) {
  if (n == 1) return {"x"};
  if (n == 2) return {"x", "y"};
  if (n == 3) return {"x", "y", "z"};
  std::vector<std::string> v;
  for (int i = 1; i <= n; ++i) v.push_back("x" + std::to_string(i));
  return v;
}

}  // namespace symsos
