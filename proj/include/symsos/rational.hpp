// Exact rational numbers on top of GMP, plus the handful of helpers the rest
// of the library needs (parsing, rendering, bounded continued fractions).
#pragma once

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace symsos {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Always canonical (gcd 1, positive denominator) after every operation.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw Error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Accepts "p", "-p", "p/q".
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error("empty rational literal");
  auto valid = [](const std::string& part) {
    if (part.empty()) return false;
    std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  if (!valid(num)) throw Error("malformed rational literal '" + s + "'");
  Rational r;
  if (slash == std::string::npos) {
    r = Rational(Integer(num), 1);
  } else {
    std::string den = s.substr(slash + 1);
    if (!valid(den) || den[0] == '-') throw Error("malformed rational literal '" + s + "'");
    Integer d(den);
    if (d == 0) throw Error("rational with zero denominator");
    r = Rational(Integer(num), d);
  }
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline Integer floor_div(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

/// Exact conversion of a finite double.
inline Rational from_double(double v) {
  if (!std::isfinite(v)) throw Error("cannot convert non-finite double to rational");
  Rational r(v);
  r.canonicalize();
  return r;
}

/// Best rational approximation of v with denominator at most max_den
/// (continued-fraction convergents plus the best semiconvergent).
inline Rational approximate(double v, long max_den) {
  if (!std::isfinite(v)) throw Error("cannot approximate non-finite value");
  if (max_den < 1) max_den = 1;
  Rational x = from_double(v);
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Rational rem = x;
  const Integer bound = max_den;
  while (true) {
    Integer a = floor_div(rem);
    Integer q2 = a * q1 + q0;
    if (q2 > bound) {
      // semiconvergent: largest k with k*q1 + q0 <= bound
      Integer k = (bound - q0) / q1;
      Rational semi(k * p1 + p0, k * q1 + q0);
      Rational conv(p1, q1);
      semi.canonicalize();
      conv.canonicalize();
      if (k > 0 && abs(semi - x) < abs(conv - x)) return semi;
      return conv;
    }
    Integer p2 = a * p1 + p0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    Rational frac = rem - Rational(a);
    if (frac == 0) break;
    rem = 1 / frac;
  }
  Rational r(p1, q1);
  r.canonicalize();
  return r;
}

/// Largest k/max_den that does not exceed v.
inline Rational round_down(double v, long max_den) {
  Rational x = from_double(v);
  Integer d = max_den;
  Rational scaled = x * Rational(d);
  Rational r(floor_div(scaled), d);
  r.canonicalize();
  return r;
}

/// First continued-fraction convergent within tol of v (a guess, not a proof).
inline Rational recognize(double v, double tol) {
  if (!std::isfinite(v)) throw Error("cannot approximate non-finite value");
  Rational x = from_double(v), rem = x;
  Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int i = 0; i < 64; ++i) {
    Integer a = floor_div(rem);
    Integer p2 = a * p1 + p0, q2 = a * q1 + q0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    Rational c(p1, q1);
    c.canonicalize();
    if (std::abs(Rational(c - x).get_d()) <= tol) return c;
    Rational frac = rem - Rational(a);
    if (frac == 0) break;
    rem = 1 / frac;
  }
  return x;
}

inline double to_double(const Rational& r) { return r.get_d(); }

}  // namespace symsos
