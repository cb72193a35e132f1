// Exact real algebraic numbers of the form sum_r c_r * sqrt(r), r squarefree.
//
// This multi-quadratic field is closed under +, -, *, / and contains every
// entry of Young's orthogonal form and of the planar rotations by multiples of
// 30 and 45 degrees. Irrep data outside it falls back to BigFloat.
#pragma once

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "symsos/rational.hpp"

namespace symsos {

/// 50 significant digits; used where exact data is unavailable.
using BigFloat = boost::multiprecision::cpp_dec_float_50;
using WideFloat = boost::multiprecision::cpp_dec_float_100;

namespace detail {

inline std::vector<long> prime_factors(long n) {
  std::vector<long> out;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline long gcd_long(long a, long b) {
  while (b != 0) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace detail

class AlgNum {
 public:
  using Term = std::pair<long, Rational>;  // (squarefree radicand, coefficient)

  AlgNum() = default;
  AlgNum(const Rational& q) {  // NOLINT: implicit on purpose, Q is a subfield
    if (q != 0) terms_.emplace_back(1, q);
  }
  AlgNum(long v) : AlgNum(Rational(v)) {}  // NOLINT
  AlgNum(int v) : AlgNum(Rational(v)) {}   // NOLINT

  /// c * sqrt(r) for any positive integer r (square factors are pulled out).
  static AlgNum sqrt_of(long r, const Rational& c = Rational(1)) {
    if (r < 0) throw Error("sqrt of negative integer");
    if (r == 0 || c == 0) return AlgNum();
    long square = 1, free = 1, n = r;
    for (long p = 2; p * p <= n; ++p) {
      while (n % (p * p) == 0) {
        n /= p * p;
        square *= p;
      }
      if (n % p == 0) {
        n /= p;
        free *= p;
      }
    }
    free *= n;
    AlgNum out;
    out.terms_.emplace_back(free, c * Rational(square));
    return out;
  }

  /// sqrt(q) for rational q >= 0 when the radicand factors in reasonable time.
  static std::optional<AlgNum> sqrt_rational(const Rational& q) {
    if (q < 0) return std::nullopt;
    if (q == 0) return AlgNum();
    Integer prod = q.get_num() * q.get_den();
    if (!prod.fits_slong_p() || prod > Integer(1000000000000L)) {
      if (mpz_perfect_square_p(prod.get_mpz_t())) {
        Integer root;
        mpz_sqrt(root.get_mpz_t(), prod.get_mpz_t());
        return AlgNum(Rational(root, q.get_den()));
      }
      return std::nullopt;
    }
    Rational inv_den(Integer(1), q.get_den());
    inv_den.canonicalize();
    return sqrt_of(prod.get_si(), inv_den);
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 1); }
  Rational rational_part() const {
    return (!terms_.empty() && terms_[0].first == 1) ? terms_[0].second : Rational(0);
  }
  Rational to_rational() const {
    if (!is_rational()) throw Error("algebraic number is not rational");
    return rational_part();
  }

  AlgNum& operator+=(const AlgNum& o) {
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.cbegin();
    auto b = o.terms_.cbegin();
    while (a != terms_.cend() || b != o.terms_.end()) {
      if (b == o.terms_.end() || (a != terms_.cend() && a->first < b->first)) {
        out.push_back(*a++);
      } else if (a == terms_.cend() || b->first < a->first) {
        out.push_back(*b++);
      } else {
        Rational c = a->second + b->second;
        if (c != 0) out.emplace_back(a->first, c);
        ++a;
        ++b;
      }
    }
    terms_ = std::move(out);
    return *this;
  }
  AlgNum& operator-=(const AlgNum& o) { return *this += -o; }
  AlgNum operator-() const {
    AlgNum r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }
  AlgNum& operator*=(const AlgNum& o) {
    *this = *this * o;
    return *this;
  }
  AlgNum& operator/=(const AlgNum& o) {
    *this = *this * o.inverse();
    return *this;
  }

  friend AlgNum operator+(AlgNum a, const AlgNum& b) { return a += b; }
  friend AlgNum operator-(AlgNum a, const AlgNum& b) { return a -= b; }
  friend AlgNum operator*(const AlgNum& a, const AlgNum& b) {
    if (a.is_zero() || b.is_zero()) return AlgNum();
    if (a.terms_.size() == 1 && a.terms_[0].first == 1) return b.scaled(a.terms_[0].second);
    if (b.terms_.size() == 1 && b.terms_[0].first == 1) return a.scaled(b.terms_[0].second);
    std::vector<Term> raw;
    raw.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& [ra, ca] : a.terms_) {
      for (const auto& [rb, cb] : b.terms_) {
        long g = detail::gcd_long(ra, rb);
        raw.emplace_back((ra / g) * (rb / g), ca * cb * Rational(g));
      }
    }
    return from_raw(std::move(raw));
  }
  friend AlgNum operator/(const AlgNum& a, const AlgNum& b) { return a * b.inverse(); }

  friend bool operator==(const AlgNum& a, const AlgNum& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const AlgNum& a, const AlgNum& b) { return !(a == b); }

  AlgNum scaled(const Rational& s) const {
    if (s == 0) return AlgNum();
    AlgNum r = *this;
    for (auto& t : r.terms_) t.second *= s;
    return r;
  }

  /// Image under sqrt(p) -> -sqrt(p).
  AlgNum conjugate(long p) const {
    AlgNum r = *this;
    for (auto& t : r.terms_)
      if (t.first % p == 0) t.second = -t.second;
    return r;
  }

  AlgNum inverse() const {
    if (is_zero()) throw Error("division by zero algebraic number");
    if (is_rational()) return AlgNum(Rational(1) / terms_[0].second);
    // x * prod of conjugates is rational; peel one prime at a time.
    std::vector<long> primes;
    for (const auto& t : terms_)
      for (long p : detail::prime_factors(t.first))
        if (std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);
    AlgNum running = *this;
    AlgNum cofactor(Rational(1));
    for (long p : primes) {
      AlgNum conj = running.conjugate(p);
      cofactor = cofactor * conj;
      running = running * conj;
    }
    if (!running.is_rational() || running.is_zero()) throw Error("algebraic inverse failed");
    return cofactor.scaled(Rational(1) / running.terms_[0].second);
  }

  template <class F>
  F to_float() const {
    F sum = 0;
    for (const auto& [r, c] : terms_) {
      F cf = F(c.get_num().get_str()) / F(c.get_den().get_str());
      sum += (r == 1) ? cf : cf * boost::multiprecision::sqrt(F(r));
    }
    return sum;
  }
  double to_double() const {
    double sum = 0;
    for (const auto& [r, c] : terms_) sum += c.get_d() * std::sqrt(static_cast<double>(r));
    return sum;
  }

  /// Sign of the exact value (-1, 0, 1).
  int sign() const {
    if (is_zero()) return 0;
    if (is_rational()) return sgn(terms_[0].second);
    WideFloat v = to_float<WideFloat>();
    if (boost::multiprecision::abs(v) < WideFloat("1e-80"))
      throw Error("cannot resolve sign of algebraic number");
    return v > 0 ? 1 : -1;
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [r, c] : terms_) {
      std::string piece;
      if (r == 1) {
        piece = c.get_str();
      } else if (c == 1) {
        piece = "sqrt(" + std::to_string(r) + ")";
      } else if (c == -1) {
        piece = "-sqrt(" + std::to_string(r) + ")";
      } else {
        piece = c.get_str() + "*sqrt(" + std::to_string(r) + ")";
      }
      if (!first && piece[0] != '-') out += " + ";
      else if (!first) {
        out += " - ";
        piece.erase(0, 1);
      }
      out += piece;
      first = false;
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const AlgNum& a) { return os << a.to_string(); }

 private:
  static AlgNum from_raw(std::vector<Term> raw) {
    std::sort(raw.begin(), raw.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    AlgNum out;
    for (auto& t : raw) {
      if (!out.terms_.empty() && out.terms_.back().first == t.first) {
        out.terms_.back().second += t.second;
        if (out.terms_.back().second == 0) out.terms_.pop_back();
      } else if (t.second != 0) {
        out.terms_.push_back(std::move(t));
      }
    }
    return out;
  }

  std::vector<Term> terms_;  // sorted by radicand, no zero coefficients
};

// ---------------------------------------------------------------------------
// Field traits: the generic linear algebra only needs zero tests, units and a
// float view. Exact fields test for exact zero; floats use a threshold.

template <class T>
struct Field;

template <>
struct Field<Rational> {
  static constexpr bool exact = true;
  static bool is_zero(const Rational& v) { return v == 0; }
  static double to_double(const Rational& v) { return v.get_d(); }
  static BigFloat to_big(const Rational& v) {
    return BigFloat(v.get_num().get_str()) / BigFloat(v.get_den().get_str());
  }
};

template <>
struct Field<AlgNum> {
  static constexpr bool exact = true;
  static bool is_zero(const AlgNum& v) { return v.is_zero(); }
  static double to_double(const AlgNum& v) { return v.to_double(); }
  static BigFloat to_big(const AlgNum& v) { return v.to_float<BigFloat>(); }
};

template <>
struct Field<BigFloat> {
  static constexpr bool exact = false;
  /// Rank decisions in the 50-digit fallback.
  static bool is_zero(const BigFloat& v) { return boost::multiprecision::abs(v) < BigFloat("1e-30"); }
  static double to_double(const BigFloat& v) { return v.convert_to<double>(); }
  static BigFloat to_big(const BigFloat& v) { return v; }
};

template <>
struct Field<double> {
  static constexpr bool exact = false;
  static bool is_zero(double v) { return std::abs(v) < 1e-12; }
  static double to_double(double v) { return v; }
  static BigFloat to_big(double v) { return BigFloat(v); }
};

}  // namespace symsos
