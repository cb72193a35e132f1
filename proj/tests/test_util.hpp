// Shared helpers for the test suites.
#pragma once

#include <gtest/gtest.h>

#include <cstdlib>
#include <random>

#include "symsos/symsos.hpp"

namespace testutil {

using namespace symsos;

inline std::mt19937& rng() {
  static std::mt19937 g(20240611);
  return g;
}

inline int rand_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

inline Rational rand_rational(int span = 9, int den = 4) {
  Rational r(rand_int(-span, span), rand_int(1, den));
  r.canonicalize();
  return r;
}

inline Polynomial random_polynomial(int n, int max_deg, int terms) {
  Polynomial p(n);
  auto all = monomial_vector(n, max_deg).entries;
  for (int t = 0; t < terms; ++t) p.add_term(all[rand_int(0, static_cast<int>(all.size()) - 1)], rand_rational());
  return p;
}

/// Group average of p over all elements (an invariant polynomial).
inline Polynomial reynolds(const Polynomial& p, const GroupAction& G) {
  Polynomial s(p.nvars());
  for (const auto& g : G.elements) s += substitute_linear(p, g);
  return s.scaled(Rational(1, static_cast<long>(G.elements.size())));
}

inline Matrix<Rational> random_symmetric(std::size_t n) {
  Matrix<Rational> m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r; c < n; ++c) {
      m(r, c) = rand_rational();
      m(c, r) = m(r, c);
    }
  return m;
}

/// M M^T + shift*I, positive definite for shift > 0.
inline Matrix<Rational> random_pd(std::size_t n, int shift = 1) {
  Matrix<Rational> m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = rand_rational(3, 2);
  return m * m.transpose() + Matrix<Rational>::identity(n).scaled(shift);
}

inline std::vector<double> random_point(int n, double scale = 2.0) {
  std::uniform_real_distribution<double> d(-scale, scale);
  std::vector<double> x(n);
  for (auto& v : x) v = d(rng());
  return x;
}

inline bool slow_enabled() {
  const char* v = std::getenv("SYMSOS_RUN_SLOW");
  return v && std::string(v) == "1";
}

}  // namespace testutil
