#include "test_util.hpp"

using namespace symsos;
using testutil::rand_int;

namespace {
const std::vector<std::string> XY{"x", "y"};
}

TEST(Polyring, ParseReadsTerms) {
  auto p = parse_polynomial("x^2 + 2*x*y + y^2", XY);
  EXPECT_EQ(p.size(), 3u);
  EXPECT_EQ(p.coefficient({2, 0}), 1);
  EXPECT_EQ(p.coefficient({1, 1}), 2);
  EXPECT_EQ(p.coefficient({0, 2}), 1);
}

TEST(Polyring, D4InstanceShape) {
  auto p = parse_polynomial("x^6+y^6-x^4*y^2-x^2*y^4-x^4-y^4-x^2-y^2+3*x^2*y^2+1", XY);
  EXPECT_EQ(p.size(), 10u);
  EXPECT_EQ(p.degree().value(), 6);
}

TEST(Polyring, ZeroHasMinusInfinityDegree) {
  auto p = parse_polynomial("0", XY);
  EXPECT_TRUE(p.is_zero());
  EXPECT_TRUE(p.degree().is_minus_infinity());
}

TEST(Polyring, ParseErrors) {
  EXPECT_THROW(parse_polynomial("x + w", XY), Error);
  EXPECT_THROW(parse_polynomial("x +", XY), Error);
  EXPECT_THROW(parse_polynomial("x^-1", XY), Error);
}

TEST(Polyring, RenderParseRoundTrip) {
  for (int t = 0; t < 40; ++t) {
    auto p = testutil::random_polynomial(3, 4, 6);
    std::vector<std::string> v{"x", "y", "z"};
    EXPECT_EQ(parse_polynomial(render_polynomial(p, v), v), p);
  }
}

TEST(Polyring, MonomialVectorLengths) {
  EXPECT_EQ(monomial_vector(3, 2).size(), 10u);
  auto one = monomial_vector(1, 0);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one.entries[0], Monomial{0});
  // brute-force oracle for n=2, d=3
  std::set<Monomial> brute;
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; a + b <= 3; ++b) brute.insert({a, b});
  auto mv = monomial_vector(2, 3);
  ASSERT_EQ(mv.size(), brute.size());
  EXPECT_EQ(mv.entries.front(), (Monomial{0, 0}));
  EXPECT_EQ(mv.entries.back(), (Monomial{0, 3}));
  for (std::size_t i = 1; i < mv.size(); ++i) EXPECT_LE(total_degree(mv.entries[i - 1]), total_degree(mv.entries[i]));
}

TEST(Polyring, MonomialVectorBinomialCount) {
  for (int n = 1; n <= 5; ++n)
    for (int d = 0; d <= 4; ++d) {
      mpz_class c;
      mpz_bin_uiui(c.get_mpz_t(), n + d, d);
      EXPECT_EQ(monomial_vector(n, d).size(), c.get_ui());
    }
}

TEST(Polyring, SubstituteIdentityAndRotation) {
  auto p = parse_polynomial("x^2 - y^2", XY);
  EXPECT_EQ(substitute_linear(p, Matrix<Rational>::identity(2)), p);
  Matrix<Rational> rot(2, 2);  // (x,y) -> (-y,x)
  rot(0, 1) = -1;
  rot(1, 0) = 1;
  EXPECT_EQ(substitute_linear(p, rot), -p);
  auto f = parse_polynomial(fixtures::d4_polynomial(), XY);
  EXPECT_EQ(substitute_linear(f, rot), f);
}

TEST(Polyring, SubstitutionComposes) {
  for (int t = 0; t < 20; ++t) {
    Matrix<Rational> A(2, 2), B(2, 2);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        A(r, c) = rand_int(-2, 2);
        B(r, c) = rand_int(-2, 2);
      }
    auto p = testutil::random_polynomial(2, 3, 5);
    // p(A(Bx)) both ways
    EXPECT_EQ(substitute_linear(substitute_linear(p, A), B), substitute_linear(p, A * B));
  }
}

TEST(Polyring, Arithmetic) {
  auto p = parse_polynomial("x + y", XY), q = parse_polynomial("x - y", XY);
  EXPECT_EQ(p + Polynomial(2), p);
  EXPECT_EQ(p * q, parse_polynomial("x^2 - y^2", XY));
  EXPECT_EQ(p - p, Polynomial(2));
  EXPECT_EQ(p.scaled(Rational(1, 2)), parse_polynomial("x/2 + y/2", XY));
}

TEST(Polyring, C4SyzygyByExpansion) {
  auto eta = parse_polynomial("x*y*(x^2 - y^2)", XY);
  auto t1 = parse_polynomial("x^2 + y^2", XY), t2 = parse_polynomial("x^2*y^2", XY);
  EXPECT_EQ(eta * eta, t1 * t1 * t2 - (t2 * t2).scaled(4));
}

TEST(Polyring, Evaluate) {
  auto f = parse_polynomial(fixtures::d4_polynomial(), XY);
  EXPECT_EQ(f.evaluate({0, 0}), 1);
  EXPECT_EQ(Polynomial(2).evaluate({Rational(3), Rational(7)}), 0);
  EXPECT_EQ(parse_polynomial("x^2 + y^2", XY).evaluate({Rational(3, 2), Rational(1, 2)}), Rational(5, 2));
}

TEST(Polyring, RationalHelpers) {
  EXPECT_EQ(parse_rational("-6/4"), Rational(-3, 2));
  EXPECT_EQ(approximate(0.3333333333, 10), Rational(1, 3));
  EXPECT_LE(round_down(-0.93383790, 1000).get_d(), -0.93383790);
  EXPECT_EQ(recognize(-3825.0 / 4096 + 1e-12, 1e-9), Rational(-3825, 4096));
}
