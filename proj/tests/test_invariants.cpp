#include "test_util.hpp"

using namespace symsos;

TEST(Invariants, D4Presentation) {
  auto pres = presentation(catalog("dihedral:4"));
  ASSERT_EQ(pres.ntheta(), 2);
  EXPECT_EQ(pres.theta[0], parse_polynomial("x^2 + y^2", pres.variables));
  EXPECT_EQ(pres.theta[1], parse_polynomial("x^2*y^2", pres.variables));
  EXPECT_EQ(pres.neta(), 1);
  EXPECT_TRUE(verify_presentation(pres).ok());
}

TEST(Invariants, C4PresentationAndSyzygy) {
  auto pres = presentation(catalog("cyclic:4"));
  ASSERT_EQ(pres.neta(), 2);
  auto eta2 = pres.eta[1];
  auto expected = parse_polynomial("x*y*(x^2 - y^2)", pres.variables);
  EXPECT_TRUE(eta2 == expected || eta2 == -expected);
  ASSERT_FALSE(pres.syzygies.empty());
  for (const auto& s : pres.syzygies) EXPECT_TRUE(expand_symbols(s, pres).is_zero());
  // the known relation eta^2 + 4 t2^2 - t1^2 t2 expands to zero as well
  auto rel = parse_polynomial(pres.eta_names[1] + "^2 + 4*" + pres.theta_names[1] + "^2 - " + pres.theta_names[0] +
                                  "^2*" + pres.theta_names[1],
                              pres.symbol_names());
  EXPECT_TRUE(expand_symbols(rel, pres).is_zero());
}

TEST(Invariants, SyzygiesVanishEverywhere) {
  for (const char* spec : {"cyclic:4", "dihedral:4", "symmetric:3", "symmetric:4", "c2n:3", "trivial:2"}) {
    auto pres = presentation(catalog(spec));
    for (const auto& s : pres.syzygies) EXPECT_TRUE(expand_symbols(s, pres).is_zero()) << spec;
    EXPECT_TRUE(verify_presentation(pres).ok()) << spec;
  }
}

TEST(Invariants, SymmetricPresentation) {
  auto pres = presentation(catalog("symmetric:3"));
  EXPECT_EQ(pres.theta_names, (std::vector<std::string>{"e1", "e2", "e3"}));
  EXPECT_EQ(pres.theta[0], parse_polynomial("x + y + z", pres.variables));
  EXPECT_EQ(pres.theta[1], parse_polynomial("x*y + x*z + y*z", pres.variables));
  EXPECT_EQ(pres.theta[2], parse_polynomial("x*y*z", pres.variables));
  EXPECT_EQ(pres.neta(), 1);
}

TEST(Invariants, D4Rewrite) {
  auto pres = presentation(catalog("dihedral:4"));
  auto f = parse_polynomial(fixtures::d4_polynomial(), pres.variables);
  auto ft = rewrite_in_invariants(f, pres);
  auto t1 = pres.theta_names[0], t2 = pres.theta_names[1];
  auto expect = parse_invariant(t1 + "^3 - " + t1 + "^2 - 4*" + t1 + "*" + t2 + " - " + t1 + " + 5*" + t2 + " + 1", pres);
  EXPECT_EQ(ft, expect);
  EXPECT_EQ(expand_invariants(ft, pres), f);
  EXPECT_EQ(weighted_degree(ft, pres), 6);
}

TEST(Invariants, S3Rewrite) {
  auto pres = presentation(catalog("symmetric:3"));
  auto f = parse_polynomial(fixtures::s3_quartic(), pres.variables);
  auto ft = rewrite_in_invariants(f, pres);
  EXPECT_EQ(ft, parse_invariant("e1^4 - 4*e1^2*e2 + 2*e2^2 + 4*e1*e3 - 4*e3 + e1", pres));
  EXPECT_EQ(weighted_degree(ft, pres), 4);
  EXPECT_THROW(rewrite_in_invariants(parse_polynomial("x", pres.variables), pres), Error);
}

TEST(Invariants, UnsupportedGroupIsReported) {
  EXPECT_THROW(presentation(catalog("cyclic:3")), Error);
}

TEST(Invariants, Constants) {
  auto pres = presentation(catalog("dihedral:4"));
  auto one = InvariantPoly::constant(pres, 1);
  EXPECT_EQ(expand_invariants(one, pres), Polynomial::constant(2, 1));
  EXPECT_EQ(weighted_degree(one, pres), 0);
}

TEST(Invariants, RandomRoundTrips) {
  for (const char* spec : {"dihedral:4", "cyclic:4", "symmetric:3", "c2n:3", "symmetric:4"}) {
    auto cat = catalog(spec);
    auto pres = presentation(cat);
    int deg = cat.action.n >= 4 ? 4 : 5;
    for (int t = 0; t < 8; ++t) {
      auto p = testutil::reynolds(testutil::random_polynomial(cat.action.n, deg, 5), cat.action);
      if (p.is_zero()) continue;
      auto ft = rewrite_in_invariants(p, pres);
      EXPECT_EQ(expand_invariants(ft, pres), p) << spec;
      auto text = render_invariant(ft, pres);
      EXPECT_EQ(parse_invariant(text, pres), ft) << spec << ": " << text;
      EXPECT_LE(weighted_degree(ft, pres), p.degree().value());
    }
  }
}

TEST(Invariants, IsInvariantMatchesReynoldsFixedPoint) {
  auto cat = catalog("symmetric:3");
  for (int t = 0; t < 10; ++t) {
    auto p = testutil::random_polynomial(3, 3, 4);
    bool fixed = testutil::reynolds(p, cat.action) == p;
    EXPECT_EQ(is_invariant(p, cat.action.generators), fixed);
  }
}
