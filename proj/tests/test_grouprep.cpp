#include "test_util.hpp"

using namespace symsos;

namespace {

Matrix<Rational> mat2(int a, int b, int c, int d) {
  Matrix<Rational> m(2, 2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

Matrix<AlgNum> alg(const Matrix<Rational>& m) {
  return m.map<AlgNum>([](const Rational& v) { return AlgNum(v); });
}

std::vector<int> dims(const IrrepCatalog& cat) {
  std::vector<int> d;
  for (const auto& r : cat.irreps) d.push_back(r.dim);
  return d;
}

// sum_g chi_i(g) chi_j(g) computed from traces of the element images
AlgNum character_product(const RealIrrep& a, const RealIrrep& b, const GroupAction& G) {
  auto ma = element_images<AlgNum>(a, G), mb = element_images<AlgNum>(b, G);
  AlgNum s(0);
  for (std::size_t g = 0; g < ma.size(); ++g) {
    AlgNum ta(0), tb(0);
    for (std::size_t k = 0; k < ma[g].rows(); ++k) ta += ma[g](k, k);
    for (std::size_t k = 0; k < mb[g].rows(); ++k) tb += mb[g](k, k);
    s += ta * tb;
  }
  return s;
}

}  // namespace

TEST(Grouprep, GroupOrders) {
  Matrix<Rational> minus(1, 1);
  minus(0, 0) = -1;
  EXPECT_EQ(close_group({minus}).order(), 2u);
  EXPECT_EQ(close_group({mat2(0, -1, 1, 0), mat2(0, 1, 1, 0)}).order(), 8u);
  EXPECT_EQ(choi_group().order(), 96u);
  EXPECT_EQ(catalog("symmetric:4").action.order(), 24u);
  EXPECT_EQ(catalog("c2n:5").action.order(), 32u);
}

TEST(Grouprep, ClosureRejectsNonOrthogonal) {
  EXPECT_THROW(close_group({mat2(2, 0, 0, 1)}), Error);
  EXPECT_THROW(close_group({mat2(0, -1, 1, 0)}, 3), Error);
}

TEST(Grouprep, CatalogDimensions) {
  EXPECT_EQ(dims(catalog("dihedral:4")), (std::vector<int>{1, 1, 1, 1, 2}));
  EXPECT_EQ(dims(catalog("symmetric:4")), (std::vector<int>{1, 3, 2, 3, 1}));
  EXPECT_EQ(dims(catalog("cyclic:4")), (std::vector<int>{1, 1, 2}));
  EXPECT_EQ(dims(catalog("symmetric:3")), (std::vector<int>{1, 1, 2}));
  EXPECT_THROW(catalog("banana:3"), Error);
  EXPECT_THROW(catalog("dihedral"), Error);
}

TEST(Grouprep, CatalogsVerify) {
  for (const char* spec : {"dihedral:4", "dihedral:3", "dihedral:5", "cyclic:4", "cyclic:3", "cyclic:6",
                           "symmetric:2", "symmetric:3", "symmetric:4", "symmetric:5", "c2n:3", "trivial:2"}) {
    auto cat = catalog(spec);
    auto rep = verify_catalog(cat);
    EXPECT_TRUE(rep.ok()) << spec << ": " << (rep.problems.empty() ? "" : rep.problems[0]);
  }
}

TEST(Grouprep, CharacterOrthogonalityFromTraces) {
  for (const char* spec : {"dihedral:4", "cyclic:4", "symmetric:3", "symmetric:4", "c2n:3"}) {
    auto cat = catalog(spec);
    const auto& G = cat.action;
    for (std::size_t i = 0; i < cat.irreps.size(); ++i)
      for (std::size_t j = 0; j < cat.irreps.size(); ++j) {
        AlgNum s = character_product(cat.irreps[i], cat.irreps[j], G);
        // realified complex pairs have squared character norm 2|G|
        long expect = i == j ? static_cast<long>(G.order()) * (cat.irreps[i].complex_type() ? 2 : 1) : 0;
        EXPECT_EQ(s, AlgNum(Rational(expect))) << spec << " " << i << "," << j;
      }
  }
}

TEST(Grouprep, D4TwoDimensionalIrrepFromGenerators) {
  auto cat = catalog("dihedral:4");
  RealIrrep e;
  e.label = "E";
  e.dim = 2;
  e.gens = {alg(mat2(0, -1, 1, 0)), alg(mat2(0, 1, 1, 0))};
  EXPECT_TRUE(verify_irrep(e, cat.action).ok());
  // s = d s d
  auto d = e.gens[0], s = e.gens[1];
  EXPECT_EQ(s, d * s * d);
  RealIrrep bad = e;
  bad.gens[1](1, 0) = AlgNum(-1);  // one sign flipped
  EXPECT_FALSE(verify_irrep(bad, cat.action).ok());
  RealIrrep triv;
  triv.label = "1";
  triv.gens = {Matrix<AlgNum>::identity(1), Matrix<AlgNum>::identity(1)};
  EXPECT_TRUE(verify_irrep(triv, cat.action).ok());
}

TEST(Grouprep, RealifyC4Pair) {
  ComplexRep a{"i", 1, {{ComplexEntry{AlgNum(0), AlgNum(1)}}}};
  ComplexRep b{"-i", 1, {{ComplexEntry{AlgNum(0), AlgNum(-1)}}}};
  auto r = realify_pair(a, b, "rot");
  EXPECT_EQ(r.dim, 2);
  EXPECT_TRUE(r.complex_type());
  Matrix<AlgNum> expect(2, 2);
  expect(0, 1) = AlgNum(-1);
  expect(1, 0) = AlgNum(1);
  EXPECT_EQ(r.gens[0], expect);
  auto cat = catalog("cyclic:4");
  EXPECT_TRUE(verify_irrep(r, cat.action).ok());
  ComplexRep real{"1", 1, {{ComplexEntry{AlgNum(1), AlgNum(0)}}}};
  EXPECT_THROW(realify_pair(real, real, "x"), Error);
}

TEST(Grouprep, RealifyC3PairIsRotation) {
  AlgNum h = AlgNum::sqrt_of(3, Rational(1, 2));
  ComplexRep a{"w", 1, {{ComplexEntry{AlgNum(Rational(-1, 2)), h}}}};
  ComplexRep b{"wbar", 1, {{ComplexEntry{AlgNum(Rational(-1, 2)), -h}}}};
  auto r = realify_pair(a, b, "rot120");
  const auto& g = r.gens[0];
  // brute force homomorphism: g^3 = I, g != I
  EXPECT_EQ(g * g * g, Matrix<AlgNum>::identity(2));
  EXPECT_NE(g, Matrix<AlgNum>::identity(2));
  EXPECT_EQ(g(0, 0), AlgNum(Rational(-1, 2)));
  EXPECT_EQ(g(1, 0), h);
  EXPECT_TRUE(verify_irrep(r, catalog("cyclic:3").action).ok());
}

TEST(Grouprep, InducedRepresentation) {
  Matrix<Rational> minus(1, 1);
  minus(0, 0) = -1;
  auto G = close_group({minus});
  auto rep = induced_representation(G, 3);
  ASSERT_EQ(rep.size(), 4u);
  auto dense = rep.dense();
  const auto& s = dense[G.elements[0] == minus ? 0 : 1];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_EQ(s(i, j), i == j ? Rational(i % 2 ? -1 : 1) : Rational(0));

  auto cat = catalog("dihedral:4");
  auto r1 = induced_representation(cat.action, 1);
  for (std::size_t g = 0; g < cat.action.order(); ++g) {
    auto m = r1.dense()[g];
    EXPECT_EQ(m(0, 0), 1);
    // degree-1 block is the action (possibly transposed for g^-1)
    Matrix<Rational> blk(2, 2);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) blk(a, b) = m(1 + a, 1 + b);
    bool found = false;
    for (const auto& e : cat.action.elements) found = found || blk == e || blk == e.transpose();
    EXPECT_TRUE(found);
  }
  auto r3 = induced_representation(cat.action, 3);
  EXPECT_EQ(r3.size(), 10u);
  EXPECT_TRUE(verify_representation(r3.dense(), cat.action).ok());
  for (const auto& m : r3.dense()) {
    EXPECT_EQ(m * m.transpose(), Matrix<Rational>::identity(10));
    for (std::size_t i = 0; i < 10; ++i)
      for (std::size_t j = 0; j < 10; ++j)
        if (m(i, j) != 0) EXPECT_EQ(total_degree(r3.basis.entries[i]), total_degree(r3.basis.entries[j]));
  }
}
