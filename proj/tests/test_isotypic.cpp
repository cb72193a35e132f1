#include "test_util.hpp"

using namespace symsos;

namespace {

Matrix<Rational> swap_last_two() {
  Matrix<Rational> sw = Matrix<Rational>::identity(3);
  sw(1, 1) = 0;
  sw(2, 2) = 0;
  sw(1, 2) = 1;
  sw(2, 1) = 1;
  return sw;
}

IrrepCatalog s2_on_three() {
  IrrepCatalog c;
  c.name = "s2-on-3";
  c.action = close_group({swap_last_two()});
  c.irreps = catalog("symmetric:2").irreps;
  return c;
}

double max_abs(const Matrix<double>& m) {
  double v = 0;
  for (double x : m.data()) v = std::max(v, std::abs(x));
  return v;
}

const char* kGroups[] = {"dihedral:4", "cyclic:4", "symmetric:3", "c2n:3", "symmetric:4"};

InducedRep small_rep(const IrrepCatalog& cat) {
  int n = cat.action.n;
  if (n == 2) return induced_representation(cat.action, 3);
  if (n == 3) return induced_representation(cat.action, 2);
  return induced_representation(cat.action, 2, true);
}

}  // namespace

TEST(Isotypic, ReynoldsIsIdempotentAndFixesInvariants) {
  for (const char* spec : kGroups) {
    auto cat = catalog(spec);
    auto rep = small_rep(cat);
    for (int t = 0; t < 10; ++t) {
      auto X = testutil::random_symmetric(rep.size());
      auto P = fixed_point_project(X, rep);
      EXPECT_EQ(fixed_point_project(P, rep), P) << spec;
      for (const auto& m : rep.dense()) EXPECT_EQ(m.transpose() * P * m, P) << spec;
    }
  }
}

TEST(Isotypic, ReynoldsC2ConjugationExample) {
  Matrix<Rational> rho(2, 2);
  rho(0, 1) = 1;
  rho(1, 0) = -1;
  auto G = close_group({rho});
  auto rep = representation_from_matrices(G, G.elements);
  auto X = fixtures::rational_matrix({{"1", "2"}, {"2", "3"}});
  EXPECT_EQ(fixed_point_project(X, rep), fixtures::rational_matrix({{"2", "0"}, {"0", "2"}}));
}

TEST(Isotypic, SymmetryAdaptedBasisIsOrthonormal) {
  for (const char* spec : kGroups) {
    auto cat = catalog(spec);
    auto B = symmetry_adapted_basis(small_rep(cat), cat);
    auto I = B.T.transpose() * B.T;
    for (std::size_t r = 0; r < B.N; ++r)
      for (std::size_t c = 0; c < B.N; ++c) EXPECT_NEAR(I(r, c), r == c ? 1.0 : 0.0, 1e-12) << spec;
    if (B.T_exact) EXPECT_EQ(B.T_exact->transpose() * *B.T_exact, Matrix<AlgNum>::identity(B.N)) << spec;
  }
}

TEST(Isotypic, D4DegreeThreeSegments) {
  auto cat = catalog("dihedral:4");
  auto rep = induced_representation(cat.action, 3);
  auto B = symmetry_adapted_basis(rep, cat);
  EXPECT_EQ(B.multiplicities, (std::vector<int>{2, 0, 1, 1, 3}));
  const std::vector<std::string> xy{"x", "y"};
  auto column = [&](std::size_t irrep, int k) {
    const auto* s = B.segment_for(irrep);
    return column_polynomial(rep.basis, B.U.column(s->offset + k));
  };
  auto xy_poly = to_alg(parse_polynomial("x*y", xy));
  auto diff = to_alg(parse_polynomial("x^2 - y^2", xy));
  auto b1 = column(cat.index_of("B1"), 0), b2 = column(cat.index_of("B2"), 0);
  // each is a scalar multiple of the expected polynomial
  EXPECT_EQ(b1.scaled(xy_poly.terms().begin()->second), xy_poly.scaled(b1.terms().begin()->second));
  EXPECT_EQ(b2.scaled(diff.terms().begin()->second), diff.scaled(b2.terms().begin()->second));
  // trivial segment spans (1, x^2+y^2)
  for (int k = 0; k < 2; ++k) {
    auto p = to_rational(column(0, k));
    EXPECT_EQ(substitute_linear(p, cat.action.generators[0]), p);
    EXPECT_EQ(substitute_linear(p, cat.action.generators[1]), p);
  }
}

TEST(Isotypic, WorkedExampleBlocks) {
  auto c = s2_on_three();
  auto rep = representation_from_matrices(c.action, c.action.elements);
  auto B = symmetry_adapted_basis(rep, c);
  EXPECT_EQ(B.multiplicities, (std::vector<int>{2, 1}));
  // alpha = 1/sqrt2 appears in T
  bool alpha = false;
  for (double v : B.T.data()) alpha = alpha || std::abs(std::abs(v) - std::sqrt(0.5)) < 1e-14;
  EXPECT_TRUE(alpha);
  const long a = 5, b = 2, cc = 7, d = 3;
  auto X = fixtures::rational_matrix(
      {{"5", "2", "2"}, {"2", "7", "3"}, {"2", "3", "7"}});
  auto bd = block_diagonalize(X, B);
  ASSERT_TRUE(bd.exact_blocks.has_value());
  const auto& B1 = (*bd.exact_blocks)[0];
  const auto& B2 = (*bd.exact_blocks)[1];
  ASSERT_EQ(B1.rows(), 2u);
  ASSERT_EQ(B2.rows(), 1u);
  // B1 = [a, sqrt2 b; sqrt2 b, c+d] up to the sign of the second basis vector
  EXPECT_EQ(B1(0, 0), AlgNum(Rational(a)));
  EXPECT_EQ(B1(1, 1), AlgNum(Rational(cc + d)));
  EXPECT_EQ(B1(0, 1) * B1(0, 1), AlgNum(Rational(2 * b * b)));
  EXPECT_EQ(B2(0, 0), AlgNum(Rational(cc - d)));
}

TEST(Isotypic, IdentityBlocksAreIdentities) {
  auto cat = catalog("dihedral:4");
  auto B = symmetry_adapted_basis(induced_representation(cat.action, 3), cat);
  auto bd = block_diagonalize(Matrix<Rational>::identity(10), B);
  for (std::size_t s = 0; s < bd.blocks.size(); ++s) {
    const auto& blk = bd.blocks[s];
    for (std::size_t r = 0; r < blk.rows(); ++r)
      for (std::size_t c = 0; c < blk.cols(); ++c) EXPECT_NEAR(blk(r, c), r == c ? 1.0 : 0.0, 1e-12);
  }
}

TEST(Isotypic, TrivialGroupKeepsEverything) {
  auto cat = catalog("trivial:2");
  auto rep = induced_representation(cat.action, 2);
  auto B = symmetry_adapted_basis(rep, cat);
  ASSERT_EQ(B.segments.size(), 1u);
  EXPECT_EQ(B.multiplicities[0], 6);
}

TEST(Isotypic, RandomInvariantMatricesBlockDiagonalize) {
  for (const char* spec : kGroups) {
    auto cat = catalog(spec);
    auto rep = small_rep(cat);
    auto B = symmetry_adapted_basis(rep, cat);
    for (int t = 0; t < 5; ++t) {
      auto X = fixed_point_project(testutil::random_symmetric(rep.size()), rep);
      auto fl = block_diagonalize(to_double_matrix(X), B);
      EXPECT_LE(fl.residual, 1e-10 * std::max(1.0, max_abs(to_double_matrix(X)))) << spec;
      if (B.T_exact) {
        auto ex = block_diagonalize(X, B);
        EXPECT_TRUE(ex.exact_blocks.has_value()) << spec;
      }
    }
  }
}

TEST(Isotypic, NonInvariantMatrixIsRejected) {
  auto cat = catalog("dihedral:4");
  auto B = symmetry_adapted_basis(induced_representation(cat.action, 2), cat);
  Matrix<double> X(6, 6);
  X(1, 2) = X(2, 1) = 1;  // couples x and y
  X(0, 1) = X(1, 0) = 1;
  EXPECT_THROW(block_diagonalize(X, B), Error);
}

TEST(Isotypic, MultiplicitiesMatchMolienCoefficients) {
  for (const char* spec : {"symmetric:4", "dihedral:4", "cyclic:4", "c2n:3"}) {
    auto cat = catalog(spec);
    auto table = molien_table(cat, 4);
    for (int d = 1; d <= 4; ++d) {
      auto B = symmetry_adapted_basis(induced_representation(cat.action, d, true), cat);
      for (std::size_t i = 0; i < cat.irreps.size(); ++i)
        EXPECT_EQ(Integer(B.multiplicities[i]), table.rows[i][d]) << spec << " d=" << d << " irrep " << i;
    }
  }
}
