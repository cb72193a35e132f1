#include "test_util.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

using namespace symsos;

namespace {

std::vector<SdpEntry> entries_of(const Matrix<Rational>& M, int block = 0) {
  std::vector<SdpEntry> e;
  for (std::size_t r = 0; r < M.rows(); ++r)
    for (std::size_t c = r; c < M.cols(); ++c)
      if (M(r, c) != 0) e.push_back({block, static_cast<int>(r), static_cast<int>(c), M(r, c)});
  return e;
}

Rational frob(const Matrix<Rational>& A, const Matrix<Rational>& B) {
  Rational s = 0;
  for (std::size_t r = 0; r < A.rows(); ++r)
    for (std::size_t c = 0; c < A.cols(); ++c) s += A(r, c) * B(r, c);
  return s;
}

// min <C,X> s.t. <A_k,X> = <A_k,X0>
BlockSDP single_block(const Matrix<Rational>& C, const std::vector<Matrix<Rational>>& A, const Matrix<Rational>& X0) {
  BlockSDP s;
  s.add_block("X", static_cast<int>(C.rows()));
  s.cost = entries_of(C);
  for (const auto& a : A) {
    SdpConstraint k;
    k.entries = entries_of(a);
    k.rhs = frob(a, X0);
    s.constraints.push_back(std::move(k));
  }
  return s;
}

InducedRep small_rep(const IrrepCatalog& cat) {
  int n = cat.action.n;
  if (n == 1) return induced_representation(cat.action, 6);
  if (n == 2) return induced_representation(cat.action, 3);
  if (n == 3) return induced_representation(cat.action, 2);
  return induced_representation(cat.action, 2, true);
}

Rational dbl(double v) { return from_double(v); }

void expect_sound(const SDPSolution& s, const SolverOptions& o, const std::string& what) {
  if (!s.ok()) return;
  EXPECT_GE(min_eigenvalue(s.X), -10 * o.tol) << what;
  EXPECT_LE(s.primal_residual, 10 * o.tol) << what;
  EXPECT_LE(s.dual_residual, 10 * o.tol) << what;
}

}  // namespace

TEST(Solver, ScalarEquality) {
  BlockSDP s;
  s.add_block("x", 1);
  s.cost = {{0, 0, 0, 1}};
  SdpConstraint c;
  c.entries = {{0, 0, 0, 1}};
  c.rhs = 3;
  s.constraints.push_back(c);
  auto r = solve(s);
  ASSERT_TRUE(r.ok()) << r.message;
  EXPECT_NEAR(r.primal_objective, 3.0, 1e-7);
  EXPECT_NEAR(r.X[0](0, 0), 3.0, 1e-7);
}

TEST(Solver, TraceMinimumAtConeVertex) {
  BlockSDP s;
  s.add_block("X", 3);
  s.cost = entries_of(Matrix<Rational>::identity(3));
  auto r = solve(s);
  ASSERT_TRUE(r.ok()) << r.message;
  EXPECT_NEAR(r.primal_objective, 0.0, 1e-7);
  EXPECT_NEAR(r.X[0].norm(), 0.0, 1e-6);
}

TEST(Solver, InconsistentConstraintsAreReported) {
  BlockSDP s;
  s.add_block("x", 1);
  SdpConstraint a, b;
  a.entries = {{0, 0, 0, 1}};
  a.rhs = 1;
  b.entries = {{0, 0, 0, 2}};
  b.rhs = 3;
  s.constraints = {a, b};
  EXPECT_THROW(solve(s), Error);
}

TEST(Solver, RecoversConstructedOptimum) {
  SolverOptions opt;
  for (int t = 0; t < 20; ++t) {
    const std::vector<int> sizes{testutil::rand_int(2, 6), testutil::rand_int(1, 5)};
    const int m = testutil::rand_int(2, 8);
    std::vector<Eigen::MatrixXd> Xs, Zs;
    for (int n : sizes) {
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(Eigen::MatrixXd::Random(n, n));
      Eigen::MatrixXd Q = qr.householderQ();
      int rank = testutil::rand_int(1, n);
      Eigen::VectorXd dx = Eigen::VectorXd::Zero(n), dz = Eigen::VectorXd::Zero(n);
      for (int i = 0; i < n; ++i) (i < rank ? dx(i) : dz(i)) = 0.5 + testutil::rand_int(0, 8) * 0.25;
      Xs.push_back(Q * dx.asDiagonal() * Q.transpose());
      Zs.push_back(Q * dz.asDiagonal() * Q.transpose());
    }
    BlockSDP s;
    for (int n : sizes) s.add_block("B", n);
    std::vector<Eigen::MatrixXd> C = Zs;
    for (int k = 0; k < m; ++k) {
      SdpConstraint con;
      double b = 0, y = testutil::rand_int(-4, 4) * 0.5;
      for (std::size_t j = 0; j < sizes.size(); ++j) {
        Eigen::MatrixXd A = Eigen::MatrixXd::Random(sizes[j], sizes[j]);
        A = (A + A.transpose()).eval() * 0.5;
        for (int r = 0; r < sizes[j]; ++r)
          for (int c = r; c < sizes[j]; ++c) {
            A(r, c) = A(c, r) = std::round(A(r, c) * 8) / 8;  // dyadic: exact in Rational
            if (A(r, c) != 0) con.entries.push_back({static_cast<int>(j), r, c, dbl(A(r, c))});
          }
        b += (A.cwiseProduct(Xs[j])).sum();
        C[j] += y * A;
      }
      con.rhs = dbl(b);
      s.constraints.push_back(std::move(con));
    }
    double expect = 0;
    for (std::size_t j = 0; j < sizes.size(); ++j) {
      for (int r = 0; r < sizes[j]; ++r)
        for (int c = r; c < sizes[j]; ++c) s.cost.push_back({static_cast<int>(j), r, c, dbl(C[j](r, c))});
      expect += C[j].cwiseProduct(Xs[j]).sum();
    }
    auto r = solve(s, opt);
    ASSERT_TRUE(r.ok()) << r.message;
    EXPECT_NEAR(r.primal_objective, expect, 1e-6 * std::max(1.0, std::abs(expect)));
    expect_sound(r, opt, "constructed");
  }
}

TEST(Solver, JsonRoundTrip) {
  auto cat = catalog("symmetric:3");
  auto pres = presentation(cat);
  auto g = assemble_gram(parse_polynomial(fixtures::s3_quartic(), pres.variables), true);
  auto j = to_json(g.sdp);
  auto back = block_sdp_from_json(j);
  EXPECT_EQ(to_json(back), j);
  auto a = solve(g.sdp), b = solve(back);
  EXPECT_NEAR(a.primal_objective, b.primal_objective, 1e-9);
}

TEST(GramSdp, SquareOfX) {
  auto g = assemble_gram(parse_polynomial("x^2", {"x"}), false);
  ASSERT_EQ(g.Y.size(), 2u);
  ASSERT_EQ(g.sdp.constraints.size(), 3u);
  // constant, x, x^2 in graded order
  const auto& c = g.sdp.constraints;
  ASSERT_EQ(c[0].entries.size(), 1u);
  EXPECT_EQ(c[0].rhs, 0);
  EXPECT_EQ(c[0].entries[0].row, 0);
  EXPECT_EQ(c[0].entries[0].col, 0);
  ASSERT_EQ(c[1].entries.size(), 1u);  // off-diagonal entry counts twice: 2 Q12
  EXPECT_EQ(c[1].entries[0].row, 0);
  EXPECT_EQ(c[1].entries[0].col, 1);
  EXPECT_EQ(c[1].rhs, 0);
  EXPECT_EQ(c[2].rhs, 1);
  EXPECT_EQ(free_parameter_count(g.sdp), 0u);
}

TEST(GramSdp, S3QuarticDimensions) {
  auto pres = presentation(catalog("symmetric:3"));
  auto g = assemble_gram(parse_polynomial(fixtures::s3_quartic(), pres.variables), false);
  EXPECT_EQ(g.Y.size(), 10u);
  EXPECT_EQ(g.sdp.constraints.size(), 35u);
  EXPECT_EQ(free_parameter_count(g.sdp), 20u);
  EXPECT_THROW(assemble_gram(parse_polynomial("x^3", pres.variables), false), Error);
}

TEST(InvariantSdp, S3QuarticBlocks) {
  auto bundle = algorithm_one(catalog("symmetric:3"), 2);
  const auto& pres = bundle.presentation;
  auto ft = rewrite_in_invariants(parse_polynomial(fixtures::s3_quartic(), pres.variables), pres);
  std::vector<Envelope> env;
  for (const auto& pi : bundle.sos_pis) env.push_back(monomial_envelope(pres, pi, 4));
  auto inv = assemble_invariant_sos(ft, bundle.sos_pis, env, true);
  std::vector<int> sizes;
  for (const auto& b : inv.sdp.blocks) sizes.push_back(b.size);
  EXPECT_EQ(sizes, (std::vector<int>{4, 3}));
  EXPECT_EQ(free_parameter_count(inv.sdp), 5u);
}

TEST(InvariantSdp, D4Blocks) {
  auto bundle = algorithm_one(catalog("dihedral:4"), 3);
  const auto& pres = bundle.presentation;
  auto ft = rewrite_in_invariants(parse_polynomial(fixtures::d4_polynomial(), pres.variables), pres);
  std::vector<Envelope> env;
  for (const auto& pi : bundle.sos_pis) env.push_back(monomial_envelope(pres, pi, 6));
  auto inv = assemble_invariant_sos(ft, bundle.sos_pis, env, true);
  std::map<std::string, int> sizes;
  for (std::size_t b = 0; b < inv.sdp.blocks.size(); ++b)
    sizes[bundle.catalog.irreps[inv.irreps[b]].label] = inv.sdp.blocks[b].size;
  EXPECT_EQ(sizes, (std::map<std::string, int>{{"A1", 2}, {"B1", 1}, {"B2", 1}, {"E1", 3}}));
}

TEST(Restriction, WorkedExampleSplitsTwoPlusOne) {
  Matrix<Rational> sw = Matrix<Rational>::identity(3);
  sw(1, 1) = sw(2, 2) = 0;
  sw(1, 2) = sw(2, 1) = 1;
  IrrepCatalog c;
  c.action = close_group({sw});
  c.irreps = catalog("symmetric:2").irreps;
  auto rep = representation_from_matrices(c.action, c.action.elements);
  auto B = symmetry_adapted_basis(rep, c);
  auto X0 = fixtures::rational_matrix({{"3", "1", "1"}, {"1", "2", "0"}, {"1", "0", "2"}});
  auto A = fixtures::rational_matrix({{"1", "1", "1"}, {"1", "0", "0"}, {"1", "0", "0"}});
  auto s = single_block(Matrix<Rational>::identity(3), {A}, X0);
  auto r = restrict_invariant(s, rep, B);
  ASSERT_EQ(r.sdp.blocks.size(), 2u);
  EXPECT_EQ(r.sdp.blocks[0].size, 2);
  EXPECT_EQ(r.sdp.blocks[1].size, 1);
  EXPECT_NEAR(solve(s).primal_objective, solve(r.sdp).primal_objective, 1e-6);
}

TEST(Restriction, TrivialGroupLeavesProblemAlone) {
  auto cat = catalog("trivial:2");
  auto rep = induced_representation(cat.action, 1);
  auto B = symmetry_adapted_basis(rep, cat);
  auto X0 = testutil::random_pd(3);
  auto s = single_block(testutil::random_pd(3), {testutil::random_symmetric(3)}, X0);
  auto r = restrict_invariant(s, rep, B);
  ASSERT_EQ(r.sdp.blocks.size(), 1u);
  EXPECT_EQ(r.sdp.blocks[0].size, 3);
  EXPECT_NEAR(solve(s).primal_objective, solve(r.sdp).primal_objective, 1e-6);
}

TEST(Restriction, RejectsNonInvariantData) {
  auto cat = catalog("dihedral:4");
  auto rep = induced_representation(cat.action, 1);
  auto B = symmetry_adapted_basis(rep, cat);
  auto C = Matrix<Rational>::identity(3);
  C(1, 1) = 2;  // x and y weighted differently
  auto s = single_block(C, {}, Matrix<Rational>::identity(3));
  EXPECT_THROW(restrict_invariant(s, rep, B), Error);
}

TEST(Restriction, EquivalentOnRandomInvariantSdps) {
  SolverOptions opt;
  for (const char* spec : {"dihedral:4", "cyclic:4", "symmetric:3", "symmetric:4", "c2n:3", "c2n:1", "trivial:2"}) {
    auto cat = catalog(spec);
    auto rep = small_rep(cat);
    ASSERT_LE(rep.size(), 12u) << spec;
    auto B = symmetry_adapted_basis(rep, cat);
    for (int t = 0; t < 50; ++t) {
      const std::size_t N = rep.size();
      auto C = fixed_point_project(testutil::random_pd(N), rep);
      auto X0 = fixed_point_project(testutil::random_pd(N), rep);
      std::vector<Matrix<Rational>> A;
      for (int k = testutil::rand_int(1, 5); k > 0; --k) A.push_back(fixed_point_project(testutil::random_symmetric(N), rep));
      auto full = single_block(C, A, X0);
      auto red = restrict_invariant(full, rep, B);
      auto a = solve(full, opt), b = solve(red.sdp, opt);
      ASSERT_TRUE(a.ok() && b.ok()) << spec << " " << a.message << " / " << b.message;
      EXPECT_NEAR(a.primal_objective, b.primal_objective, 1e-6 * std::max(1.0, std::abs(a.primal_objective)))
          << spec << " trial " << t;
      expect_sound(a, opt, spec);
      expect_sound(b, opt, spec);
      // the lifted reduced optimum is feasible for the full problem
      std::vector<Matrix<double>> blocks;
      for (const auto& x : b.X) {
        Matrix<double> m(x.rows(), x.cols());
        for (long r = 0; r < x.rows(); ++r)
          for (long c = 0; c < x.cols(); ++c) m(r, c) = x(r, c);
        blocks.push_back(m);
      }
      auto X = lift_solution(blocks, B);
      for (const auto& a_k : A) {
        double lhs = 0;
        for (std::size_t r = 0; r < N; ++r)
          for (std::size_t c = 0; c < N; ++c) lhs += a_k(r, c).get_d() * X(r, c);
        EXPECT_NEAR(lhs, frob(a_k, X0).get_d(), 1e-5 * std::max(1.0, std::abs(lhs))) << spec;
      }
    }
  }
}

TEST(Solver, SoundnessOnGramProblems) {
  SolverOptions opt;
  for (const char* f : {"x^4 + y^4 + 1", "x^2*y^2 + x^2 + y^2 + 1 - x*y", "x^4 - 2*x^2*y + y^2 + 3"}) {
    auto g = assemble_gram(parse_polynomial(f, {"x", "y"}), true);
    auto r = solve(g.sdp, opt);
    EXPECT_TRUE(r.ok()) << f;
    expect_sound(r, opt, f);
  }
}
