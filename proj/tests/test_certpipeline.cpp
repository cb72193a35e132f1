#include "test_util.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <fstream>

using namespace symsos;

namespace {

int run_cli(const std::string& args) {
  std::string cmd = std::string(SYMSOS_CLI) + " " + args + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string instance(const std::string& name) { return std::string(SYMSOS_SOURCE_DIR) + "/examples/instances/" + name; }

std::string temp_path(const std::string& name) { return ::testing::TempDir() + name; }

double block_trace(const CertBlock& b) { return b.gram_float.trace(); }

}  // namespace

TEST(Pipeline, D4LowerBound) {
  auto pres = presentation(catalog("dihedral:4"));
  auto f = parse_polynomial(fixtures::d4_polynomial(), pres.variables);
  auto t0 = std::chrono::steady_clock::now();
  auto r = sos_lower_bound(f, "dihedral:4");
  auto cert = certify(r.certificate);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_NEAR(r.lambda, -3825.0 / 4096.0, 1e-6);
  EXPECT_LT(secs, 5.0);
  auto rep = verify_certificate(cert, f);
  EXPECT_TRUE(rep.ok) << rep.message;
  EXPECT_LE(cert.lambda.get_d(), r.lambda + 1e-9);
  auto guess = guess_lambda(r.certificate);
  ASSERT_TRUE(guess.has_value());
  EXPECT_EQ(*guess, Rational(-3825, 4096));
}

TEST(Pipeline, S3QuarticLowerBound) {
  auto bundle = algorithm_one(catalog("symmetric:3"), 2);
  auto f = parse_polynomial(fixtures::s3_quartic(), bundle.presentation.variables);
  auto c = algorithm_two(f, bundle, Objective::MaximizeLambda);
  EXPECT_NEAR(c.lambda_float, -2.112913882, 1e-6);
  std::vector<long> sizes;
  for (const auto& b : c.blocks) sizes.push_back(b.gram_float.rows());
  EXPECT_EQ(sizes, (std::vector<long>{4, 3}));
  auto exact = certify(c);
  EXPECT_TRUE(verify_certificate(exact, f).ok);
  // symmetry changes nothing about the bound
  auto plain = plain_gram(f, Objective::MaximizeLambda);
  EXPECT_NEAR(plain.lambda_float, c.lambda_float, 1e-6);
  auto pe = certify(plain);
  EXPECT_TRUE(verify_certificate(pe, f).ok);
}

TEST(Pipeline, S3PrintedCertificateVerifies) {
  auto bundle = algorithm_one(catalog("symmetric:3"), 2);
  auto cert = fixtures::s3_rational_certificate(bundle);
  auto rep = verify_certificate(cert, cert.f);
  EXPECT_TRUE(rep.ok) << rep.message;
  EXPECT_EQ(cert.blocks[0].gram.rows(), 4u);
  EXPECT_EQ(cert.blocks[1].gram.rows(), 3u);
}

TEST(Pipeline, CorruptedCertificatesAreRejected) {
  auto bundle = algorithm_one(catalog("symmetric:3"), 2);
  auto good = fixtures::s3_rational_certificate(bundle);
  auto entry = good;
  entry.blocks[0].gram(1, 2) += Rational(1, 1000000);
  entry.blocks[0].gram(2, 1) += Rational(1, 1000000);
  EXPECT_FALSE(verify_certificate(entry, entry.f).ok);
  auto lambda = good;
  lambda.lambda += Rational(1, 1000);
  EXPECT_FALSE(verify_certificate(lambda, lambda.f).ok);
  auto notpsd = good;
  notpsd.blocks[1].gram(2, 2) = -1;
  EXPECT_FALSE(verify_certificate(notpsd, notpsd.f).ok);
  auto other = good;
  EXPECT_FALSE(verify_certificate(other, other.f + Polynomial::constant(3, 1)).ok);
}

TEST(Pipeline, CertificateJsonRoundTrip) {
  auto bundle = algorithm_one(catalog("symmetric:3"), 2);
  auto cert = fixtures::s3_rational_certificate(bundle);
  auto back = certificate_from_json(to_json(cert));
  EXPECT_TRUE(verify_certificate(back, cert.f).ok);
  EXPECT_EQ(back.lambda, cert.lambda);
  auto choi = certificate_from_json(to_json(fixtures::choi_certificate()));
  EXPECT_TRUE(verify_certificate(choi, fixtures::choi_target()).ok);
}

TEST(Fixtures, ChoiExpansion) {
  auto cert = fixtures::choi_certificate();
  EXPECT_EQ(certificate_expansion(cert), fixtures::choi_target());
  auto rep = verify_certificate(cert, fixtures::choi_target());
  EXPECT_TRUE(rep.ok) << rep.message;
  // the multiplier cannot be dropped
  EXPECT_FALSE(verify_certificate(cert, fixtures::choi_biquadratic()).ok);
  // the form is invariant under its 96-element group
  auto G = choi_group();
  for (const auto& g : G.generators) EXPECT_EQ(substitute_linear(fixtures::choi_biquadratic(), g), fixtures::choi_biquadratic());
}

TEST(Fixtures, SottileExpansion) {
  auto cert = fixtures::sottile_certificate();
  EXPECT_EQ(cert.f, fixtures::sottile_quartic());
  EXPECT_TRUE(verify_certificate(cert, fixtures::sottile_quartic()).ok);
  auto pres = presentation(catalog("symmetric:4"));
  EXPECT_EQ(rewrite_in_invariants(cert.f, pres), parse_invariant("16*e2^2 - 48*e1*e3 + 192*e4", pres));
}

TEST(Fixtures, SottileInvariantFeasibilityUsesOnlyTwoTwo) {
  auto cat = catalog("symmetric:4");
  auto bundle = algorithm_one(cat, 2);
  PipelineOptions opt;
  opt.homogeneous = true;
  auto c = algorithm_two(fixtures::sottile_quartic(), bundle, Objective::Feasibility, opt);
  auto exact = certify(c);
  auto rep = verify_certificate(exact, fixtures::sottile_quartic());
  EXPECT_TRUE(rep.ok) << rep.message;
  double support = 0, elsewhere = 0;
  for (const auto& b : c.blocks) (b.label == "[2,2]" ? support : elsewhere) += block_trace(b);
  EXPECT_GT(support, 1e-3);
  EXPECT_LT(elsewhere, 1e-6);
  for (const auto& b : exact.blocks)
    if (b.label != "[2,2]") EXPECT_EQ(b.gram, Matrix<Rational>(b.gram.rows(), b.gram.cols())) << b.label;
}

TEST(Pipeline, SymmetricQuadraticVerdicts) {
  std::uniform_int_distribution<int> coef(-1000, 1000);
  for (int n = 2; n <= 8; ++n) {
    auto bundle = algorithm_one(catalog("symmetric:" + std::to_string(n)), 1);
    const auto& th = bundle.presentation.theta;
    for (int t = 0; t < 200; ++t) {
      Rational a(coef(testutil::rng()), 1000), b(coef(testutil::rng()), 1000);
      a.canonicalize();
      b.canonicalize();
      Polynomial f = (th[0] * th[0]).scaled(a) + th[1].scaled(b);
      bool truth = 2 * n * a + (n - 1) * b >= 0 && b <= 0;
      bool verdict = f.is_zero() || sos_feasible(f, bundle);
      EXPECT_EQ(verdict, truth) << "n=" << n << " a=" << a << " b=" << b;
    }
  }
}

TEST(Pipeline, SymmetricQuadraticIsALinearProgram) {
  // a e1^2 + b e2 = c1 e1^2 + c2 <Pi, ...>: both blocks are scalars
  for (int n = 2; n <= 6; ++n) {
    auto bundle = algorithm_one(catalog("symmetric:" + std::to_string(n)), 1);
    const auto& th = bundle.presentation.theta;
    PipelineOptions opt;
    opt.homogeneous = true;
    auto c = algorithm_two((th[0] * th[0]).scaled(n) - th[1], bundle, Objective::Feasibility, opt);
    for (const auto& b : c.blocks) EXPECT_EQ(b.gram_float.rows(), 1) << "n=" << n;
  }
}

TEST(Pipeline, C2ExampleAtZero) {
  auto bundle = algorithm_one(catalog("c2n:1"));
  auto f = parse_polynomial("x^2 + (x - x^3)^2", bundle.presentation.variables);
  auto c = algorithm_two(f, bundle, Objective::Feasibility);
  auto exact = certify(c);
  EXPECT_EQ(exact.lambda, 0);
  EXPECT_TRUE(verify_certificate(exact, f).ok);
}

TEST(Pipeline, NonSosFormHasNoCertificate) {
  auto pres = presentation(catalog("dihedral:4"));
  // Motzkin-type form: nonnegative, not a sum of squares
  auto f = parse_polynomial("x^4*y^2 + x^2*y^4 - 3*x^2*y^2 + 1", pres.variables);
  EXPECT_FALSE(sos_feasible(f, algorithm_one(catalog("dihedral:4"), 3)));
  EXPECT_THROW(plain_gram(f, Objective::Feasibility), NoCertificate);
  EXPECT_THROW(plain_gram(parse_polynomial("x^3 + 1", pres.variables), Objective::Feasibility), NoCertificate);
}

TEST(Pipeline, C4QuarticBound) {
  auto r = sos_lower_bound(parse_polynomial("x^4 + y^4 - x^3*y + x*y^3 - x^2 - y^2 + 3", {"x", "y"}), "cyclic:4");
  auto plain = plain_gram(parse_polynomial("x^4 + y^4 - x^3*y + x*y^3 - x^2 - y^2 + 3", {"x", "y"}),
                          Objective::MaximizeLambda);
  EXPECT_NEAR(r.lambda, plain.lambda_float, 1e-6);
  EXPECT_TRUE(verify_certificate(certify(r.certificate), r.certificate.f).ok);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli(""), 1);
  EXPECT_EQ(run_cli("bound --poly " + instance("d4_robinson.poly")), 1);  // no group
  EXPECT_EQ(run_cli("molien --group symmetric:4 --dmax 15"), 0);
  EXPECT_EQ(run_cli("census --n 10 --degree 8"), 0);
  const std::string cert = temp_path("d4_cert.json");
  EXPECT_EQ(run_cli("bound --group dihedral:4 --poly " + instance("d4_robinson.poly") + " --round --cert " + cert), 0);
  EXPECT_EQ(run_cli("verify --cert " + cert), 0);
  EXPECT_EQ(run_cli("verify --cert " + cert + " --poly " + instance("d4_robinson.poly")), 0);
  // no certificate: Motzkin-type form
  EXPECT_EQ(run_cli("bound --group dihedral:4 --feasibility --expr 'x^4*y^2 + x^2*y^4 - 3*x^2*y^2 + 1'"), 2);
  // tampered lambda
  {
    std::ifstream in(cert);
    auto j = nlohmann::json::parse(in);
    j["lambda"] = "1/2";
    std::ofstream out(temp_path("d4_bad.json"));
    out << j.dump();
  }
  EXPECT_EQ(run_cli("verify --cert " + temp_path("d4_bad.json")), 3);
  EXPECT_EQ(run_cli("verify --cert " + cert + " --poly " + instance("s3_quartic.poly")), 1);
}

TEST(Pipeline, SottileDegreeTwentySmoke) {
  if (!testutil::slow_enabled()) GTEST_SKIP() << "set SYMSOS_RUN_SLOW=1";
  // an SOS form of degree 20 built from the quartic
  auto q = fixtures::sottile_quartic();
  auto f = q.pow(5);
  auto bundle = algorithm_one(catalog("symmetric:4"), 10);
  PipelineOptions opt;
  opt.homogeneous = true;
  auto c = algorithm_two(f, bundle, Objective::Feasibility, opt);
  std::multiset<long> sizes;
  for (const auto& b : c.blocks) sizes.insert(b.gram_float.rows());
  EXPECT_EQ(sizes, (std::multiset<long>{44, 26, 24, 23, 5}));
  double scale = 1;
  for (const auto& b : c.blocks) scale = std::max(scale, b.gram_float.cwiseAbs().maxCoeff());
  EXPECT_GE(c.min_eigenvalue / scale, -1e-7);
}
