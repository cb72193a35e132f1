// Fixed instances and hand-written certificates used by tests and the CLI.
#pragma once

#include "symsos/pipeline.hpp"

namespace symsos::fixtures {

inline const char* d4_polynomial() {
  return "x^6 + y^6 - x^4*y^2 - y^4*x^2 - x^4 - y^4 - x^2 - y^2 + 3*x^2*y^2 + 1";
}

inline const char* s3_quartic() { return "x^4 + y^4 + z^4 - 4*x*y*z + x + y + z"; }

inline Matrix<Rational> rational_matrix(const std::vector<std::vector<std::string>>& rows) {
  Matrix<Rational> m(rows.size(), rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = parse_rational(rows[r][c]);
  return m;
}

/// Hand-rounded S3 certificate at lambda = -2113/1000: S1 over (1, e1, e2, e1^2)
/// and S3 over rows (1, e1 | 1) of the two-row Pi.
inline Certificate s3_rational_certificate(const GeneratorBundle& b) {
  if (b.catalog.name != "symmetric:3") throw Error("fixture needs the S3 bundle");
  const auto& pres = b.presentation;
  Certificate c;
  c.mode = CertMode::Invariant;
  c.exact = true;
  c.group = b.catalog.name;
  c.variables = pres.variables;
  c.f = parse_polynomial(s3_quartic(), pres.variables);
  c.lambda = Rational(-2113, 1000);
  c.lambda_float = c.lambda.get_d();
  c.presentation = pres;
  c.presentation.generators.clear();
  auto mono = [](int a, int b, int d) { return Monomial{a, b, d}; };

  CertBlock s1;
  s1.irrep = 0;
  s1.label = b.catalog.irreps[0].label;
  s1.generators = b.sos_bases[0].vectors;
  s1.pi = b.sos_pis[0].entries;
  s1.index = {{0, mono(0, 0, 0)}, {0, mono(1, 0, 0)}, {0, mono(0, 1, 0)}, {0, mono(2, 0, 0)}};
  s1.gram = rational_matrix({{"2113/1000", "1/2", "79/94", "-233/496"},
                             {"1/2", "13261/34968", "-560/11511", "-74/1279"},
                             {"79/94", "-560/11511", "1439/2454", "-85469/377916"},
                             {"-233/496", "-74/1279", "-85469/377916", "85/693"}});
  c.blocks.push_back(s1);

  CertBlock s3;
  s3.irrep = 2;
  s3.label = b.catalog.irreps[2].label;
  s3.generators = b.sos_bases[2].vectors;
  s3.pi = b.sos_pis[2].entries;
  s3.index = {{0, mono(0, 0, 0)}, {0, mono(1, 0, 0)}, {1, mono(0, 0, 0)}};
  s3.gram = rational_matrix({{"79/282", "37/1279", "-2/9"},
                             {"37/1279", "304/693", "749/1636"},
                             {"-2/9", "749/1636", "3469/4908"}});
  c.blocks.push_back(s3);
  return c;
}

inline std::vector<std::string> choi_variables() { return {"x1", "x2", "x3", "y1", "y2", "y3"}; }

inline Polynomial choi_biquadratic() {
  return parse_polynomial(
      "x1^2*y1^2 + x2^2*y2^2 + x3^2*y3^2 - 2*(x1*x2*y1*y2 + x2*x3*y2*y3 + x3*x1*y3*y1)"
      " + x1^2*y2^2 + x2^2*y3^2 + x3^2*y1^2",
      choi_variables());
}

/// (sum x_i^2 + y_i^2) * B(x; y)
inline Polynomial choi_target() {
  auto v = choi_variables();
  return parse_polynomial("x1^2 + x2^2 + x3^2 + y1^2 + y2^2 + y3^2", v) * choi_biquadratic();
}

/// Two isotypic blocks: Q1 (3x3) against two v-vectors, Q2 (4x4) against six.
inline Certificate choi_certificate() {
  auto vars = choi_variables();
  auto vec = [&](std::initializer_list<const char*> items) {
    PolyVector v;
    for (const char* s : items) v.push_back(parse_alg_polynomial(s, vars));
    return v;
  };
  Certificate c;
  c.mode = CertMode::Isotypic;
  c.exact = true;
  c.group = "choi";
  c.variables = vars;
  c.f = choi_target();
  c.lambda = 0;
  CertBlock q1;
  q1.label = "Q1";
  q1.gram = rational_matrix({{"1", "-1/2", "-1/2"}, {"-1/2", "1", "-1/2"}, {"-1/2", "-1/2", "1"}});
  q1.vectors = {vec({"x3*y1*y2", "x2*y1*y3", "x1*y2*y3"}), vec({"x2*x3*y1", "x1*x3*y2", "x1*x2*y3"})};
  CertBlock q2;
  q2.label = "Q2";
  q2.gram = rational_matrix({{"1", "-1", "1/2", "-1/2"},
                             {"-1", "1", "-1/2", "1/2"},
                             {"1/2", "-1/2", "1", "-1"},
                             {"-1/2", "1/2", "-1", "1"}});
  q2.vectors = {vec({"x2*y2*y3", "x3*y1^2", "x1*y1*y3", "x3*y3^2"}), vec({"x1*y1*y2", "x2*y3^2", "x3*y2*y3", "x2*y2^2"}),
                vec({"x1*x2*y2", "x3^2*y1", "x1*x3*y3", "x1^2*y1"}), vec({"x1*x3*y1", "x2^2*y3", "x2*x3*y2", "x3^2*y3"}),
                vec({"x2*x3*y3", "x1^2*y2", "x1*x2*y1", "x2^2*y2"}), vec({"x3*y1*y3", "x1*y2^2", "x2*y1*y2", "x1*y1^2"})};
  c.blocks = {q1, q2};
  return c;
}

inline std::vector<std::string> sottile_variables() { return {"s", "t", "u", "v"}; }

/// 12 (uv + st - sv - tu)^2 + 12 ((uv + st + sv + tu - 2vt - 2us)/sqrt3)^2 as
/// an isotypic certificate with two 1x1 blocks.
inline Certificate sottile_certificate() {
  auto vars = sottile_variables();
  Certificate c;
  c.mode = CertMode::Isotypic;
  c.exact = true;
  c.group = "symmetric:4";
  c.variables = vars;
  c.lambda = 0;
  CertBlock a;
  a.label = "[2,2]a";
  a.gram = rational_matrix({{"12"}});
  a.vectors = {{parse_alg_polynomial("u*v + s*t - s*v - t*u", vars)}};
  CertBlock b;
  b.label = "[2,2]b";
  b.gram = rational_matrix({{"12"}});
  b.vectors = {{parse_alg_polynomial("(u*v + s*t + s*v + t*u - 2*v*t - 2*u*s)/sqrt(3)", vars)}};
  c.blocks = {a, b};
  c.f = certificate_expansion(c);
  return c;
}

/// The Sottile quartic given through its symmetric-function form.
inline Polynomial sottile_quartic() {
  auto cat = catalog("symmetric:4");
  auto pres = presentation(cat);
  auto ft = parse_invariant("16*e2^2 - 48*e1*e3 + 192*e4", pres);
  auto p = expand_invariants(ft, pres);
  // rename x1..x4 -> s,t,u,v: same variable order
  return p;
}

}  // namespace symsos::fixtures
