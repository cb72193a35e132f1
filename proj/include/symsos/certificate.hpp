// SOS certificates: float and exact forms, rounding, exact replay, JSON.
#pragma once

#include <memory>

#include "symsos/facial.hpp"

namespace symsos {

enum class CertMode { PlainGram, Invariant, Isotypic };

inline std::string to_string(CertMode m) {
  switch (m) {
    case CertMode::PlainGram: return "plain-gram";
    case CertMode::Invariant: return "invariant";
    case CertMode::Isotypic: return "isotypic";
  }
  return "?";
}

inline CertMode cert_mode_from_string(const std::string& s) {
  if (s == "plain-gram") return CertMode::PlainGram;
  if (s == "invariant") return CertMode::Invariant;
  if (s == "isotypic") return CertMode::Isotypic;
  throw Error("unknown certificate mode '" + s + "'");
}

struct CertBlock {
  std::string label;
  int irrep = -1;
  // invariant mode: module generators, Pi, and the (row, theta-monomial) of each Gram index
  std::vector<PolyVector> generators;
  std::vector<std::vector<InvariantPoly>> pi;
  std::vector<std::pair<int, Monomial>> index;
  // isotypic mode: sum_j v_j^T Q v_j
  std::vector<PolyVector> vectors;
  Matrix<Rational> gram;
  Eigen::MatrixXd gram_float;
};

/// What the solver saw; kept so a float certificate can be rounded later.
struct SolveContext {
  BlockSDP original;
  Face face;
  std::vector<Eigen::MatrixXd> X;  // reduced blocks
  std::vector<double> y;           // free values of the reduced problem
  int lambda_index = -1;
};

struct Certificate {
  CertMode mode = CertMode::PlainGram;
  bool exact = false;
  std::string group;
  std::vector<std::string> variables;
  Polynomial f;
  Rational lambda = 0;
  double lambda_float = 0;
  InvariantPresentation presentation;  // invariant mode
  std::vector<Monomial> Y;             // plain mode
  std::vector<CertBlock> blocks;
  // float diagnostics
  std::string status;
  double gap = 0, primal_residual = 0, dual_residual = 0, min_eigenvalue = 0;
  long denominator = 0;  // bound used by the rounding, 0 if not rounded
  std::shared_ptr<const SolveContext> context;
};

// ---------------------------------------------------------------------------
// Rounding

struct RoundedPoint {
  std::vector<Matrix<Rational>> X;
  std::vector<Rational> y;
};

/// Rounds X entrywise (continued fractions, denominators <= den), then
/// projects orthogonally onto the constraints with the free values fixed.
/// nullopt if the projection is not PSD; reason explains why.
inline std::optional<RoundedPoint> round_point(const BlockSDP& sdp, const std::vector<Eigen::MatrixXd>& X,
                                               const std::vector<Rational>& y, long den, std::string* reason = nullptr) {
  SvecLayout L(sdp);
  const std::size_t nfree = L.nfree, total = sdp.svec_size() + nfree;
  std::vector<SparseRow> rows;
  std::vector<Rational> rhs;
  for (const auto& c : sdp.constraints) {
    SparseRow r = constraint_row(sdp, L, c);
    Rational b = c.rhs;
    for (auto it = r.begin(); it != r.end();) {
      if (it->first < nfree) {
        b -= it->second * y.at(it->first);
        it = r.erase(it);
      } else {
        ++it;
      }
    }
    rows.push_back(std::move(r));
    rhs.push_back(b);
  }
  auto R = sparse_rref(std::move(rows), std::move(rhs));
  if (!R.consistent) {
    if (reason) *reason = "free values admit no Gram matrix";
    return std::nullopt;
  }
  std::vector<Rational> x(total);
  for (std::size_t col = nfree; col < total; ++col) {
    auto [b, r, c] = L.locate(sdp, col);
    x[col] = approximate(X.at(b)(r, c), den);
  }
  const std::size_t m = R.rows.size();
  std::vector<Rational> res(m);
  bool dirty = false;
  for (std::size_t k = 0; k < m; ++k) {
    Rational s = R.rhs[k];
    for (const auto& [c, v] : R.rows[k]) s -= v * x[c];
    res[k] = s;
    if (s != 0) dirty = true;
  }
  if (dirty) {
    Matrix<Rational> G(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i; j < m; ++j) {
        Rational s = 0;
        const auto& a = R.rows[i];
        const auto& b = R.rows[j];
        auto ia = a.begin();
        auto ib = b.begin();
        while (ia != a.end() && ib != b.end()) {
          if (ia->first < ib->first) ++ia;
          else if (ib->first < ia->first) ++ib;
          else {
            s += ia->second * ib->second;
            ++ia;
            ++ib;
          }
        }
        G(i, j) = s;
        G(j, i) = s;
      }
    auto z = solve_linear(G, res);
    if (!z) throw Error("projection system is singular");
    for (std::size_t k = 0; k < m; ++k)
      if ((*z)[k] != 0)
        for (const auto& [c, v] : R.rows[k]) x[c] += (*z)[k] * v;
  }
  RoundedPoint out;
  out.y = y;
  for (const auto& b : sdp.blocks) out.X.emplace_back(b.size, b.size);
  for (std::size_t col = nfree; col < total; ++col) {
    auto [b, r, c] = L.locate(sdp, col);
    out.X[b](r, c) = x[col];
    out.X[b](c, r) = x[col];
  }
  for (std::size_t b = 0; b < out.X.size(); ++b) {
    auto rep = exact_psd(out.X[b]);
    if (!rep.psd) {
      if (reason) *reason = "block " + sdp.blocks[b].name + " not PSD after rounding: " + rep.reason;
      return std::nullopt;
    }
  }
  return out;
}

/// Exact blocks of the original problem from exact blocks of the face.
inline std::vector<Matrix<Rational>> lift_face_exact(const Face& f, const std::vector<Matrix<Rational>>& reduced,
                                                     const BlockSDP& original) {
  std::vector<Matrix<Rational>> out;
  for (const auto& b : original.blocks) out.emplace_back(b.size, b.size);
  for (std::size_t j = 0; j < f.origin.size(); ++j) {
    int o = f.origin[j];
    out[o] = f.V[o] * reduced[j] * f.V[o].transpose();
  }
  return out;
}

inline const std::vector<long>& default_schedule() {
  static const std::vector<long> s{100, 1000, 10000, 1000000};
  return s;
}

/// Float certificate -> exact one. Lambda is rounded down under each bound
/// of the schedule; the first bound that gives exact PSD blocks wins.
inline Certificate round_certificate(const Certificate& cert, const std::vector<long>& schedule = default_schedule()) {
  if (cert.exact) return cert;
  if (!cert.context) throw Error("certificate carries no solver data to round");
  const SolveContext& ctx = *cert.context;
  std::string last;
  for (long den : schedule) {
    std::vector<Rational> y;
    for (std::size_t v = 0; v < ctx.y.size(); ++v)
      y.push_back(static_cast<int>(v) == ctx.lambda_index ? round_down(ctx.y[v], den) : approximate(ctx.y[v], den));
    auto p = round_point(ctx.face.sdp, ctx.X, y, den, &last);
    if (!p) continue;
    auto blocks = lift_face_exact(ctx.face, p->X, ctx.original);
    Certificate out = cert;
    out.exact = true;
    out.denominator = den;
    if (ctx.lambda_index >= 0) out.lambda = y[ctx.lambda_index];
    out.lambda_float = out.lambda.get_d();
    for (std::size_t b = 0; b < out.blocks.size(); ++b) out.blocks[b].gram = blocks[b];
    out.context.reset();
    return out;
  }
  throw Error("rounding failed under every denominator bound (" + last + "); lambda at boundary; retry with lambda - eps");
}

// ---------------------------------------------------------------------------
// Exact replay

struct VerifyReport {
  bool ok = true;
  std::string message;
  Polynomial residual;  // sum of squares minus (f - lambda)
};

namespace detail {

inline void fail(VerifyReport& r, const std::string& m) {
  if (r.ok) r.message = m;
  r.ok = false;
}

inline std::string first_term(const Polynomial& p, const std::vector<std::string>& vars) {
  if (p.is_zero()) return "0";
  const auto& [m, c] = *p.terms().rbegin();
  return render_polynomial(Polynomial::monomial(m, c), vars);
}

}  // namespace detail

/// Expansion of the certificate's sum of squares in the original variables.
inline Polynomial certificate_expansion(const Certificate& cert, VerifyReport* report = nullptr) {
  const int n = static_cast<int>(cert.variables.size());
  Polynomial total(n);
  if (cert.mode == CertMode::PlainGram) {
    if (cert.blocks.size() != 1) throw Error("plain certificate needs exactly one block");
    const auto& Q = cert.blocks[0].gram;
    if (Q.rows() != cert.Y.size()) throw DimensionError("Gram size does not match Y");
    for (std::size_t a = 0; a < Q.rows(); ++a)
      for (std::size_t b = a; b < Q.cols(); ++b)
        if (Q(a, b) != 0)
          total.add_term(monomial_product(cert.Y[a], cert.Y[b]), a == b ? Q(a, b) : Rational(2 * Q(a, b)));
    return total;
  }
  if (cert.mode == CertMode::Isotypic) {
    for (const auto& blk : cert.blocks) {
      const auto& Q = blk.gram;
      for (const auto& v : blk.vectors) {
        if (v.size() != Q.rows()) throw DimensionError("vector length does not match Gram size");
        AlgPolynomial s(n);
        for (std::size_t a = 0; a < Q.rows(); ++a)
          for (std::size_t b = 0; b < Q.cols(); ++b)
            if (Q(a, b) != 0) s += (v[a] * v[b]).scaled(AlgNum(Q(a, b)));
        try {
          total += to_rational(s);
        } catch (const Error&) {
          throw Error("isotypic block " + blk.label + " has an irrational expansion");
        }
      }
    }
    return total;
  }
  // invariant: sum_{p,q} Q_pq theta^(a_p + a_q) <g_kp, g_kq>
  const auto& pres = cert.presentation;
  std::map<std::pair<int, int>, Polynomial> cache;
  for (const auto& blk : cert.blocks) {
    const int r = static_cast<int>(blk.generators.size());
    std::vector<std::vector<Polynomial>> dots(r, std::vector<Polynomial>(r));
    for (int k = 0; k < r; ++k)
      for (int l = k; l < r; ++l) {
        dots[k][l] = dot_rational(blk.generators[k], blk.generators[l]);
        dots[l][k] = dots[k][l];
        if (report && !blk.pi.empty() && expand_invariants(blk.pi.at(k).at(l), pres) != dots[k][l])
          detail::fail(*report, "Pi entry (" + std::to_string(k + 1) + "," + std::to_string(l + 1) + ") of block " +
                                    blk.label + " does not match its generators");
      }
    const auto& Q = blk.gram;
    if (Q.rows() != blk.index.size()) throw DimensionError("Gram size does not match the envelope of " + blk.label);
    std::map<std::pair<int, int>, Polynomial> acc;  // (k,l) -> invariant multiplier
    for (std::size_t p = 0; p < Q.rows(); ++p)
      for (std::size_t q = p; q < Q.cols(); ++q) {
        if (Q(p, q) == 0) continue;
        const auto& [k, a] = blk.index[p];
        const auto& [l, b] = blk.index[q];
        Rational c = p == q ? Q(p, q) : Rational(2 * Q(p, q));
        auto key = std::make_pair(std::min(k, l), std::max(k, l));
        auto it = acc.find(key);
        if (it == acc.end()) it = acc.emplace(key, Polynomial(n)).first;
        it->second += expand_theta_monomial(monomial_product(a, b), pres, &cache).scaled(c);
      }
    for (const auto& [kl, mult] : acc) total += mult * dots[kl.first][kl.second];
  }
  return total;
}

inline VerifyReport verify_certificate(const Certificate& cert, const Polynomial& f) {
  VerifyReport rep;
  if (!cert.exact) {
    detail::fail(rep, "certificate is not exact");
    return rep;
  }
  for (const auto& blk : cert.blocks) {
    auto psd = exact_psd(blk.gram);
    if (!psd.psd) detail::fail(rep, "Gram matrix of block " + blk.label + " is not PSD: " + psd.reason);
  }
  Polynomial target = f - Polynomial::constant(f.nvars(), cert.lambda);
  try {
    rep.residual = certificate_expansion(cert, &rep) - target;
  } catch (const Error& e) {
    detail::fail(rep, e.what());
    return rep;
  }
  if (!rep.residual.is_zero())
    detail::fail(rep, "identity mismatch: residual has " + std::to_string(rep.residual.size()) +
                          " terms, leading " + detail::first_term(rep.residual, cert.variables));
  return rep;
}

// ---------------------------------------------------------------------------
// JSON

namespace detail {

inline nlohmann::json monomial_json(const Monomial& m) { return nlohmann::json(m); }

inline nlohmann::json gram_json(const CertBlock& b, bool exact) {
  nlohmann::json g = nlohmann::json::array();
  const std::size_t N = exact ? b.gram.rows() : static_cast<std::size_t>(b.gram_float.rows());
  for (std::size_t r = 0; r < N; ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < N; ++c) {
      if (exact) row.push_back(b.gram(r, c).get_str());
      else row.push_back(b.gram_float(r, c));
    }
    g.push_back(row);
  }
  return g;
}

inline nlohmann::json vector_json(const PolyVector& v, const std::vector<std::string>& vars) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& p : v) a.push_back(render_polynomial(p, vars));
  return a;
}

inline PolyVector vector_from_json(const nlohmann::json& a, const std::vector<std::string>& vars) {
  PolyVector v;
  for (const auto& s : a) v.push_back(parse_alg_polynomial(s.get<std::string>(), vars));
  return v;
}

}  // namespace detail

inline nlohmann::json to_json(const Certificate& c) {
  nlohmann::json j;
  j["format"] = "symsos-certificate/1";
  j["mode"] = to_string(c.mode);
  j["exact"] = c.exact;
  j["group"] = c.group;
  j["variables"] = c.variables;
  j["f"] = render_polynomial(c.f, c.variables);
  if (c.exact) j["lambda"] = c.lambda.get_str();
  j["lambda_float"] = c.lambda_float;
  if (c.denominator) j["denominator"] = c.denominator;
  if (!c.status.empty()) {
    j["solver"] = {{"status", c.status},
                   {"gap", c.gap},
                   {"primal_residual", c.primal_residual},
                   {"dual_residual", c.dual_residual},
                   {"min_eigenvalue", c.min_eigenvalue}};
  }
  if (c.mode == CertMode::PlainGram) {
    j["Y"] = nlohmann::json::array();
    for (const auto& m : c.Y) j["Y"].push_back(m);
  }
  if (c.mode == CertMode::Invariant) {
    const auto& p = c.presentation;
    nlohmann::json pj;
    pj["theta_names"] = p.theta_names;
    pj["eta_names"] = p.eta_names;
    for (const auto& t : p.theta) pj["theta"].push_back(render_polynomial(t, c.variables));
    for (const auto& e : p.eta) pj["eta"].push_back(render_polynomial(e, c.variables));
    pj["syzygies"] = nlohmann::json::array();
    for (const auto& s : p.syzygies) pj["syzygies"].push_back(render_polynomial(s, p.symbol_names()));
    j["presentation"] = pj;
  }
  j["blocks"] = nlohmann::json::array();
  for (const auto& b : c.blocks) {
    nlohmann::json bj;
    bj["label"] = b.label;
    bj["irrep"] = b.irrep;
    if (c.mode == CertMode::Invariant) {
      for (const auto& g : b.generators) bj["generators"].push_back(detail::vector_json(g, c.variables));
      for (const auto& row : b.pi) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& e : row) r.push_back(render_invariant(e, c.presentation));
        bj["pi"].push_back(r);
      }
      for (const auto& [k, a] : b.index) bj["index"].push_back({k, a});
    }
    if (c.mode == CertMode::Isotypic)
      for (const auto& v : b.vectors) bj["vectors"].push_back(detail::vector_json(v, c.variables));
    bj["gram"] = detail::gram_json(b, c.exact);
    j["blocks"].push_back(bj);
  }
  return j;
}

inline Certificate certificate_from_json(const nlohmann::json& j) {
  Certificate c;
  c.mode = cert_mode_from_string(j.at("mode").get<std::string>());
  c.exact = j.at("exact").get<bool>();
  c.group = j.value("group", "");
  c.variables = j.at("variables").get<std::vector<std::string>>();
  c.f = parse_polynomial(j.at("f").get<std::string>(), c.variables);
  if (c.exact) c.lambda = parse_rational(j.at("lambda").get<std::string>());
  c.lambda_float = j.value("lambda_float", c.lambda.get_d());
  c.denominator = j.value("denominator", 0L);
  if (j.contains("solver")) {
    const auto& s = j["solver"];
    c.status = s.value("status", "");
    c.gap = s.value("gap", 0.0);
    c.primal_residual = s.value("primal_residual", 0.0);
    c.dual_residual = s.value("dual_residual", 0.0);
    c.min_eigenvalue = s.value("min_eigenvalue", 0.0);
  }
  const int n = static_cast<int>(c.variables.size());
  if (c.mode == CertMode::PlainGram)
    for (const auto& m : j.at("Y")) {
      c.Y.push_back(m.get<Monomial>());
      if (static_cast<int>(c.Y.back().size()) != n) throw DimensionError("monomial length mismatch in Y");
    }
  if (c.mode == CertMode::Invariant) {
    const auto& pj = j.at("presentation");
    auto& p = c.presentation;
    p.nvars = n;
    p.variables = c.variables;
    p.theta_names = pj.at("theta_names").get<std::vector<std::string>>();
    p.eta_names = pj.at("eta_names").get<std::vector<std::string>>();
    for (const auto& t : pj.at("theta")) p.theta.push_back(parse_polynomial(t.get<std::string>(), c.variables));
    for (const auto& e : pj.at("eta")) p.eta.push_back(parse_polynomial(e.get<std::string>(), c.variables));
    if (pj.contains("syzygies"))
      for (const auto& s : pj["syzygies"]) p.syzygies.push_back(parse_polynomial(s.get<std::string>(), p.symbol_names()));
  }
  for (const auto& bj : j.at("blocks")) {
    CertBlock b;
    b.label = bj.value("label", "");
    b.irrep = bj.value("irrep", -1);
    if (bj.contains("generators"))
      for (const auto& g : bj["generators"]) b.generators.push_back(detail::vector_from_json(g, c.variables));
    if (bj.contains("pi"))
      for (const auto& row : bj["pi"]) {
        std::vector<InvariantPoly> r;
        for (const auto& e : row) r.push_back(parse_invariant(e.get<std::string>(), c.presentation));
        b.pi.push_back(r);
      }
    if (bj.contains("index"))
      for (const auto& e : bj["index"]) b.index.emplace_back(e.at(0).get<int>(), e.at(1).get<Monomial>());
    if (bj.contains("vectors"))
      for (const auto& v : bj["vectors"]) b.vectors.push_back(detail::vector_from_json(v, c.variables));
    const auto& g = bj.at("gram");
    const std::size_t N = g.size();
    if (c.exact) b.gram = Matrix<Rational>(N, N);
    else b.gram_float = Eigen::MatrixXd::Zero(N, N);
    for (std::size_t r = 0; r < N; ++r) {
      if (g[r].size() != N) throw DimensionError("Gram matrix is not square");
      for (std::size_t col = 0; col < N; ++col) {
        if (c.exact) b.gram(r, col) = parse_rational(g[r][col].get<std::string>());
        else b.gram_float(r, col) = g[r][col].get<double>();
      }
    }
    c.blocks.push_back(std::move(b));
  }
  return c;
}

}  // namespace symsos
