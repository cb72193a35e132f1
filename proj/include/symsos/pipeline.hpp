// Generator computation, invariant SOS search, lower bounds, certification.
#pragma once

#include "symsos/certificate.hpp"
#include "symsos/molien.hpp"

namespace symsos {

/// Raised when no SOS representation is found; the CLI maps it to exit 2.
struct NoCertificate : Error {
  using Error::Error;
};

struct GeneratorBundle {
  IrrepCatalog catalog;
  InvariantPresentation presentation;
  std::vector<EquivariantBasis> bases;      // module generators as found
  std::vector<PiMatrix> pis;                // Pi of those generators
  std::vector<EquivariantBasis> sos_bases;  // with J*b added for complex-type irreps
  std::vector<PiMatrix> sos_pis;
};

/// degree_cap bounds the equivariant search for solved groups (-1: full).
inline GeneratorBundle algorithm_one(const IrrepCatalog& cat, int degree_cap = -1) {
  GeneratorBundle g;
  g.catalog = cat;
  g.presentation = presentation(cat);
  for (int i = 0; i < static_cast<int>(cat.irreps.size()); ++i) {
    auto b = equivariant_basis(cat, g.presentation, i, degree_cap);
    g.pis.push_back(pi_matrix(b, g.presentation));
    auto s = sos_generators(b);
    g.sos_pis.push_back(b.complex_type ? pi_matrix(s, g.presentation) : g.pis.back());
    g.bases.push_back(std::move(b));
    g.sos_bases.push_back(std::move(s));
  }
  return g;
}

enum class Objective { Feasibility, MaximizeLambda };

struct PipelineOptions {
  SolverOptions solver;
  bool facial = true;
  bool homogeneous = false;  // feasibility of forms: keep only half-degree envelope rows
};

namespace detail {

inline void fill_solver_fields(Certificate& cert, const SDPSolution& s, const std::vector<Eigen::MatrixXd>& X) {
  cert.status = to_string(s.status);
  cert.gap = s.gap;
  cert.primal_residual = s.primal_residual;
  cert.dual_residual = s.dual_residual;
  cert.min_eigenvalue = X.empty() ? 0 : min_eigenvalue(X);
}

/// Solves (optionally on a reduced face) and returns the float certificate
/// skeleton: blocks with gram_float filled and the rounding context.
inline std::pair<SDPSolution, std::shared_ptr<SolveContext>> solve_for_certificate(const BlockSDP& sdp, Objective obj,
                                                                                     const PipelineOptions& opt) {
  auto ctx = std::make_shared<SolveContext>();
  ctx->original = sdp;
  ctx->lambda_index = sdp.free_index("lambda");
  if (opt.facial) {
    ctx->face = facial_reduction(sdp);
  } else {
    ctx->face.sdp = sdp;
    for (std::size_t i = 0; i < sdp.blocks.size(); ++i) {
      ctx->face.origin.push_back(static_cast<int>(i));
      ctx->face.V.push_back(Matrix<Rational>::identity(sdp.blocks[i].size));
    }
  }
  SDPSolution s;
  if (ctx->face.sdp.blocks.empty()) {
    // every Gram block forced to zero: only the free variables remain
    StandardSDP P = standardize(ctx->face.sdp);
    s.status = P.A.empty() ? SolveStatus::Optimal : SolveStatus::InfeasibleSuspect;
    for (std::size_t v = 0; v < P.nfree; ++v) s.free_values.push_back(0);
    for (std::size_t k = 0; k < P.free_rows.size(); ++k)
      s.free_values[P.free_rows[k].first] = P.free_rhs[k].get_d();
  } else if (obj == Objective::Feasibility) {
    auto fr = solve_feasibility(ctx->face.sdp, opt.solver);
    s = fr.solution;
    if (!fr.feasible) s.status = SolveStatus::InfeasibleSuspect;
  } else {
    s = solve(ctx->face.sdp, opt.solver);
  }
  ctx->X = s.X;
  ctx->y = s.free_values;
  return {s, ctx};
}

/// Status and soundness screen on a float solution.
inline void require_sound(const SDPSolution& s, const std::vector<Eigen::MatrixXd>& X, double tol) {
  if (s.status != SolveStatus::Optimal)
    throw NoCertificate("no SOS representation found at this degree (solver: " + to_string(s.status) +
                        (s.message.empty() ? "" : ", " + s.message) + ")");
  double scale = 1;
  for (const auto& B : X)
    if (B.size()) scale = std::max(scale, B.cwiseAbs().maxCoeff());
  if (!X.empty() && min_eigenvalue(X) < -10 * tol * scale)
    throw NoCertificate("no SOS representation found at this degree (Gram matrix not PSD)");
  if (s.primal_residual > 10 * tol) throw NoCertificate("no SOS representation found at this degree (residual)");
}

// an inconsistent (possibly face-restricted) system means no Gram matrix exists
inline std::pair<SDPSolution, std::shared_ptr<SolveContext>> solve_or_give_up(const BlockSDP& sdp, Objective obj,
                                                                              const PipelineOptions& opt) {
  try {
    return solve_for_certificate(sdp, obj, opt);
  } catch (const NoCertificate&) {
    throw;
  } catch (const Error& e) {
    std::string m = e.what();
    if (m.find("inconsistent") != std::string::npos) throw NoCertificate("no SOS representation found at this degree (" + m + ")");
    throw;
  }
}

}  // namespace detail

/// Invariant SOS search; returns a float certificate.
inline Certificate algorithm_two(const Polynomial& f, const GeneratorBundle& bundle, Objective obj,
                                 const PipelineOptions& opt = {}) {
  const auto& pres = bundle.presentation;
  if (f.nvars() != pres.nvars) throw DimensionError("polynomial has the wrong number of variables");
  InvariantPoly ft = rewrite_in_invariants(f, pres);
  if (ft.is_zero()) throw Error("zero polynomial");
  const int deg = f.degree().value();
  if (deg % 2) throw NoCertificate("odd-degree polynomial has no SOS representation");
  const bool homogeneous = opt.homogeneous && obj == Objective::Feasibility;
  if (opt.homogeneous && !homogeneous) throw Error("homogeneous envelopes only apply to feasibility problems");
  if (homogeneous && !f.is_homogeneous()) throw Error("homogeneous envelopes need a form");
  std::vector<Envelope> envs;
  for (const auto& pi : bundle.sos_pis) envs.push_back(monomial_envelope(pres, pi, deg, homogeneous));
  InvariantSDP isdp;
  try {
    isdp = assemble_invariant_sos(ft, bundle.sos_pis, envs, obj == Objective::MaximizeLambda);
  } catch (const Error& e) {
    throw NoCertificate(e.what());
  }
  auto [sol, ctx] = detail::solve_or_give_up(isdp.sdp, obj, opt);
  std::vector<Eigen::MatrixXd> X = lift_face(ctx->face, sol.X, isdp.sdp);
  detail::require_sound(sol, sol.X, opt.solver.tol);

  Certificate cert;
  cert.mode = CertMode::Invariant;
  cert.group = bundle.catalog.name;
  cert.variables = pres.variables;
  cert.f = f;
  cert.presentation = pres;
  cert.presentation.generators.clear();
  cert.lambda_float = ctx->lambda_index >= 0 ? sol.free_values.at(ctx->lambda_index) : 0.0;
  detail::fill_solver_fields(cert, sol, X);
  for (std::size_t b = 0; b < isdp.sdp.blocks.size(); ++b) {
    CertBlock blk;
    int i = isdp.irreps[b];
    blk.irrep = i;
    blk.label = bundle.catalog.irreps[i].label;
    blk.generators = bundle.sos_bases[i].vectors;
    blk.pi = bundle.sos_pis[i].entries;
    blk.index = isdp.index[b];
    blk.gram_float = X[b];
    cert.blocks.push_back(std::move(blk));
  }
  cert.context = ctx;
  return cert;
}

/// Plain Gram search without symmetry.
inline Certificate plain_gram(const Polynomial& f, Objective obj, const PipelineOptions& opt = {}) {
  const int deg = f.degree().value();
  if (deg % 2) throw NoCertificate("odd-degree polynomial has no SOS representation");
  const bool homogeneous = opt.homogeneous && obj == Objective::Feasibility;
  GramSDP g = assemble_gram(f, obj == Objective::MaximizeLambda, homogeneous);
  auto [sol, ctx] = detail::solve_or_give_up(g.sdp, obj, opt);
  std::vector<Eigen::MatrixXd> X = lift_face(ctx->face, sol.X, g.sdp);
  detail::require_sound(sol, sol.X, opt.solver.tol);
  Certificate cert;
  cert.mode = CertMode::PlainGram;
  cert.group = "trivial:" + std::to_string(f.nvars());
  cert.variables = default_variables(f.nvars());
  cert.f = f;
  cert.Y = g.Y;
  cert.lambda_float = ctx->lambda_index >= 0 ? sol.free_values.at(ctx->lambda_index) : 0.0;
  detail::fill_solver_fields(cert, sol, X);
  CertBlock blk;
  blk.label = "Q";
  blk.gram_float = X[0];
  cert.blocks.push_back(std::move(blk));
  cert.context = ctx;
  return cert;
}

/// Exact certificate from a float one. Direct rounding first; if lambda sits
/// on the boundary, re-solve with lambda fixed slightly lower while
/// maximizing the eigenvalue margin, and round that point.
inline Certificate certify(const Certificate& cert, const std::vector<long>& schedule = default_schedule(),
                           const SolverOptions& sopt = {}) {
  if (cert.exact) return cert;
  std::string first;
  try {
    return round_certificate(cert, schedule);
  } catch (const Error& e) {
    first = e.what();
  }
  const SolveContext& ctx = *cert.context;
  if (ctx.face.sdp.blocks.empty()) throw NoCertificate(first);
  for (double eps : {1e-7, 1e-6, 1e-5, 1e-4, 1e-3}) {
    BlockSDP fixed = ctx.face.sdp;
    Rational lam = 0;
    if (ctx.lambda_index >= 0) {
      lam = round_down(ctx.y[ctx.lambda_index] - eps, 10000000);
      SdpConstraint pin;
      pin.free.emplace_back(ctx.lambda_index, Rational(1));
      pin.rhs = lam;
      pin.tag = "lambda pinned";
      fixed.constraints.push_back(pin);
    }
    FeasibilityResult fr;
    try {
      fr = solve_feasibility(fixed, sopt);
    } catch (const Error&) {
      continue;
    }
    if (!fr.feasible || fr.margin <= 0) continue;
    std::vector<Rational> y;
    for (std::size_t v = 0; v < fr.solution.free_values.size(); ++v)
      y.push_back(static_cast<int>(v) == ctx.lambda_index ? lam : approximate(fr.solution.free_values[v], 1000000));
    for (long den : schedule) {
      auto p = round_point(ctx.face.sdp, fr.solution.X, y, den);
      if (!p) continue;
      Certificate out = cert;
      auto blocks = lift_face_exact(ctx.face, p->X, ctx.original);
      out.exact = true;
      out.denominator = den;
      out.lambda = lam;
      out.lambda_float = lam.get_d();
      for (std::size_t b = 0; b < out.blocks.size(); ++b) out.blocks[b].gram = blocks[b];
      out.context.reset();
      return out;
    }
    if (ctx.lambda_index < 0) break;  // pure feasibility: nothing to loosen
  }
  throw NoCertificate(first);
}

/// Re-solves the reduced problem at a tighter tolerance; nullopt if that
/// does not converge. Only used to guess a closed form for lambda.
inline std::optional<double> refine_lambda(const Certificate& cert, double tol = 1e-10) {
  if (!cert.context || cert.context->lambda_index < 0 || cert.context->face.sdp.blocks.empty()) return std::nullopt;
  SolverOptions o;
  o.tol = tol;
  auto s = solve(cert.context->face.sdp, o);
  if (s.status != SolveStatus::Optimal) return std::nullopt;
  return s.free_values.at(cert.context->lambda_index);
}

/// Small-denominator rational near the refined lambda, if there is one.
inline std::optional<Rational> guess_lambda(const Certificate& cert, long max_den = 10000) {
  auto v = refine_lambda(cert);
  if (!v) return std::nullopt;
  Rational g = recognize(*v, 1e-9);
  if (g.get_den() > max_den) return std::nullopt;
  return g;
}

struct BoundResult {
  double lambda = 0;  // float f^sos estimate
  Certificate certificate;
};

/// f^sos under the group's symmetry.
inline BoundResult sos_lower_bound(const Polynomial& f, const std::string& group_spec, const PipelineOptions& opt = {}) {
  auto cat = catalog(group_spec);
  const int deg = f.degree().value();
  GeneratorBundle bundle = algorithm_one(cat, deg / 2);
  BoundResult r;
  r.certificate = algorithm_two(f, bundle, Objective::MaximizeLambda, opt);
  r.lambda = r.certificate.lambda_float;
  return r;
}

/// SOS feasibility verdict (lambda = 0) under the group's symmetry.
inline bool sos_feasible(const Polynomial& f, const GeneratorBundle& bundle, const PipelineOptions& opt = {}) {
  try {
    algorithm_two(f, bundle, Objective::Feasibility, opt);
    return true;
  } catch (const NoCertificate&) {
    return false;
  }
}

}  // namespace symsos
