// Dense primal-dual interior-point method (HKM direction, Mehrotra
// predictor-corrector) for block SDPs in standard form.
#pragma once

#include <Eigen/Dense>

#include <chrono>
#include <cmath>

#include "symsos/sdp.hpp"

namespace symsos {

enum class SolveStatus { Optimal, InfeasibleSuspect, MaxIterations, Breakdown };

inline std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::InfeasibleSuspect: return "infeasible-suspect";
    case SolveStatus::MaxIterations: return "max-iterations";
    case SolveStatus::Breakdown: return "numerical-breakdown";
  }
  return "?";
}

struct SolverOptions {
  double tol = 1e-8;
  int max_iter = 200;
  bool verbose = false;
};

struct SDPSolution {
  SolveStatus status = SolveStatus::MaxIterations;
  std::vector<Eigen::MatrixXd> X;   // primal blocks
  std::vector<Eigen::MatrixXd> Z;   // dual slacks
  Eigen::VectorXd y;                // multipliers of the independent constraints
  std::vector<double> free_values;  // recovered free variables
  double primal_objective = 0, dual_objective = 0, gap = 0;
  double primal_residual = 0, dual_residual = 0;
  int iterations = 0;
  std::string message;
  bool ok() const { return status == SolveStatus::Optimal; }
};

namespace detail {

struct FloatEntry {
  int block, row, col;
  double value;
};

using FloatOp = std::vector<FloatEntry>;

inline FloatOp to_float(const std::vector<SdpEntry>& es) {
  FloatOp out;
  for (const auto& e : es) out.push_back({e.block, e.row, e.col, e.value.get_d()});
  return out;
}

inline double inner(const FloatOp& A, const std::vector<Eigen::MatrixXd>& X) {
  double s = 0;
  for (const auto& e : A) {
    double x = X[e.block](e.row, e.col);
    s += e.row == e.col ? e.value * x : e.value * (x + X[e.block](e.col, e.row));
  }
  return s;
}

inline void add_scaled(std::vector<Eigen::MatrixXd>& M, const FloatOp& A, double s) {
  for (const auto& e : A) {
    M[e.block](e.row, e.col) += s * e.value;
    if (e.row != e.col) M[e.block](e.col, e.row) += s * e.value;
  }
}

inline double op_norm(const FloatOp& A) {
  double s = 0;
  for (const auto& e : A) s += (e.row == e.col ? 1 : 2) * e.value * e.value;
  return std::sqrt(s);
}

inline double block_norm(const std::vector<Eigen::MatrixXd>& M) {
  double s = 0;
  for (const auto& m : M) s += m.squaredNorm();
  return std::sqrt(s);
}

inline double block_inner(const std::vector<Eigen::MatrixXd>& A, const std::vector<Eigen::MatrixXd>& B) {
  double s = 0;
  for (std::size_t i = 0; i < A.size(); ++i) s += (A[i].array() * B[i].array()).sum();
  return s;
}

/// Largest alpha in (0, 1] with M + alpha dM PSD (M positive definite).
inline double max_step(const Eigen::MatrixXd& M, const Eigen::MatrixXd& dM) {
  if (M.rows() == 0) return 1.0;
  Eigen::LLT<Eigen::MatrixXd> llt(M);
  if (llt.info() != Eigen::Success) return 0.0;
  Eigen::MatrixXd L = llt.matrixL();
  Eigen::MatrixXd W = L.triangularView<Eigen::Lower>().solve(dM);
  W = L.triangularView<Eigen::Lower>().solve(W.transpose()).transpose();
  W = 0.5 * (W + W.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(W, Eigen::EigenvaluesOnly);
  double lmin = es.eigenvalues().minCoeff();
  if (lmin >= 0) return 1e30;
  return -1.0 / lmin;
}

}  // namespace detail

/// Solves the standard-form problem; objective includes the constant offset.
inline SDPSolution solve_standard(const StandardSDP& P, const SolverOptions& opt = {}) {
  using Eigen::MatrixXd;
  using Eigen::VectorXd;
  using detail::FloatOp;
  const std::size_t nb = P.sizes.size(), m = P.A.size();
  if (nb == 0) throw Error("SDP has no blocks");
  std::vector<FloatOp> A;
  for (const auto& a : P.A) A.push_back(detail::to_float(a));
  FloatOp Cop = detail::to_float(P.C);
  VectorXd b(m);
  for (std::size_t k = 0; k < m; ++k) b[k] = P.b[k].get_d();
  std::vector<MatrixXd> C;
  double nsum = 0;
  for (int s : P.sizes) {
    C.push_back(MatrixXd::Zero(s, s));
    nsum += s;
  }
  detail::add_scaled(C, Cop, 1.0);
  const double offset = P.offset.get_d();

  // starting point: scaled identities
  double normA = 1, normb = b.size() ? b.cwiseAbs().maxCoeff() : 0, normC = detail::block_norm(C);
  for (const auto& a : A) normA = std::max(normA, detail::op_norm(a));
  double xi = std::max({10.0, std::sqrt(nsum), std::sqrt(nsum) * (1 + normb) / (1 + normA)});
  double eta = std::max({10.0, std::sqrt(nsum), normA, normC});
  std::vector<MatrixXd> X, Z;
  for (int s : P.sizes) {
    X.push_back(xi * MatrixXd::Identity(s, s));
    Z.push_back(eta * MatrixXd::Identity(s, s));
  }
  VectorXd y = VectorXd::Zero(m);

  SDPSolution sol;
  auto apply_A = [&](const std::vector<MatrixXd>& M) {
    VectorXd v(m);
    for (std::size_t k = 0; k < m; ++k) v[k] = detail::inner(A[k], M);
    return v;
  };
  auto apply_At = [&](const VectorXd& v) {
    std::vector<MatrixXd> M;
    for (int s : P.sizes) M.push_back(MatrixXd::Zero(s, s));
    for (std::size_t k = 0; k < m; ++k) detail::add_scaled(M, A[k], v[k]);
    return M;
  };
  // per-block constraint lists to build the Schur complement
  std::vector<std::vector<std::size_t>> touching(nb);
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<bool> seen(nb, false);
    for (const auto& e : A[k])
      if (!seen[e.block]) {
        seen[e.block] = true;
        touching[e.block].push_back(k);
      }
  }

  double best_dual_growth = 0;
  for (int it = 0; it < opt.max_iter; ++it) {
    sol.iterations = it;
    VectorXd rp = b - apply_A(X);
    std::vector<MatrixXd> AtY = apply_At(y);
    std::vector<MatrixXd> Rd(nb);
    for (std::size_t i = 0; i < nb; ++i) Rd[i] = C[i] - Z[i] - AtY[i];
    double pobj = detail::block_inner(C, X) + offset;
    double dobj = b.dot(y) + offset;
    double mu = detail::block_inner(X, Z) / nsum;
    double pres = rp.norm() / (1 + normb);
    double dres = detail::block_norm(Rd) / (1 + normC);
    double gap = std::abs(pobj - dobj) / (1 + std::abs(pobj) + std::abs(dobj));
    sol.primal_objective = pobj;
    sol.dual_objective = dobj;
    sol.gap = gap;
    sol.primal_residual = pres;
    sol.dual_residual = dres;
    if (opt.verbose)
      std::fprintf(stderr, "it %3d pobj %.10e dobj %.10e gap %.2e pres %.2e dres %.2e mu %.2e\n", it, pobj, dobj, gap,
                   pres, dres, mu);
    if (gap <= opt.tol && pres <= opt.tol && dres <= opt.tol) {
      sol.status = SolveStatus::Optimal;
      break;
    }
    // divergence heuristics
    double xn = detail::block_norm(X), zn = detail::block_norm(Z);
    if (xn > 1e12 || std::abs(dobj) > 1e12 * (1 + std::abs(pobj))) {
      sol.status = SolveStatus::InfeasibleSuspect;
      sol.message = "iterates diverge";
      break;
    }
    best_dual_growth = std::max(best_dual_growth, zn);

    std::vector<MatrixXd> Zinv(nb);
    bool fail = false;
    for (std::size_t i = 0; i < nb; ++i) {
      Eigen::LLT<MatrixXd> llt(Z[i]);
      if (llt.info() != Eigen::Success) fail = true;
      Zinv[i] = llt.solve(MatrixXd::Identity(Z[i].rows(), Z[i].cols()));
      Zinv[i] = 0.5 * (Zinv[i] + Zinv[i].transpose());
    }
    if (fail) {
      sol.status = SolveStatus::Breakdown;
      sol.message = "dual slack lost definiteness";
      break;
    }
    // Schur complement M_kl = <A_k, X A_l Z^-1>
    MatrixXd M = MatrixXd::Zero(m, m);
    for (std::size_t i = 0; i < nb; ++i) {
      const int s = P.sizes[i];
      for (std::size_t l : touching[i]) {
        MatrixXd Al = MatrixXd::Zero(s, s);
        for (const auto& e : A[l]) {
          if (e.block != static_cast<int>(i)) continue;
          Al(e.row, e.col) += e.value;
          if (e.row != e.col) Al(e.col, e.row) += e.value;
        }
        MatrixXd G = X[i] * Al * Zinv[i];
        std::vector<MatrixXd> tmp;  // only block i matters
        for (std::size_t k : touching[i]) {
          double v = 0;
          for (const auto& e : A[k]) {
            if (e.block != static_cast<int>(i)) continue;
            v += e.row == e.col ? e.value * G(e.row, e.col) : e.value * (G(e.row, e.col) + G(e.col, e.row));
          }
          M(k, l) += v;
        }
      }
    }
    M = 0.5 * (M + M.transpose());
    // Cholesky first; a tiny diagonal shift rescues near-singular systems
    Eigen::LLT<MatrixXd> schur(M);
    if (schur.info() != Eigen::Success) {
      double shift = 1e-14 * std::max(1.0, M.diagonal().cwiseAbs().maxCoeff());
      schur.compute(M + shift * MatrixXd::Identity(m, m));
      if (schur.info() != Eigen::Success) {
        sol.status = SolveStatus::Breakdown;
        sol.message = "Schur complement factorization failed";
        break;
      }
    }
    auto direction = [&](double sigma, const std::vector<MatrixXd>* dXa, const std::vector<MatrixXd>* dZa,
                         std::vector<MatrixXd>& dX, VectorXd& dy, std::vector<MatrixXd>& dZ) {
      // R = sigma mu Z^-1 - X - X Rd Z^-1 - dXa dZa Z^-1
      std::vector<MatrixXd> Rc(nb);
      for (std::size_t i = 0; i < nb; ++i) {
        Rc[i] = sigma * mu * Zinv[i] - X[i] - X[i] * Rd[i] * Zinv[i];
        if (dXa) Rc[i] -= (*dXa)[i] * (*dZa)[i] * Zinv[i];
      }
      VectorXd rhs = rp - apply_A(Rc);
      dy = schur.solve(rhs);
      std::vector<MatrixXd> Aty = apply_At(dy);
      dZ.resize(nb);
      dX.resize(nb);
      for (std::size_t i = 0; i < nb; ++i) {
        dZ[i] = Rd[i] - Aty[i];
        MatrixXd t = sigma * mu * Zinv[i] - X[i] - X[i] * dZ[i] * Zinv[i];
        if (dXa) t -= (*dXa)[i] * (*dZa)[i] * Zinv[i];
        dX[i] = 0.5 * (t + t.transpose());
      }
    };
    auto steps = [&](const std::vector<MatrixXd>& dX, const std::vector<MatrixXd>& dZ) {
      double ap = 1e30, ad = 1e30;
      for (std::size_t i = 0; i < nb; ++i) {
        ap = std::min(ap, detail::max_step(X[i], dX[i]));
        ad = std::min(ad, detail::max_step(Z[i], dZ[i]));
      }
      return std::make_pair(ap, ad);
    };
    std::vector<MatrixXd> dXa, dZa;
    VectorXd dya;
    direction(0.0, nullptr, nullptr, dXa, dya, dZa);
    auto [apa, ada] = steps(dXa, dZa);
    apa = std::min(1.0, apa);
    ada = std::min(1.0, ada);
    double mu_aff = 0;
    for (std::size_t i = 0; i < nb; ++i)
      mu_aff += ((X[i] + apa * dXa[i]).array() * (Z[i] + ada * dZa[i]).array()).sum();
    mu_aff /= nsum;
    double sigma = std::pow(std::max(0.0, mu_aff / mu), 3);
    sigma = std::min(1.0, std::max(sigma, 0.0));
    std::vector<MatrixXd> dX, dZ;
    VectorXd dy;
    direction(sigma, &dXa, &dZa, dX, dy, dZ);
    auto [ap, ad] = steps(dX, dZ);
    const double gamma = 0.95;
    ap = std::min(1.0, gamma * ap);
    ad = std::min(1.0, gamma * ad);
    if (opt.verbose) std::fprintf(stderr, "   sigma %.3f ap %.3f ad %.3f\n", sigma, ap, ad);
    for (std::size_t i = 0; i < nb; ++i) {
      X[i] += ap * dX[i];
      Z[i] += ad * dZ[i];
      X[i] = 0.5 * (X[i] + X[i].transpose());
      Z[i] = 0.5 * (Z[i] + Z[i].transpose());
    }
    y += ad * dy;
    if (ap < 1e-12 && ad < 1e-12) {
      sol.status = SolveStatus::Breakdown;
      sol.message = "step lengths vanished";
      break;
    }
    if (it + 1 == opt.max_iter) sol.iterations = opt.max_iter;
  }
  if (sol.status == SolveStatus::MaxIterations && sol.message.empty()) sol.message = "iteration limit reached";
  sol.X = X;
  sol.Z = Z;
  sol.y = y;
  // free variables from their elimination rows
  sol.free_values.assign(P.nfree, 0.0);
  if (!P.free_rows.empty()) {
    // rebuild svec access through a throwaway layout
    std::vector<std::size_t> off;
    std::size_t o = P.nfree;
    for (int s : P.sizes) {
      off.push_back(o);
      o += static_cast<std::size_t>(s) * (s + 1) / 2;
    }
    auto value_at = [&](std::size_t col) {
      int bk = static_cast<int>(std::upper_bound(off.begin(), off.end(), col) - off.begin()) - 1;
      std::size_t k = col - off[bk];
      int s = P.sizes[bk], r = 0;
      while (k >= static_cast<std::size_t>(s - r)) {
        k -= s - r;
        ++r;
      }
      return X[bk](r, r + static_cast<int>(k));
    };
    for (std::size_t q = 0; q < P.free_rows.size(); ++q) {
      double v = P.free_rhs[q].get_d();
      for (const auto& [c, coef] : P.free_rows[q].second) v -= coef.get_d() * value_at(c);
      sol.free_values[P.free_rows[q].first] = v;
    }
  }
  return sol;
}

inline SDPSolution solve(const BlockSDP& sdp, const SolverOptions& opt = {}) {
  return solve_standard(standardize(sdp), opt);
}

/// Smallest eigenvalue over all blocks.
inline double min_eigenvalue(const std::vector<Eigen::MatrixXd>& blocks) {
  double lmin = 1e300;
  for (const auto& b : blocks) {
    if (b.rows() == 0) continue;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b, Eigen::EigenvaluesOnly);
    lmin = std::min(lmin, es.eigenvalues().minCoeff());
  }
  return lmin;
}

/// Largest t with every block minus t*I PSD inside the affine set; the
/// problem is feasible when t* >= -tol.
struct FeasibilityResult {
  bool feasible = false;
  double margin = 0;
  SDPSolution solution;  // blocks of X (margin added back)
};

inline FeasibilityResult solve_feasibility(const BlockSDP& sdp, const SolverOptions& opt = {}) {
  // X = W + t I with W PSD, t free; maximize t
  BlockSDP f = sdp;
  f.cost.clear();
  for (auto& c : f.free_cost) c = 0;
  int t = f.add_free("margin", Rational(-1));
  // the set is a cone in (X, free, rhs): solve at unit rhs scale, scale back after
  double big = 0;
  for (const auto& c : f.constraints) big = std::max(big, std::abs(c.rhs.get_d()));
  const int shift = big > 0 ? std::ilogb(big) : 0;
  Rational scale = 1;
  if (shift > 0) mpq_div_2exp(scale.get_mpq_t(), scale.get_mpq_t(), shift);
  if (shift < 0) mpq_mul_2exp(scale.get_mpq_t(), scale.get_mpq_t(), -shift);
  const double back = std::ldexp(1.0, shift);
  for (auto& c : f.constraints) {
    c.rhs *= scale;
    Rational tr = 0;
    for (const auto& e : c.entries)
      if (e.row == e.col) tr += e.value;
    if (tr != 0) c.free.emplace_back(t, tr);
  }
  FeasibilityResult out;
  StandardSDP P;
  try {
    P = standardize(f);
  } catch (const Error& e) {
    // margin cannot be separated: either no constraint touches the diagonal
    // (unbounded margin) or the data are inconsistent
    std::string msg = e.what();
    if (msg.find("inconsistent") != std::string::npos) {
      out.feasible = false;
      out.solution.status = SolveStatus::InfeasibleSuspect;
      out.solution.message = msg;
      return out;
    }
    throw;
  }
  out.solution = solve_standard(P, opt);
  for (auto& X : out.solution.X) X *= back;
  for (auto& v : out.solution.free_values) v *= back;
  out.solution.primal_objective *= back;
  out.solution.dual_objective *= back;
  out.margin = out.solution.free_values.back();
  for (std::size_t i = 0; i < out.solution.X.size(); ++i)
    out.solution.X[i] += out.margin * Eigen::MatrixXd::Identity(out.solution.X[i].rows(), out.solution.X[i].cols());
  out.solution.free_values.pop_back();
  out.feasible = out.solution.status == SolveStatus::Optimal && out.margin / back >= -std::max(opt.tol, 1e-7);
  if (out.solution.status == SolveStatus::InfeasibleSuspect) out.feasible = false;
  return out;
}

}  // namespace symsos
