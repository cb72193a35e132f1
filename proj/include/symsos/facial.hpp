// Facial reduction for Gram problems without a strictly feasible point.
// A witness W = A^*(y) >= 0 with b.y = 0 forces every feasible X into ker W;
// the blocks are then restricted to a rational basis of that kernel.
#pragma once

#include "symsos/solver.hpp"

namespace symsos {

struct Face {
  BlockSDP sdp;                          // reduced problem
  std::vector<int> origin;               // original block of each reduced block
  std::vector<Matrix<Rational>> V;       // per original block: X = V X' V^T (0 columns: block is zero)
  int rounds = 0;
  std::vector<std::string> log;
};

namespace detail {

inline Matrix<Rational> dense_block(const std::vector<SdpEntry>& es, int block, int size) {
  Matrix<Rational> M(size, size);
  for (const auto& e : es) {
    if (e.block != block) continue;
    M(e.row, e.col) += e.value;
    if (e.row != e.col) M(e.col, e.row) += e.value;
  }
  return M;
}

inline std::vector<SdpEntry> sparse_block(const Matrix<Rational>& M, int block) {
  std::vector<SdpEntry> out;
  for (std::size_t r = 0; r < M.rows(); ++r)
    for (std::size_t c = r; c < M.cols(); ++c)
      if (M(r, c) != 0) out.push_back({block, static_cast<int>(r), static_cast<int>(c), M(r, c)});
  return out;
}

/// Rational basis of the numerical kernel spanned by the columns of K:
/// reduced echelon form with entries snapped to small denominators.
inline std::optional<Matrix<Rational>> rational_kernel(const Eigen::MatrixXd& W, const Eigen::MatrixXd& K) {
  const long N = K.rows(), k = K.cols();
  Eigen::MatrixXd R = K.transpose();  // k x N
  std::vector<long> piv;
  long row = 0;
  for (long c = 0; c < N && row < k; ++c) {
    long best = row;
    for (long r = row; r < k; ++r)
      if (std::abs(R(r, c)) > std::abs(R(best, c))) best = r;
    if (std::abs(R(best, c)) < 1e-7) continue;
    R.row(row).swap(R.row(best));
    R.row(row) /= R(row, c);
    for (long r = 0; r < k; ++r)
      if (r != row) R.row(r) -= R(r, c) * R.row(row);
    piv.push_back(c);
    ++row;
  }
  if (row != k) return std::nullopt;
  const double wn = std::max(1.0, W.norm());
  for (long den : {12L, 1000L, 100000L}) {
    Matrix<Rational> V(N, k);
    Eigen::MatrixXd Vd(N, k);
    for (long j = 0; j < k; ++j)
      for (long c = 0; c < N; ++c) {
        V(c, j) = approximate(R(j, c), den);
        Vd(c, j) = V(c, j).get_d();
      }
    if ((W * Vd).norm() <= 1e-6 * wn * std::max(1.0, Vd.norm())) return V;
  }
  return std::nullopt;
}

inline BlockSDP restrict_to_face(const BlockSDP& sdp, const std::vector<Matrix<Rational>>& V, std::vector<int>& kept) {
  BlockSDP out;
  out.free_names = sdp.free_names;
  out.free_cost = sdp.free_cost;
  std::vector<int> newidx(sdp.blocks.size(), -1);
  kept.clear();
  for (std::size_t i = 0; i < sdp.blocks.size(); ++i) {
    if (V[i].cols() == 0) continue;
    newidx[i] = out.add_block(sdp.blocks[i].name, static_cast<int>(V[i].cols()), sdp.blocks[i].weight);
    kept.push_back(static_cast<int>(i));
  }
  auto transform = [&](const std::vector<SdpEntry>& es) {
    std::vector<SdpEntry> r;
    for (std::size_t i = 0; i < sdp.blocks.size(); ++i) {
      if (newidx[i] < 0) continue;
      bool touches = false;
      for (const auto& e : es)
        if (e.block == static_cast<int>(i)) touches = true;
      if (!touches) continue;
      Matrix<Rational> M = V[i].transpose() * dense_block(es, static_cast<int>(i), sdp.blocks[i].size) * V[i];
      auto part = sparse_block(M, newidx[i]);
      r.insert(r.end(), part.begin(), part.end());
    }
    return r;
  };
  out.cost = transform(sdp.cost);
  for (const auto& c : sdp.constraints) {
    SdpConstraint t;
    t.entries = transform(c.entries);
    t.free = c.free;
    t.rhs = c.rhs;
    t.tag = c.tag;
    out.constraints.push_back(std::move(t));
  }
  return out;
}

}  // namespace detail

/// One reduction step; nullopt when no witness is found.
inline std::optional<std::vector<Matrix<Rational>>> face_witness(const BlockSDP& sdp, std::string* note = nullptr) {
  StandardSDP P = standardize(sdp);
  const std::size_t m = P.A.size();
  if (m == 0) return std::nullopt;
  // aux: W - sum_k y_k A_k = 0, b.y = 0, tr W = 1, W PSD, y free
  BlockSDP aux;
  for (std::size_t i = 0; i < P.sizes.size(); ++i) aux.add_block(sdp.blocks[i].name, P.sizes[i]);
  for (std::size_t k = 0; k < m; ++k) aux.add_free("y" + std::to_string(k));
  std::map<std::tuple<int, int, int>, std::vector<std::pair<int, Rational>>> coupling;
  for (std::size_t k = 0; k < m; ++k)
    for (const auto& e : P.A[k]) coupling[{e.block, e.row, e.col}].emplace_back(static_cast<int>(k), e.value);
  for (std::size_t i = 0; i < P.sizes.size(); ++i)
    for (int r = 0; r < P.sizes[i]; ++r)
      for (int c = r; c < P.sizes[i]; ++c) {
        SdpConstraint con;
        con.entries.push_back({static_cast<int>(i), r, c, r == c ? Rational(1) : Rational(1, 2)});
        auto it = coupling.find({static_cast<int>(i), r, c});
        if (it != coupling.end())
          for (const auto& [k, v] : it->second) con.free.emplace_back(k, -v);
        aux.constraints.push_back(std::move(con));
      }
  SdpConstraint by;
  for (std::size_t k = 0; k < m; ++k)
    if (P.b[k] != 0) by.free.emplace_back(static_cast<int>(k), P.b[k]);
  aux.constraints.push_back(by);
  SdpConstraint tr;
  tr.rhs = 1;
  for (std::size_t i = 0; i < P.sizes.size(); ++i)
    for (int r = 0; r < P.sizes[i]; ++r) tr.entries.push_back({static_cast<int>(i), r, r, 1});
  aux.constraints.push_back(tr);
  SDPSolution s;
  try {
    SolverOptions o;
    o.max_iter = 80;
    o.tol = 1e-9;
    s = solve(aux, o);
  } catch (const Error&) {
    return std::nullopt;  // inconsistent: no witness exists
  }
  if (s.status != SolveStatus::Optimal && !(s.primal_residual < 1e-7 && s.dual_residual < 1e-7)) return std::nullopt;
  std::vector<Matrix<Rational>> V;
  bool reduced = false;
  double wmax = 0;
  for (const auto& W : s.X) {
    if (W.rows() == 0) continue;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(W);
    wmax = std::max(wmax, es.eigenvalues().maxCoeff());
  }
  if (wmax <= 0) return std::nullopt;
  for (std::size_t i = 0; i < s.X.size(); ++i) {
    const auto& W = s.X[i];
    const long N = W.rows();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(W);
    std::vector<long> ker;
    for (long j = 0; j < N; ++j)
      if (es.eigenvalues()[j] < 1e-6 * wmax) ker.push_back(j);
    if (static_cast<long>(ker.size()) == N) {
      V.push_back(Matrix<Rational>::identity(N));
      continue;
    }
    reduced = true;
    if (ker.empty()) {
      V.emplace_back(N, 0);
      continue;
    }
    Eigen::MatrixXd K(N, ker.size());
    for (std::size_t j = 0; j < ker.size(); ++j) K.col(j) = es.eigenvectors().col(ker[j]);
    auto Vr = detail::rational_kernel(W, K);
    if (!Vr) {
      if (note) *note = "witness kernel has no small rational basis";
      return std::nullopt;
    }
    V.push_back(*Vr);
  }
  if (!reduced) return std::nullopt;
  return V;
}

/// Repeats witness search until none is found (at most max_rounds).
inline Face facial_reduction(const BlockSDP& sdp, int max_rounds = 4) {
  Face f;
  f.sdp = sdp;
  for (std::size_t i = 0; i < sdp.blocks.size(); ++i) {
    f.origin.push_back(static_cast<int>(i));
    f.V.push_back(Matrix<Rational>::identity(sdp.blocks[i].size));
  }
  for (int round = 0; round < max_rounds; ++round) {
    std::string note;
    auto W = face_witness(f.sdp, &note);
    if (!note.empty()) f.log.push_back(note);
    if (!W) break;
    std::vector<int> kept;
    BlockSDP next = detail::restrict_to_face(f.sdp, *W, kept);
    // compose with the original blocks
    for (std::size_t j = 0; j < f.origin.size(); ++j) {
      int o = f.origin[j];
      f.V[o] = (*W)[j].cols() == 0 ? Matrix<Rational>(f.V[o].rows(), 0) : f.V[o] * (*W)[j];
    }
    std::vector<int> origin;
    for (int j : kept) origin.push_back(f.origin[j]);
    f.origin = std::move(origin);
    std::string msg = "round " + std::to_string(round + 1) + ": block sizes";
    for (const auto& b : next.blocks) msg += " " + std::to_string(b.size);
    f.log.push_back(msg);
    f.sdp = std::move(next);
    ++f.rounds;
    if (f.sdp.blocks.empty()) break;
  }
  return f;
}

/// Lifts solved reduced blocks back to the original block sizes.
inline std::vector<Eigen::MatrixXd> lift_face(const Face& f, const std::vector<Eigen::MatrixXd>& reduced,
                                              const BlockSDP& original) {
  std::vector<Eigen::MatrixXd> out;
  for (const auto& b : original.blocks) out.push_back(Eigen::MatrixXd::Zero(b.size, b.size));
  for (std::size_t j = 0; j < f.origin.size(); ++j) {
    int o = f.origin[j];
    const auto& V = f.V[o];
    Eigen::MatrixXd Vd(V.rows(), V.cols());
    for (std::size_t r = 0; r < V.rows(); ++r)
      for (std::size_t c = 0; c < V.cols(); ++c) Vd(r, c) = V(r, c).get_d();
    out[o] = Vd * reduced[j] * Vd.transpose();
  }
  return out;
}

}  // namespace symsos
