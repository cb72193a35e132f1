// Block SDP data model, exact preprocessing, Gram assembly (plain and
// invariant), and symmetry reduction of single-block SDPs.
#pragma once

#include <json.hpp>

#include "symsos/equivariant.hpp"
#include "symsos/isotypic.hpp"

namespace symsos {

/// Coefficient of a symmetric matrix at (row, col), row <= col. The pairing
/// with X counts off-diagonal entries twice: <A, X> = trace(A X).
struct SdpEntry {
  int block = 0, row = 0, col = 0;
  Rational value;
};

struct SdpConstraint {
  std::vector<SdpEntry> entries;
  std::vector<std::pair<int, Rational>> free;
  Rational rhs;
  std::string tag;
};

struct BlockInfo {
  std::string name;
  int size = 0;
  int weight = 1;
};

/// minimize sum_i weight_i <C_i, X_i> + free_cost . y
/// s.t. sum <A_k, X> + F_k . y = b_k, X_i PSD, y free.
struct BlockSDP {
  std::vector<BlockInfo> blocks;
  std::vector<std::string> free_names;
  std::vector<SdpEntry> cost;
  std::vector<Rational> free_cost;
  std::vector<SdpConstraint> constraints;

  int add_block(const std::string& name, int size, int weight = 1) {
    blocks.push_back({name, size, weight});
    return static_cast<int>(blocks.size()) - 1;
  }
  int add_free(const std::string& name, const Rational& c = 0) {
    free_names.push_back(name);
    free_cost.push_back(c);
    return static_cast<int>(free_names.size()) - 1;
  }
  int free_index(const std::string& name) const {
    for (std::size_t i = 0; i < free_names.size(); ++i)
      if (free_names[i] == name) return static_cast<int>(i);
    return -1;
  }
  std::size_t svec_size() const {
    std::size_t s = 0;
    for (const auto& b : blocks) s += static_cast<std::size_t>(b.size) * (b.size + 1) / 2;
    return s;
  }
  void validate() const {
    auto check = [&](const SdpEntry& e) {
      if (e.block < 0 || e.block >= static_cast<int>(blocks.size())) throw DimensionError("block index out of range");
      int s = blocks[e.block].size;
      if (e.row < 0 || e.col < e.row || e.col >= s) throw DimensionError("block entry out of range");
    };
    for (const auto& b : blocks)
      if (b.weight < 1) throw Error("block weights must be >= 1");
    for (const auto& e : cost) check(e);
    for (const auto& c : constraints) {
      for (const auto& e : c.entries) check(e);
      for (const auto& [v, x] : c.free)
        if (v < 0 || v >= static_cast<int>(free_names.size())) throw DimensionError("free variable out of range");
    }
  }
};

// ---------------------------------------------------------------------------
// Exact preprocessing: sparse Gauss-Jordan with free columns first.

/// Column layout: free variables, then per block the upper triangle row-major.
struct SvecLayout {
  std::vector<std::size_t> block_offset;
  std::size_t nfree = 0, total = 0;
  explicit SvecLayout(const BlockSDP& sdp) {
    nfree = sdp.free_names.size();
    std::size_t off = nfree;
    for (const auto& b : sdp.blocks) {
      block_offset.push_back(off);
      off += static_cast<std::size_t>(b.size) * (b.size + 1) / 2;
    }
    total = off;
  }
  std::size_t index(const BlockSDP& sdp, int block, int r, int c) const {
    if (r > c) std::swap(r, c);
    std::size_t s = sdp.blocks[block].size;
    // row r starts after rows 0..r-1, each of length s - i
    std::size_t start = static_cast<std::size_t>(r) * s - static_cast<std::size_t>(r) * (r - 1) / 2;
    return block_offset[block] + start + (c - r);
  }
  std::tuple<int, int, int> locate(const BlockSDP& sdp, std::size_t col) const {
    int b = static_cast<int>(std::upper_bound(block_offset.begin(), block_offset.end(), col) - block_offset.begin()) - 1;
    std::size_t k = col - block_offset[b];
    int s = sdp.blocks[b].size;
    int r = 0;
    while (k >= static_cast<std::size_t>(s - r)) {
      k -= s - r;
      ++r;
    }
    return {b, r, r + static_cast<int>(k)};
  }
};

using SparseRow = std::map<std::size_t, Rational>;

/// Linear functional on the svec coordinates: coefficient of X_rc counts
/// both triangle positions.
inline SparseRow constraint_row(const BlockSDP& sdp, const SvecLayout& L, const SdpConstraint& c) {
  SparseRow row;
  for (const auto& [v, x] : c.free)
    if (x != 0) row[v] += x;
  for (const auto& e : c.entries) {
    if (e.value == 0) continue;
    row[L.index(sdp, e.block, e.row, e.col)] += e.row == e.col ? e.value : Rational(2 * e.value);
  }
  for (auto it = row.begin(); it != row.end();)
    it = it->second == 0 ? row.erase(it) : std::next(it);
  return row;
}

struct ReducedSystem {
  std::vector<SparseRow> rows;     // reduced rows, pivot = first key
  std::vector<Rational> rhs;
  std::vector<std::size_t> pivots;
  bool consistent = true;
};

/// Gauss-Jordan on sparse rows (rows are kept fully reduced).
inline ReducedSystem sparse_rref(std::vector<SparseRow> input, std::vector<Rational> rhs) {
  ReducedSystem R;
  std::map<std::size_t, std::size_t> pivot_row;
  for (std::size_t i = 0; i < input.size(); ++i) {
    SparseRow row = std::move(input[i]);
    Rational b = rhs[i];
    // eliminate existing pivots
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto it = row.begin(); it != row.end(); ++it) {
        auto pr = pivot_row.find(it->first);
        if (pr == pivot_row.end()) continue;
        Rational f = it->second;
        const SparseRow& p = R.rows[pr->second];
        for (const auto& [c, v] : p) {
          Rational nv = row[c] - f * v;
          if (nv == 0) row.erase(c);
          else row[c] = nv;
        }
        b -= f * R.rhs[pr->second];
        changed = true;
        break;
      }
    }
    if (row.empty()) {
      if (b != 0) R.consistent = false;
      continue;
    }
    std::size_t piv = row.begin()->first;
    Rational lead = row.begin()->second;
    for (auto& [c, v] : row) v /= lead;
    b /= lead;
    // back-substitute into earlier rows
    for (std::size_t k = 0; k < R.rows.size(); ++k) {
      auto it = R.rows[k].find(piv);
      if (it == R.rows[k].end()) continue;
      Rational f = it->second;
      for (const auto& [c, v] : row) {
        Rational nv = R.rows[k][c] - f * v;
        if (nv == 0) R.rows[k].erase(c);
        else R.rows[k][c] = nv;
      }
      R.rhs[k] -= f * b;
    }
    pivot_row[piv] = R.rows.size();
    R.rows.push_back(std::move(row));
    R.rhs.push_back(b);
    R.pivots.push_back(piv);
  }
  return R;
}

/// Standard-form problem over the PSD blocks only; free variables are
/// eliminated exactly.
struct StandardSDP {
  std::vector<int> sizes;
  std::vector<std::vector<SdpEntry>> A;  // independent constraints, block entries only
  std::vector<Rational> b;
  std::vector<SdpEntry> C;               // weights folded in
  Rational offset = 0;                   // constant part of the objective
  // recovery of free variables: y_v = rhs - sum coef * svec
  std::vector<std::pair<int, SparseRow>> free_rows;
  std::vector<Rational> free_rhs;
  std::size_t nfree = 0;
};

inline SdpEntry entry_from_svec(const BlockSDP& sdp, const SvecLayout& L, std::size_t col, const Rational& coef) {
  auto [b, r, c] = L.locate(sdp, col);
  return SdpEntry{b, r, c, r == c ? coef : Rational(coef / 2)};
}

inline StandardSDP standardize(const BlockSDP& sdp) {
  sdp.validate();
  SvecLayout L(sdp);
  std::vector<SparseRow> rows;
  std::vector<Rational> rhs;
  for (const auto& c : sdp.constraints) {
    rows.push_back(constraint_row(sdp, L, c));
    rhs.push_back(c.rhs);
  }
  auto R = sparse_rref(std::move(rows), std::move(rhs));
  if (!R.consistent) throw Error("inconsistent constraints: no Gram matrix matches the coefficients");
  StandardSDP out;
  out.nfree = L.nfree;
  for (const auto& b : sdp.blocks) out.sizes.push_back(b.size);
  std::map<std::size_t, Rational> cost;  // svec coefficients
  for (const auto& e : sdp.cost) {
    Rational w = sdp.blocks[e.block].weight;
    cost[L.index(sdp, e.block, e.row, e.col)] += (e.row == e.col ? e.value : Rational(2 * e.value)) * w;
  }
  std::vector<bool> pivot_free(L.nfree, false);
  for (std::size_t k = 0; k < R.rows.size(); ++k) {
    std::size_t p = R.pivots[k];
    if (p < L.nfree) {
      pivot_free[p] = true;
      for (const auto& [c, v] : R.rows[k])
        if (c < L.nfree && c != p)
          throw Error("free variables '" + sdp.free_names[p] + "' and '" + sdp.free_names[c] + "' are not separable");
      // y_p = rhs - sum v x
      const Rational& cy = sdp.free_cost[p];
      if (cy != 0) {
        out.offset += cy * R.rhs[k];
        for (const auto& [c, v] : R.rows[k])
          if (c != p) cost[c] -= cy * v;
      }
      SparseRow rest = R.rows[k];
      rest.erase(p);
      out.free_rows.emplace_back(static_cast<int>(p), std::move(rest));
      out.free_rhs.push_back(R.rhs[k]);
    } else {
      std::vector<SdpEntry> a;
      for (const auto& [c, v] : R.rows[k]) a.push_back(entry_from_svec(sdp, L, c, v));
      out.A.push_back(std::move(a));
      out.b.push_back(R.rhs[k]);
    }
  }
  for (std::size_t v = 0; v < L.nfree; ++v)
    if (!pivot_free[v] && sdp.free_cost[v] != 0) throw Error("objective unbounded in free variable " + sdp.free_names[v]);
  for (const auto& [c, v] : cost)
    if (v != 0) out.C.push_back(entry_from_svec(sdp, L, c, v));
  return out;
}

/// Dimension of the affine Gram family with every free variable fixed.
inline std::size_t free_parameter_count(const BlockSDP& sdp) {
  SvecLayout L(sdp);
  std::vector<SparseRow> rows;
  std::vector<Rational> rhs;
  for (const auto& c : sdp.constraints) {
    SparseRow r = constraint_row(sdp, L, c);
    for (auto it = r.begin(); it != r.end();) it = it->first < L.nfree ? r.erase(it) : std::next(it);
    rows.push_back(std::move(r));
    rhs.push_back(0);
  }
  auto R = sparse_rref(std::move(rows), std::move(rhs));
  return sdp.svec_size() - R.rows.size();
}

// ---------------------------------------------------------------------------
// Plain Gram formulation.

struct GramSDP {
  BlockSDP sdp;
  std::vector<Monomial> Y;
  bool homogeneous = false;
};

/// f - lambda = Y^T Q Y with Y all monomials of degree <= d (or exactly d for
/// forms when homogeneous is set).
inline GramSDP assemble_gram(const Polynomial& f, bool with_lambda, bool homogeneous = false) {
  if (f.is_zero()) throw Error("cannot assemble a Gram problem for the zero polynomial");
  int deg = f.degree().value();
  if (deg % 2) throw Error("odd-degree polynomial: no Gram representation");
  if (homogeneous && !f.is_homogeneous()) throw Error("homogeneous Gram mode needs a form");
  GramSDP out;
  out.homogeneous = homogeneous;
  const int n = f.nvars(), d = deg / 2;
  if (homogeneous) out.Y = monomials_of_degree(n, d);
  else out.Y = monomial_vector(n, d).entries;
  const int N = static_cast<int>(out.Y.size());
  BlockSDP& sdp = out.sdp;
  sdp.add_block("Q", N);
  int lam = with_lambda ? sdp.add_free("lambda", Rational(-1)) : -1;
  std::map<Monomial, std::size_t, GradedLex> eq;
  auto constraint_for = [&](const Monomial& m) -> SdpConstraint& {
    auto it = eq.find(m);
    if (it == eq.end()) {
      it = eq.emplace(m, sdp.constraints.size()).first;
      SdpConstraint c;
      c.rhs = f.coefficient(m);
      sdp.constraints.push_back(std::move(c));
    }
    return sdp.constraints[it->second];
  };
  for (int a = 0; a < N; ++a)
    for (int b = a; b < N; ++b) constraint_for(monomial_product(out.Y[a], out.Y[b])).entries.push_back({0, a, b, 1});
  for (const auto& [m, c] : f.terms()) constraint_for(m);
  if (with_lambda) {
    Monomial zero(n, 0);
    if (homogeneous) throw Error("lambda needs the constant monomial; use the non-homogeneous Gram basis");
    constraint_for(zero).free.emplace_back(lam, Rational(1));
  }
  // stable order: graded-lex of the monomial
  std::vector<SdpConstraint> ordered;
  for (const auto& [m, idx] : eq) {
    ordered.push_back(sdp.constraints[idx]);
    std::string tag;
    for (int e : m) tag += (tag.empty() ? "" : ",") + std::to_string(e);
    ordered.back().tag = "x^(" + tag + ")";
  }
  sdp.constraints = std::move(ordered);
  return out;
}

// ---------------------------------------------------------------------------
// Invariant formulation: <S_i, Pi_i> per eta and theta-monomial.

struct InvariantSDP {
  BlockSDP sdp;
  std::vector<int> irreps;                                       // catalog index per block
  std::vector<std::vector<std::pair<int, Monomial>>> index;      // (row k, theta monomial) per block entry
  std::vector<Envelope> envelopes;                               // per block
};

inline InvariantSDP assemble_invariant_sos(const InvariantPoly& f, const std::vector<PiMatrix>& pis,
                                           const std::vector<Envelope>& envelopes, bool with_lambda) {
  if (pis.size() != envelopes.size()) throw DimensionError("one envelope per Pi matrix");
  if (f.parts.empty()) throw Error("empty invariant polynomial");
  const int neta = static_cast<int>(f.parts.size());
  const int nth = f.parts[0].nvars();
  InvariantSDP out;
  BlockSDP& sdp = out.sdp;
  int lam = with_lambda ? sdp.add_free("lambda", Rational(-1)) : -1;
  std::map<std::pair<int, Monomial>, std::size_t> eq;
  auto constraint_for = [&](int j, const Monomial& g) -> SdpConstraint& {
    auto key = std::make_pair(j, g);
    auto it = eq.find(key);
    if (it == eq.end()) {
      it = eq.emplace(key, sdp.constraints.size()).first;
      SdpConstraint c;
      c.rhs = f.parts[j].coefficient(g);
      sdp.constraints.push_back(std::move(c));
    }
    return sdp.constraints[it->second];
  };
  for (std::size_t i = 0; i < pis.size(); ++i) {
    const auto& env = envelopes[i];
    const auto& pi = pis[i];
    if (static_cast<int>(env.size()) != pi.size()) throw DimensionError("envelope rows must match Pi size");
    std::vector<std::pair<int, Monomial>> idx;
    for (int k = 0; k < pi.size(); ++k)
      for (const auto& a : env[k]) idx.emplace_back(k, a);
    if (idx.empty()) continue;
    int blk = sdp.add_block(pi.label, static_cast<int>(idx.size()));
    for (std::size_t p = 0; p < idx.size(); ++p)
      for (std::size_t q = p; q < idx.size(); ++q) {
        const auto& [k, a] = idx[p];
        const auto& [l, b] = idx[q];
        Monomial ab = monomial_product(a, b);
        const InvariantPoly& e = pi.entries[k][l];
        for (int j = 0; j < neta; ++j)
          for (const auto& [m, c] : e.parts[j].terms())
            constraint_for(j, monomial_product(m, ab))
                .entries.push_back({blk, static_cast<int>(p), static_cast<int>(q), c});
      }
    out.irreps.push_back(pi.irrep);
    out.index.push_back(std::move(idx));
    out.envelopes.push_back(env);
  }
  if (sdp.blocks.empty()) throw Error("degree budget leaves no envelope rows: problem infeasible at assembly");
  for (int j = 0; j < neta; ++j)
    for (const auto& [m, c] : f.parts[j].terms()) constraint_for(j, m);
  if (with_lambda) constraint_for(0, Monomial(nth, 0)).free.emplace_back(lam, Rational(1));
  for (const auto& [key, idx] : eq) {
    std::string tag = "eta" + std::to_string(key.first + 1) + "*theta^(";
    for (std::size_t t = 0; t < key.second.size(); ++t) tag += (t ? "," : "") + std::to_string(key.second[t]);
    sdp.constraints[idx].tag = tag + ")";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fixed-point restriction and block diagonalization of a single-block SDP.

namespace detail {

/// sigma(g)(A) = rho^T A rho for a signed permutation rho.
inline std::vector<SdpEntry> transform_entries(const std::vector<SdpEntry>& entries, const IndexPerm& p) {
  // (rho^T A rho)_{ab} = s_a s_b A_{t(a) t(b)}; invert the index map
  std::vector<int> inv(p.target.size());
  for (std::size_t j = 0; j < p.target.size(); ++j) inv[p.target[j]] = static_cast<int>(j);
  std::vector<SdpEntry> out;
  for (const auto& e : entries) {
    int a = inv[e.row], b = inv[e.col];
    int s = p.sign[a] * p.sign[b];
    SdpEntry t{e.block, std::min(a, b), std::max(a, b), s > 0 ? e.value : Rational(-e.value)};
    out.push_back(t);
  }
  return out;
}

inline std::vector<std::size_t> generator_elements(const GroupAction& G) {
  std::vector<std::size_t> out;
  for (std::size_t e = 1; e < G.elements.size(); ++e)
    if (G.parent[e] == 0) out.push_back(e);
  return out;
}

}  // namespace detail

/// Checks that every generator image of a constraint lies in the constraint
/// system (same right-hand side relation) and that the cost is fixed.
inline RepReport check_sdp_invariance(const BlockSDP& sdp, const InducedRep& rep) {
  RepReport report;
  if (sdp.blocks.size() != 1) {
    report.problems.push_back("restriction needs a single-block SDP");
    return report;
  }
  if (!sdp.free_names.empty()) {
    report.problems.push_back("restriction needs an SDP without free variables");
    return report;
  }
  SvecLayout L(sdp);
  std::vector<SparseRow> rows;
  std::vector<Rational> rhs;
  for (const auto& c : sdp.constraints) {
    rows.push_back(constraint_row(sdp, L, c));
    rhs.push_back(c.rhs);
  }
  auto R = sparse_rref(rows, rhs);
  auto in_span = [&](SparseRow row, Rational b) {
    std::vector<SparseRow> one{std::move(row)};
    auto all = R.rows;
    auto allb = R.rhs;
    all.push_back(one[0]);
    allb.push_back(b);
    auto R2 = sparse_rref(all, allb);
    return R2.consistent && R2.rows.size() == R.rows.size();
  };
  SdpConstraint cost_c{sdp.cost, {}, 0, ""};
  SparseRow cost_row = constraint_row(sdp, L, cost_c);
  for (std::size_t g : detail::generator_elements(*rep.action)) {
    const auto& p = rep.matrices[g];
    for (std::size_t k = 0; k < sdp.constraints.size(); ++k) {
      SdpConstraint t{detail::transform_entries(sdp.constraints[k].entries, p), {}, sdp.constraints[k].rhs, ""};
      if (!in_span(constraint_row(sdp, L, t), t.rhs)) {
        report.problems.push_back("constraint " + std::to_string(k + 1) + " is not mapped into the constraint system");
        return report;
      }
    }
    SdpConstraint tc{detail::transform_entries(sdp.cost, p), {}, 0, ""};
    if (constraint_row(sdp, L, tc) != cost_row) {
      report.problems.push_back("cost is not invariant");
      return report;
    }
  }
  return report;
}

struct RestrictedSDP {
  BlockSDP sdp;
  std::vector<std::size_t> irreps;  // catalog index per block
};

/// X = sum_k U_k B_s U_k^T over the copies of each segment (U unnormalized);
/// the reduced data sum_k U_k^T A U_k must be rational.
inline RestrictedSDP restrict_invariant(const BlockSDP& sdp, const InducedRep& rep, const SymmetryAdaptedBasis& B) {
  if (!B.exact) throw Error("restriction needs an exact symmetry-adapted basis");
  if (sdp.blocks.size() != 1 || static_cast<std::size_t>(sdp.blocks[0].size) != B.N)
    throw DimensionError("single block of the basis size expected");
  auto inv = check_sdp_invariance(sdp, rep);
  if (!inv.ok()) throw Error("invariance spot-check failed: " + inv.problems[0]);
  RestrictedSDP out;
  for (const auto& seg : B.segments) {
    out.sdp.add_block("irrep" + std::to_string(seg.irrep + 1), seg.size, seg.copies);
    out.irreps.push_back(seg.irrep);
  }
  auto reduce = [&](const std::vector<SdpEntry>& entries, bool average) {
    std::vector<SdpEntry> red;
    for (std::size_t s = 0; s < B.segments.size(); ++s) {
      const auto& seg = B.segments[s];
      for (int a = 0; a < seg.size; ++a)
        for (int b = a; b < seg.size; ++b) {
          AlgNum acc(0);
          for (int k = 0; k < seg.copies; ++k) {
            std::size_t ca = seg.offset + k * seg.size + a, cb = seg.offset + k * seg.size + b;
            for (const auto& e : entries) {
              AlgNum v(e.value);
              acc += v * B.U(e.row, ca) * B.U(e.col, cb);
              if (e.row != e.col) acc += v * B.U(e.col, ca) * B.U(e.row, cb);
            }
          }
          if (acc.is_zero()) continue;
          if (!acc.is_rational()) throw Error("irrational reduction: block data is not rational for this catalog");
          Rational v = acc.to_rational();
          if (average) v /= seg.copies;
          red.push_back({static_cast<int>(s), a, b, v});
        }
    }
    return red;
  };
  for (const auto& c : sdp.constraints) {
    SdpConstraint rc;
    rc.entries = reduce(c.entries, false);
    rc.rhs = c.rhs;
    rc.tag = c.tag;
    out.sdp.constraints.push_back(std::move(rc));
  }
  out.sdp.cost = reduce(sdp.cost, true);
  return out;
}

/// Lifts reduced block values back to X = sum_k U_k B_s U_k^T.
inline Matrix<double> lift_solution(const std::vector<Matrix<double>>& blocks, const SymmetryAdaptedBasis& B) {
  Matrix<double> X(B.N, B.N);
  Matrix<double> U = B.U.map<double>([](const AlgNum& v) { return v.to_double(); });
  for (std::size_t s = 0; s < B.segments.size(); ++s) {
    const auto& seg = B.segments[s];
    for (int k = 0; k < seg.copies; ++k)
      for (std::size_t r = 0; r < B.N; ++r)
        for (std::size_t c = 0; c < B.N; ++c) {
          double acc = 0;
          for (int a = 0; a < seg.size; ++a)
            for (int b = 0; b < seg.size; ++b)
              acc += U(r, seg.offset + k * seg.size + a) * blocks[s](a, b) * U(c, seg.offset + k * seg.size + b);
          X(r, c) += acc;
        }
  }
  return X;
}

// ---------------------------------------------------------------------------
// Text form.

inline nlohmann::json to_json(const BlockSDP& sdp) {
  using nlohmann::json;
  auto entries = [](const std::vector<SdpEntry>& es) {
    json a = json::array();
    for (const auto& e : es) a.push_back({e.block, e.row, e.col, e.value.get_str()});
    return a;
  };
  json j;
  j["blocks"] = json::array();
  for (const auto& b : sdp.blocks) j["blocks"].push_back({{"name", b.name}, {"size", b.size}, {"weight", b.weight}});
  j["free"] = json::array();
  for (std::size_t v = 0; v < sdp.free_names.size(); ++v)
    j["free"].push_back({{"name", sdp.free_names[v]}, {"cost", sdp.free_cost[v].get_str()}});
  j["cost"] = entries(sdp.cost);
  j["constraints"] = json::array();
  for (const auto& c : sdp.constraints) {
    json fr = json::array();
    for (const auto& [v, x] : c.free) fr.push_back({v, x.get_str()});
    j["constraints"].push_back({{"entries", entries(c.entries)}, {"free", fr}, {"rhs", c.rhs.get_str()}, {"tag", c.tag}});
  }
  return j;
}

inline BlockSDP block_sdp_from_json(const nlohmann::json& j) {
  BlockSDP sdp;
  auto entries = [](const nlohmann::json& a) {
    std::vector<SdpEntry> es;
    for (const auto& e : a)
      es.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>(), parse_rational(e.at(3).get<std::string>())});
    return es;
  };
  for (const auto& b : j.at("blocks")) sdp.add_block(b.at("name"), b.at("size"), b.value("weight", 1));
  for (const auto& f : j.at("free")) sdp.add_free(f.at("name"), parse_rational(f.at("cost").get<std::string>()));
  sdp.cost = entries(j.at("cost"));
  for (const auto& c : j.at("constraints")) {
    SdpConstraint k;
    k.entries = entries(c.at("entries"));
    for (const auto& f : c.at("free")) k.free.emplace_back(f.at(0).get<int>(), parse_rational(f.at(1).get<std::string>()));
    k.rhs = parse_rational(c.at("rhs").get<std::string>());
    k.tag = c.value("tag", "");
    sdp.constraints.push_back(std::move(k));
  }
  sdp.validate();
  return sdp;
}

}  // namespace symsos
