// Induced representations on monomial spaces, Reynolds averaging,
// symmetry-adapted bases and block diagonalization.
#pragma once

#include <cmath>
#include <memory>
#include <numeric>

#include "symsos/catalog.hpp"
#include "symsos/polynomial.hpp"

namespace symsos {

/// rho e_j = sign[j] * e_{target[j]}
struct IndexPerm {
  std::vector<int> target;
  std::vector<int> sign;

  Matrix<Rational> dense() const {
    Matrix<Rational> m(target.size(), target.size());
    for (std::size_t j = 0; j < target.size(); ++j) m(target[j], j) = sign[j];
    return m;
  }
  template <class F>
  Vector<F> apply(const Vector<F>& v) const {
    Vector<F> out(v.size(), F(0));
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (Field<F>::exact && Field<F>::is_zero(v[j])) continue;
      out[target[j]] = sign[j] > 0 ? v[j] : F(-v[j]);
    }
    return out;
  }
};

inline IndexPerm index_perm(const Matrix<Rational>& m) {
  if (!m.square()) throw DimensionError("representation matrix must be square");
  IndexPerm p;
  p.target.assign(m.cols(), -1);
  p.sign.assign(m.cols(), 0);
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (std::size_t r = 0; r < m.rows(); ++r) {
      const Rational& v = m(r, c);
      if (v == 0) continue;
      if (p.target[c] != -1 || (v != 1 && v != -1))
        throw Error("only signed-permutation representations are supported");
      p.target[c] = static_cast<int>(r);
      p.sign[c] = v > 0 ? 1 : -1;
    }
  for (int t : p.target)
    if (t < 0) throw Error("representation matrix is singular");
  return p;
}

/// A signed-permutation representation on R^N, one matrix per group element.
struct InducedRep {
  std::shared_ptr<const GroupAction> action;
  int degree = 0;
  bool homogeneous = false;
  MonomialVector basis;  // empty for representations given by matrices
  std::vector<IndexPerm> matrices;

  std::size_t size() const { return matrices.empty() ? 0 : matrices[0].target.size(); }
  std::vector<Matrix<Rational>> dense() const {
    std::vector<Matrix<Rational>> out;
    for (const auto& m : matrices) out.push_back(m.dense());
    return out;
  }
};

/// rho(g) p(x) = p(theta(g^-1) x) on monomials of degree <= d (or exactly d).
inline InducedRep induced_representation(const GroupAction& G, int d, bool homogeneous = false) {
  G.require_elements();
  if (d < 0) throw Error("degree bound must be nonnegative");
  InducedRep rep;
  rep.action = std::make_shared<GroupAction>(G);
  rep.degree = d;
  rep.homogeneous = homogeneous;
  if (homogeneous) {
    rep.basis.nvars = G.n;
    rep.basis.entries = monomials_of_degree(G.n, d);
  } else {
    rep.basis = monomial_vector(G.n, d);
  }
  const std::size_t N = rep.basis.size();
  std::map<Monomial, int, GradedLex> index;
  for (std::size_t j = 0; j < N; ++j) index[rep.basis.entries[j]] = static_cast<int>(j);
  for (std::size_t g = 0; g < G.elements.size(); ++g) {
    const auto& inv = G.elements[G.inverse[g]];
    IndexPerm p;
    p.target.resize(N);
    p.sign.resize(N);
    for (std::size_t j = 0; j < N; ++j) {
      Polynomial img = substitute_linear(Polynomial::monomial(rep.basis.entries[j]), inv);
      if (img.size() != 1) throw Error("induced representation needs a signed-permutation action");
      const auto& [m, c] = *img.terms().begin();
      if (c != 1 && c != -1) throw Error("induced representation needs a signed-permutation action");
      p.target[j] = index.at(m);
      p.sign[j] = c > 0 ? 1 : -1;
    }
    rep.matrices.push_back(std::move(p));
  }
  return rep;
}

/// Wraps explicit matrices (one per element, in the group's element order).
inline InducedRep representation_from_matrices(const GroupAction& G, const std::vector<Matrix<Rational>>& rho) {
  G.require_elements();
  if (rho.size() != G.elements.size()) throw DimensionError("need one matrix per group element");
  InducedRep rep;
  rep.action = std::make_shared<GroupAction>(G);
  for (const auto& m : rho) rep.matrices.push_back(index_perm(m));
  return rep;
}

/// Reynolds operator (1/|G|) sum_g rho(g)^T X rho(g).
template <class F>
Matrix<F> fixed_point_project(const Matrix<F>& X, const InducedRep& rep) {
  const std::size_t N = rep.size();
  if (X.rows() != N || X.cols() != N) throw DimensionError("matrix size does not match representation");
  Matrix<F> out(N, N);
  for (const auto& p : rep.matrices)
    for (std::size_t a = 0; a < N; ++a)
      for (std::size_t b = 0; b < N; ++b) {
        const F& v = X(p.target[a], p.target[b]);
        if (p.sign[a] * p.sign[b] > 0) out(a, b) += v;
        else out(a, b) -= v;
      }
  F inv = F(1) / F(static_cast<long>(rep.matrices.size()));
  return out.scaled(inv);
}

// ---------------------------------------------------------------------------

/// Columns [offset, offset + copies*size) of the basis, copy-major.
struct Segment {
  std::size_t irrep = 0;
  int copies = 1;  // n_i for absolutely real irreps, 1 for complex type
  int size = 0;    // block size m_i (2 m_i for complex type)
  std::size_t offset = 0;
};

struct SymmetryAdaptedBasis {
  std::size_t N = 0;
  bool exact = true;
  std::vector<Segment> segments;
  std::vector<int> multiplicities;  // block size per catalog irrep (0 if absent)
  Matrix<AlgNum> U;                 // exact mode: orthogonal, unnormalized
  std::vector<AlgNum> norms2;
  std::optional<Matrix<AlgNum>> T_exact;  // when every norm has an exact root
  Matrix<double> T;                       // orthonormal

  const Segment* segment_for(std::size_t irrep) const {
    for (const auto& s : segments)
      if (s.irrep == irrep) return &s;
    return nullptr;
  }
};

namespace detail {

/// Orbits of basis indices under the representation.
inline std::vector<std::vector<int>> index_orbits(const InducedRep& rep) {
  const std::size_t N = rep.size();
  std::vector<int> owner(N, -1);
  std::vector<std::vector<int>> orbits;
  for (std::size_t j = 0; j < N; ++j) {
    if (owner[j] >= 0) continue;
    std::vector<int> orbit;
    std::vector<int> todo = {static_cast<int>(j)};
    owner[j] = static_cast<int>(orbits.size());
    while (!todo.empty()) {
      int k = todo.back();
      todo.pop_back();
      orbit.push_back(k);
      for (const auto& p : rep.matrices) {
        int t = p.target[k];
        if (owner[t] < 0) {
          owner[t] = static_cast<int>(orbits.size());
          todo.push_back(t);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

/// sum_g coeff[g] rho(g) v
template <class F>
Vector<F> apply_combination(const InducedRep& rep, const std::vector<F>& coeff, const Vector<F>& v) {
  Vector<F> out(v.size(), F(0));
  for (std::size_t g = 0; g < rep.matrices.size(); ++g) {
    if (Field<F>::is_zero(coeff[g])) continue;
    const auto& p = rep.matrices[g];
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (Field<F>::exact && Field<F>::is_zero(v[j])) continue;
      F term = coeff[g] * v[j];
      if (p.sign[j] > 0) out[p.target[j]] += term;
      else out[p.target[j]] -= term;
    }
  }
  return out;
}

/// Orthogonal basis of the image of sum_g coeff[g] rho(g), orbit by orbit.
template <class F>
std::vector<Vector<F>> image_basis(const InducedRep& rep, const std::vector<std::vector<int>>& orbits,
                                   const std::vector<F>& coeff) {
  const std::size_t N = rep.size();
  std::vector<Vector<F>> out;
  for (const auto& orbit : orbits) {
    std::vector<Vector<F>> local;
    for (int j : orbit) {
      Vector<F> e(N, F(0));
      e[j] = F(1);
      Vector<F> img = apply_combination(rep, coeff, e);
      Vector<F> small;
      for (int k : orbit) small.push_back(img[k]);
      local.push_back(std::move(small));
    }
    for (auto& v : orthogonal_basis(local)) {
      Vector<F> full(N, F(0));
      for (std::size_t k = 0; k < orbit.size(); ++k) full[orbit[k]] = v[k];
      out.push_back(std::move(full));
    }
  }
  return out;
}

template <class F>
F from_long(long v) {
  return F(v);
}

template <class F>
double to_dbl(const F& v) {
  return Field<F>::to_double(v);
}

/// Columns per irrep (copy-major) computed over F.
template <class F>
std::vector<std::pair<Segment, std::vector<Vector<F>>>> adapted_columns(const InducedRep& rep,
                                                                          const IrrepCatalog& cat) {
  const GroupAction& G = *rep.action;
  const std::size_t order = G.elements.size();
  auto orbits = index_orbits(rep);
  std::vector<std::pair<Segment, std::vector<Vector<F>>>> out;
  for (std::size_t i = 0; i < cat.irreps.size(); ++i) {
    const RealIrrep& irrep = cat.irreps[i];
    auto mats = element_images<F>(irrep, G);
    Segment seg;
    seg.irrep = i;
    std::vector<Vector<F>> cols;
    if (irrep.complex_type()) {
      // isotypic projector from the realified character
      std::vector<F> coeff(order);
      F scale = F(static_cast<long>(irrep.complex_dim())) / F(static_cast<long>(order));
      for (std::size_t g = 0; g < order; ++g) coeff[g] = scale * trace(mats[G.inverse[g]]);
      cols = image_basis(rep, orbits, coeff);
      seg.copies = 1;
      seg.size = static_cast<int>(cols.size());
    } else {
      const int n = irrep.dim;
      F scale = F(static_cast<long>(n)) / F(static_cast<long>(order));
      std::vector<F> c11(order);
      for (std::size_t g = 0; g < order; ++g) c11[g] = scale * mats[G.inverse[g]](0, 0);
      std::vector<Vector<F>> first = image_basis(rep, orbits, c11);
      seg.copies = n;
      seg.size = static_cast<int>(first.size());
      cols = first;
      for (int k = 1; k < n; ++k) {
        std::vector<F> ck1(order);
        for (std::size_t g = 0; g < order; ++g) ck1[g] = scale * mats[G.inverse[g]](0, k);
        for (const auto& u : first) {
          Vector<F> v = apply_combination(rep, ck1, u);
          F a = dot(v, v), b = dot(u, u);
          if (!Field<F>::is_zero(a - b))
            throw Error("projection rank inconsistency in copy " + std::to_string(k + 1) + " of irrep '" +
                        irrep.label + "'");
          cols.push_back(std::move(v));
        }
      }
    }
    out.emplace_back(seg, std::move(cols));
  }
  return out;
}

}  // namespace detail

/// Symmetry-adapted basis from the component projections of each irrep.
inline SymmetryAdaptedBasis symmetry_adapted_basis(const InducedRep& rep, const IrrepCatalog& cat) {
  if (rep.action->n != cat.action.n || rep.action->elements.size() != cat.action.elements.size())
    throw Error("catalog does not match the representation's group");
  SymmetryAdaptedBasis B;
  B.N = rep.size();
  B.exact = cat.exact();
  B.multiplicities.assign(cat.irreps.size(), 0);
  B.T = Matrix<double>(B.N, B.N);
  std::size_t col = 0;
  auto place = [&](Segment seg, std::size_t ncols) {
    B.multiplicities[seg.irrep] = seg.size;
    if (seg.size == 0) return false;
    seg.offset = col;
    B.segments.push_back(seg);
    if (col + ncols > B.N) throw Error("projection rank inconsistency: too many basis vectors");
    return true;
  };
  if (B.exact) {
    B.U = Matrix<AlgNum>(B.N, B.N);
    bool all_roots = true;
    Matrix<AlgNum> Tx(B.N, B.N);
    for (auto& [seg, cols] : detail::adapted_columns<AlgNum>(rep, cat)) {
      if (!place(seg, cols.size())) continue;
      for (const auto& v : cols) {
        AlgNum n2 = dot(v, v);
        double scale = 1.0 / std::sqrt(n2.to_double());
        std::optional<AlgNum> root;
        if (n2.is_rational()) root = AlgNum::sqrt_rational(n2.to_rational());
        if (!root) all_roots = false;
        AlgNum inv_root = root ? root->inverse() : AlgNum();
        for (std::size_t r = 0; r < B.N; ++r) {
          B.U(r, col) = v[r];
          B.T(r, col) = v[r].to_double() * scale;
          if (root) Tx(r, col) = v[r] * inv_root;
        }
        B.norms2.push_back(n2);
        ++col;
      }
    }
    if (all_roots) B.T_exact = std::move(Tx);
  } else {
    for (auto& [seg, cols] : detail::adapted_columns<BigFloat>(rep, cat)) {
      if (!place(seg, cols.size())) continue;
      for (const auto& v : cols) {
        BigFloat n = boost::multiprecision::sqrt(dot(v, v));
        for (std::size_t r = 0; r < B.N; ++r) B.T(r, col) = BigFloat(v[r] / n).convert_to<double>();
        ++col;
      }
    }
  }
  if (col != B.N)
    throw Error("projection rank inconsistency: " + std::to_string(col) + " basis vectors for dimension " +
                std::to_string(B.N));
  return B;
}

// ---------------------------------------------------------------------------

struct BlockDiagonal {
  std::vector<std::size_t> irreps;                // catalog index per block
  std::vector<Matrix<double>> blocks;             // one representative per irrep
  std::optional<std::vector<Matrix<AlgNum>>> exact_blocks;
  double residual = 0;                            // largest off-block or copy mismatch
};

/// Blocks of T^T X T for an invariant X, one per irrep.
inline BlockDiagonal block_diagonalize(const Matrix<double>& X, const SymmetryAdaptedBasis& B, double tol = 1e-8) {
  if (X.rows() != B.N || X.cols() != B.N) throw DimensionError("matrix size does not match basis");
  Matrix<double> W = B.T.transpose() * X * B.T;
  BlockDiagonal out;
  std::vector<int> owner(B.N, -1);
  for (std::size_t s = 0; s < B.segments.size(); ++s) {
    const auto& seg = B.segments[s];
    for (int k = 0; k < seg.copies; ++k)
      for (int a = 0; a < seg.size; ++a) owner[seg.offset + k * seg.size + a] = static_cast<int>(s * 64 + k);
  }
  double scale = 1;
  for (double v : X.data()) scale = std::max(scale, std::abs(v));
  for (std::size_t r = 0; r < B.N; ++r)
    for (std::size_t c = 0; c < B.N; ++c)
      if (owner[r] != owner[c]) out.residual = std::max(out.residual, std::abs(W(r, c)));
  for (const auto& seg : B.segments) {
    Matrix<double> blk(seg.size, seg.size);
    for (int a = 0; a < seg.size; ++a)
      for (int b = 0; b < seg.size; ++b) blk(a, b) = W(seg.offset + a, seg.offset + b);
    for (int k = 1; k < seg.copies; ++k)
      for (int a = 0; a < seg.size; ++a)
        for (int b = 0; b < seg.size; ++b) {
          std::size_t o = seg.offset + k * seg.size;
          out.residual = std::max(out.residual, std::abs(W(o + a, o + b) - blk(a, b)));
        }
    out.irreps.push_back(seg.irrep);
    out.blocks.push_back(std::move(blk));
  }
  if (out.residual > tol * scale)
    throw Error("off-block residual " + std::to_string(out.residual) + " exceeds tolerance");
  return out;
}

/// Exact variant: residual is exactly zero or the call throws.
inline BlockDiagonal block_diagonalize(const Matrix<Rational>& X, const SymmetryAdaptedBasis& B) {
  BlockDiagonal out = block_diagonalize(to_double_matrix(X), B);
  if (!B.exact || !B.T_exact) return out;
  const Matrix<AlgNum>& T = *B.T_exact;
  Matrix<AlgNum> XA = X.map<AlgNum>([](const Rational& v) { return AlgNum(v); });
  Matrix<AlgNum> W = T.transpose() * XA * T;
  std::vector<Matrix<AlgNum>> blocks;
  std::vector<int> owner(B.N, -1);
  for (std::size_t s = 0; s < B.segments.size(); ++s) {
    const auto& seg = B.segments[s];
    for (int k = 0; k < seg.copies; ++k)
      for (int a = 0; a < seg.size; ++a) owner[seg.offset + k * seg.size + a] = static_cast<int>(s * 64 + k);
  }
  for (std::size_t r = 0; r < B.N; ++r)
    for (std::size_t c = 0; c < B.N; ++c)
      if (owner[r] != owner[c] && !W(r, c).is_zero()) throw Error("nonzero off-block entry in exact mode");
  for (const auto& seg : B.segments) {
    Matrix<AlgNum> blk(seg.size, seg.size);
    for (int a = 0; a < seg.size; ++a)
      for (int b = 0; b < seg.size; ++b) blk(a, b) = W(seg.offset + a, seg.offset + b);
    for (int k = 1; k < seg.copies; ++k)
      for (int a = 0; a < seg.size; ++a)
        for (int b = 0; b < seg.size; ++b) {
          std::size_t o = seg.offset + k * seg.size;
          if (W(o + a, o + b) != blk(a, b)) throw Error("repeated blocks differ in exact mode");
        }
    blocks.push_back(std::move(blk));
  }
  out.exact_blocks = std::move(blocks);
  out.residual = 0;
  return out;
}

/// Polynomial spanned by a basis column (monomial coefficients).
template <class F>
BasicPolynomial<F> column_polynomial(const MonomialVector& basis, const Vector<F>& v) {
  BasicPolynomial<F> p(basis.nvars);
  for (std::size_t j = 0; j < v.size(); ++j) p.add_term(basis.entries[j], v[j]);
  return p;
}

}  // namespace symsos
