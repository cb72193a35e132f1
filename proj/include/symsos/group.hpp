// Finite groups acting orthogonally on R^n, real irreducible representations
// given by generator images, and representation checks.
#pragma once

#include <map>
#include <optional>
#include <type_traits>
#include <string>
#include <vector>

#include "symsos/matrix.hpp"

namespace symsos {

/// Row r of a signed permutation matrix has its nonzero at column |code[r]|-1
/// with the sign of code[r].
using SignedPerm = std::vector<int>;

inline std::optional<SignedPerm> as_signed_perm(const Matrix<Rational>& m) {
  if (!m.square()) return std::nullopt;
  SignedPerm code(m.rows(), 0);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const Rational& v = m(r, c);
      if (v == 0) continue;
      if (code[r] != 0 || (v != 1 && v != -1)) return std::nullopt;
      code[r] = (v > 0 ? 1 : -1) * static_cast<int>(c + 1);
    }
  for (int c : code)
    if (c == 0) return std::nullopt;
  return code;
}

inline SignedPerm compose(const SignedPerm& a, const SignedPerm& b) {
  SignedPerm out(a.size());
  for (std::size_t r = 0; r < a.size(); ++r) {
    int ca = a[r];
    int cb = b[std::abs(ca) - 1];
    out[r] = (ca < 0 ? -cb : cb);
  }
  return out;
}

inline Matrix<Rational> signed_perm_matrix(const SignedPerm& p) {
  Matrix<Rational> m(p.size(), p.size());
  for (std::size_t r = 0; r < p.size(); ++r) m(r, std::abs(p[r]) - 1) = p[r] > 0 ? 1 : -1;
  return m;
}

inline bool is_orthogonal(const Matrix<Rational>& m) {
  return m.square() && m.transpose() * m == Matrix<Rational>::identity(m.rows());
}

/// A finite matrix group. When `enumerated` is false only the generators are
/// known (large symmetric groups); element-wise operations then throw.
struct GroupAction {
  int n = 0;
  std::string name;
  std::vector<Matrix<Rational>> generators;
  bool enumerated = false;
  std::vector<Matrix<Rational>> elements;    // identity first
  std::vector<std::vector<int>> mult;        // mult[a][b] = index of a*b
  std::vector<int> inverse;
  std::vector<int> parent, parent_gen;       // elements[e] = elements[parent[e]] * generators[parent_gen[e]]
  std::vector<SignedPerm> perms;             // filled when every element is a signed permutation

  std::size_t order() const {
    require_elements();
    return elements.size();
  }
  bool signed_permutation() const { return !perms.empty(); }
  void require_elements() const {
    if (!enumerated) throw Error("group '" + name + "' is known by generators only");
  }
};

namespace detail {

inline std::string matrix_key(const Matrix<Rational>& m) {
  std::string key;
  for (const auto& v : m.data()) {
    key += v.get_str();
    key += ',';
  }
  return key;
}

}  // namespace detail

/// Breadth-first closure of the generators.
inline GroupAction close_group(const std::vector<Matrix<Rational>>& generators, std::size_t max_order = 10080,
                               std::string name = "custom") {
  if (generators.empty()) throw Error("close_group needs at least one generator");
  const std::size_t n = generators[0].rows();
  for (std::size_t g = 0; g < generators.size(); ++g) {
    if (generators[g].rows() != n || !generators[g].square()) throw DimensionError("generators must be n x n");
    if (!is_orthogonal(generators[g])) throw Error("generator " + std::to_string(g) + " is not orthogonal");
  }
  GroupAction G;
  G.n = static_cast<int>(n);
  G.name = std::move(name);
  G.generators = generators;
  G.enumerated = true;

  std::vector<SignedPerm> gen_perms;
  bool fast = true;
  for (const auto& g : generators) {
    auto p = as_signed_perm(g);
    if (!p) {
      fast = false;
      break;
    }
    gen_perms.push_back(*p);
  }

  auto too_big = [&]() {
    throw Error("group closure exceeded max order " + std::to_string(max_order));
  };

  if (fast) {
    std::map<SignedPerm, int> index;
    SignedPerm id(n);
    for (std::size_t i = 0; i < n; ++i) id[i] = static_cast<int>(i + 1);
    G.perms.push_back(id);
    G.parent.push_back(-1);
    G.parent_gen.push_back(-1);
    index[id] = 0;
    for (std::size_t head = 0; head < G.perms.size(); ++head) {
      for (std::size_t g = 0; g < gen_perms.size(); ++g) {
        SignedPerm h = compose(G.perms[head], gen_perms[g]);
        if (index.count(h)) continue;
        if (G.perms.size() >= max_order) too_big();
        index[h] = static_cast<int>(G.perms.size());
        G.perms.push_back(h);
        G.parent.push_back(static_cast<int>(head));
        G.parent_gen.push_back(static_cast<int>(g));
      }
    }
    const std::size_t N = G.perms.size();
    G.mult.assign(N, std::vector<int>(N));
    for (std::size_t a = 0; a < N; ++a)
      for (std::size_t b = 0; b < N; ++b) G.mult[a][b] = index.at(compose(G.perms[a], G.perms[b]));
    for (const auto& p : G.perms) G.elements.push_back(signed_perm_matrix(p));
  } else {
    std::map<std::string, int> index;
    G.elements.push_back(Matrix<Rational>::identity(n));
    G.parent.push_back(-1);
    G.parent_gen.push_back(-1);
    index[detail::matrix_key(G.elements[0])] = 0;
    for (std::size_t head = 0; head < G.elements.size(); ++head) {
      for (std::size_t g = 0; g < generators.size(); ++g) {
        Matrix<Rational> h = G.elements[head] * generators[g];
        std::string key = detail::matrix_key(h);
        if (index.count(key)) continue;
        if (G.elements.size() >= max_order) too_big();
        index[key] = static_cast<int>(G.elements.size());
        G.elements.push_back(std::move(h));
        G.parent.push_back(static_cast<int>(head));
        G.parent_gen.push_back(static_cast<int>(g));
      }
    }
    const std::size_t N = G.elements.size();
    G.mult.assign(N, std::vector<int>(N));
    for (std::size_t a = 0; a < N; ++a)
      for (std::size_t b = 0; b < N; ++b)
        G.mult[a][b] = index.at(detail::matrix_key(G.elements[a] * G.elements[b]));
  }
  const std::size_t N = G.elements.size();
  G.inverse.assign(N, -1);
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = 0; b < N; ++b)
      if (G.mult[a][b] == 0) {
        G.inverse[a] = static_cast<int>(b);
        break;
      }
  return G;
}

/// Generator-only group (no enumeration).
inline GroupAction generator_group(const std::vector<Matrix<Rational>>& generators, std::string name) {
  GroupAction G;
  if (generators.empty()) throw Error("generator_group needs generators");
  G.n = static_cast<int>(generators[0].rows());
  G.name = std::move(name);
  for (const auto& g : generators)
    if (!is_orthogonal(g)) throw Error("generator is not orthogonal");
  G.generators = generators;
  return G;
}

// ---------------------------------------------------------------------------

enum class IrrepKind { AbsolutelyReal, ComplexType };

/// Real irreducible representation given by its generator images, either
/// exactly (multi-quadratic entries) or as 50-digit approximations.
struct RealIrrep {
  std::string label;
  int dim = 1;
  IrrepKind kind = IrrepKind::AbsolutelyReal;
  bool approximate = false;
  std::vector<Matrix<AlgNum>> gens;          // exact images
  std::vector<Matrix<BigFloat>> gens_approx; // used when approximate

  bool complex_type() const { return kind == IrrepKind::ComplexType; }
  /// Dimension of the underlying complex irreps.
  int complex_dim() const { return complex_type() ? dim / 2 : dim; }
};

inline Matrix<BigFloat> to_big_matrix(const Matrix<AlgNum>& m) {
  return m.map<BigFloat>([](const AlgNum& v) { return v.to_float<BigFloat>(); });
}

template <class F>
std::vector<Matrix<F>> generator_images(const RealIrrep& rep) {
  if constexpr (std::is_same_v<F, AlgNum>) {
    if (rep.approximate) throw Error("irrep '" + rep.label + "' has no exact data");
    return rep.gens;
  } else {
    static_assert(std::is_same_v<F, BigFloat>, "irrep images are exact or BigFloat");
    if (rep.approximate) return rep.gens_approx;
    std::vector<Matrix<BigFloat>> out;
    for (const auto& g : rep.gens) out.push_back(to_big_matrix(g));
    return out;
  }
}

/// Image of every group element, following the closure's BFS words.
template <class F>
std::vector<Matrix<F>> element_images(const RealIrrep& rep, const GroupAction& G) {
  G.require_elements();
  auto gens = generator_images<F>(rep);
  if (gens.size() != G.generators.size()) throw Error("irrep '" + rep.label + "' has wrong generator count");
  std::vector<Matrix<F>> out(G.elements.size());
  out[0] = Matrix<F>::identity(rep.dim);
  for (std::size_t e = 1; e < G.elements.size(); ++e) out[e] = out[G.parent[e]] * gens[G.parent_gen[e]];
  return out;
}

template <class F>
F trace(const Matrix<F>& m) {
  F t(0);
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

template <class F>
std::vector<F> character(const RealIrrep& rep, const GroupAction& G) {
  auto mats = element_images<F>(rep, G);
  std::vector<F> chi;
  for (const auto& m : mats) chi.push_back(trace(m));
  return chi;
}

struct RepReport {
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

namespace detail {

template <class F>
bool near_equal(const Matrix<F>& a, const Matrix<F>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    if (!Field<F>::is_zero(a.data()[i] - b.data()[i])) return false;
  return true;
}

}  // namespace detail

/// Homomorphism and orthogonality of one matrix per group element.
template <class F>
RepReport verify_representation(const std::vector<Matrix<F>>& mats, const GroupAction& G) {
  RepReport rep;
  G.require_elements();
  const std::size_t N = G.elements.size();
  if (mats.size() != N) {
    rep.problems.push_back("expected one matrix per group element");
    return rep;
  }
  const std::size_t d = mats[0].rows();
  if (!detail::near_equal(mats[0], Matrix<F>::identity(d))) rep.problems.push_back("identity not mapped to I");
  for (std::size_t a = 0; a < N && rep.problems.size() < 20; ++a) {
    if (!detail::near_equal(Matrix<F>(mats[a].transpose() * mats[a]), Matrix<F>::identity(d)))
      rep.problems.push_back("element " + std::to_string(a) + " is not orthogonal");
    for (std::size_t b = 0; b < N; ++b)
      if (!detail::near_equal(Matrix<F>(mats[a] * mats[b]), mats[G.mult[a][b]])) {
        rep.problems.push_back("homomorphism fails at (" + std::to_string(a) + "," + std::to_string(b) + ")");
        break;
      }
  }
  return rep;
}

/// Checks the generator images of an irrep against the group's relations.
inline RepReport verify_irrep(const RealIrrep& irrep, const GroupAction& G) {
  if (irrep.approximate) return verify_representation(element_images<BigFloat>(irrep, G), G);
  return verify_representation(element_images<AlgNum>(irrep, G), G);
}

// ---------------------------------------------------------------------------

/// Complex number with exact real and imaginary parts.
struct ComplexEntry {
  AlgNum re, im;
};

/// A complex representation given by generator images.
struct ComplexRep {
  std::string label;
  int dim = 1;
  std::vector<std::vector<ComplexEntry>> gens;  // row-major dim x dim per generator
};

/// Realification of a conjugate pair: A + iB becomes [[A, -B], [B, A]].
inline RealIrrep realify_pair(const ComplexRep& a, const ComplexRep& b, const std::string& label) {
  if (a.dim != b.dim || a.gens.size() != b.gens.size()) throw Error("realify_pair: shapes differ");
  bool has_imag = false;
  for (std::size_t g = 0; g < a.gens.size(); ++g)
    for (std::size_t k = 0; k < a.gens[g].size(); ++k) {
      const auto& x = a.gens[g][k];
      const auto& y = b.gens[g][k];
      if (x.re != y.re || x.im != -y.im) throw Error("realify_pair: inputs are not complex conjugates");
      if (!x.im.is_zero()) has_imag = true;
    }
  if (!has_imag) throw Error("realify_pair: representation is real, not a conjugate pair");
  RealIrrep r;
  r.label = label;
  r.dim = 2 * a.dim;
  r.kind = IrrepKind::ComplexType;
  const std::size_t d = a.dim;
  for (const auto& g : a.gens) {
    Matrix<AlgNum> m(2 * d, 2 * d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        const auto& e = g[i * d + j];
        m(i, j) = e.re;
        m(i + d, j + d) = e.re;
        m(i, j + d) = -e.im;
        m(i + d, j) = e.im;
      }
    r.gens.push_back(std::move(m));
  }
  return r;
}

}  // namespace symsos
