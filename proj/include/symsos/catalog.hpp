// Built-in groups with complete lists of real irreducible representations:
// sign flips C2^n, cyclic, dihedral and symmetric groups.
#pragma once

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "symsos/group.hpp"

namespace symsos {

struct IrrepCatalog {
  std::string name;     // e.g. "dihedral:4"
  std::string variant;  // action variant
  GroupAction action;
  std::vector<RealIrrep> irreps;

  bool exact() const {
    for (const auto& r : irreps)
      if (r.approximate) return false;
    return true;
  }
  std::size_t index_of(const std::string& label) const {
    for (std::size_t i = 0; i < irreps.size(); ++i)
      if (irreps[i].label == label) return i;
    throw Error("no irrep labelled '" + label + "'");
  }
};

namespace detail {

/// cos of an integer number of degrees that is a multiple of 30 or 45.
inline std::optional<AlgNum> exact_cos_deg(long deg) {
  deg = ((deg % 360) + 360) % 360;
  if (deg % 30 != 0 && deg % 45 != 0) return std::nullopt;
  int sign = 1;
  if (deg > 180) deg = 360 - deg;
  if (deg > 90) {
    deg = 180 - deg;
    sign = -1;
  }
  AlgNum v;
  switch (deg) {
    case 0: v = AlgNum(1); break;
    case 30: v = AlgNum::sqrt_of(3, make_rational(1, 2)); break;
    case 45: v = AlgNum::sqrt_of(2, make_rational(1, 2)); break;
    case 60: v = AlgNum(make_rational(1, 2)); break;
    case 90: v = AlgNum(0); break;
    default: return std::nullopt;
  }
  return sign < 0 ? -v : v;
}

/// Exact (cos, sin) of 2*pi*j/m when available.
inline std::optional<std::pair<AlgNum, AlgNum>> exact_root(long j, long m) {
  if ((360 * j) % m != 0) return std::nullopt;
  long deg = 360 * j / m;
  auto c = exact_cos_deg(deg), s = exact_cos_deg(90 - deg);
  if (!c || !s) return std::nullopt;
  return std::make_pair(*c, *s);
}

inline std::pair<BigFloat, BigFloat> approx_root(long j, long m) {
  BigFloat angle = 2 * boost::math::constants::pi<BigFloat>() * BigFloat(j) / BigFloat(m);
  return {boost::multiprecision::cos(angle), boost::multiprecision::sin(angle)};
}

inline Matrix<AlgNum> scalar_matrix(const AlgNum& v) {
  Matrix<AlgNum> m(1, 1);
  m(0, 0) = v;
  return m;
}

inline RealIrrep one_dim(const std::string& label, const std::vector<int>& signs) {
  RealIrrep r;
  r.label = label;
  r.dim = 1;
  for (int s : signs) r.gens.push_back(scalar_matrix(AlgNum(s)));
  return r;
}

inline Matrix<Rational> rational_rotation(int m) {
  // rotation by 2*pi/m, rational only for m in {1, 2, 4}
  Matrix<Rational> r(2, 2);
  if (m == 1) return Matrix<Rational>::identity(2);
  if (m == 2) return Matrix<Rational>::identity(2).scaled(Rational(-1));
  if (m == 4) {
    r(0, 1) = -1;
    r(1, 0) = 1;
    return r;
  }
  throw Error("planar action is rational only for m in {1, 2, 4}");
}

inline Matrix<Rational> shift_matrix(int m) {
  Matrix<Rational> r(m, m);
  for (int i = 0; i < m; ++i) r(i, (i + m - 1) % m) = 1;
  return r;
}

inline Matrix<Rational> reflect_matrix(int m) {
  Matrix<Rational> s(m, m);
  for (int i = 0; i < m; ++i) s(i, (m - i) % m) = 1;
  return s;
}

/// 2x2 rotation by 2*pi*j/m as an irrep image (exact or approximate).
inline void push_rotation(RealIrrep& r, long j, long m) {
  if (auto e = exact_root(j, m)) {
    Matrix<AlgNum> g(2, 2);
    g(0, 0) = e->first;
    g(0, 1) = -e->second;
    g(1, 0) = e->second;
    g(1, 1) = e->first;
    r.gens.push_back(std::move(g));
  } else {
    auto [c, s] = approx_root(j, m);
    Matrix<BigFloat> g(2, 2);
    g(0, 0) = c;
    g(0, 1) = -s;
    g(1, 0) = s;
    g(1, 1) = c;
    r.gens_approx.push_back(std::move(g));
    r.approximate = true;
  }
}

inline void push_swap(RealIrrep& r) {
  Matrix<AlgNum> s(2, 2);
  s(0, 1) = AlgNum(1);
  s(1, 0) = AlgNum(1);
  if (r.approximate) r.gens_approx.push_back(to_big_matrix(s));
  else r.gens.push_back(std::move(s));
}

}  // namespace detail

/// Coordinate sign flips on R^n; irreps indexed by subsets (bitmask order).
inline IrrepCatalog catalog_c2n(int n) {
  if (n < 1 || n > 12) throw Error("c2n supports 1 <= n <= 12");
  IrrepCatalog cat;
  cat.name = "c2n:" + std::to_string(n);
  cat.variant = "signs";
  std::vector<Matrix<Rational>> gens;
  for (int i = 0; i < n; ++i) {
    Matrix<Rational> g = Matrix<Rational>::identity(n);
    g(i, i) = -1;
    gens.push_back(g);
  }
  cat.action = close_group(gens, std::size_t(1) << n, cat.name);
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> signs(n);
    std::string label = "chi_";
    for (int i = 0; i < n; ++i) {
      bool in = mask & (1u << i);
      signs[i] = in ? -1 : 1;
      label += in ? '1' : '0';
    }
    cat.irreps.push_back(detail::one_dim(label, signs));
  }
  return cat;
}

/// Number of flipped coordinates that an irrep of c2n detects.
inline int c2n_type(const RealIrrep& r) {
  return static_cast<int>(std::count(r.label.begin(), r.label.end(), '1'));
}

/// Cyclic group of order m: "planar" rotations (m in {1,2,4}) or the
/// "regular" shift on R^m.
inline IrrepCatalog catalog_cyclic(int m, std::string variant = "") {
  if (m < 1 || m > 12) throw Error("cyclic supports 1 <= m <= 12");
  if (variant.empty()) variant = (m == 1 || m == 2 || m == 4) ? "planar" : "regular";
  IrrepCatalog cat;
  cat.name = "cyclic:" + std::to_string(m);
  cat.variant = variant;
  Matrix<Rational> gen;
  if (variant == "planar") gen = detail::rational_rotation(m);
  else if (variant == "regular") gen = m == 1 ? Matrix<Rational>::identity(1) : detail::shift_matrix(m);
  else throw Error("unknown cyclic action variant '" + variant + "'");
  cat.action = close_group({gen}, m, cat.name);
  cat.irreps.push_back(detail::one_dim("trivial", {1}));
  if (m % 2 == 0) cat.irreps.push_back(detail::one_dim("sign", {-1}));
  for (int j = 1; 2 * j < m; ++j) {
    RealIrrep r;
    r.label = "rot_" + std::to_string(j);
    r.dim = 2;
    r.kind = IrrepKind::ComplexType;
    detail::push_rotation(r, j, m);
    cat.irreps.push_back(std::move(r));
  }
  return cat;
}

/// Dihedral group of order 2m with generators r (rotation) and s (reflection).
/// "planar": r = rotation by 2pi/m, s = (x,y) -> (y,x), m in {1,2,4};
/// "vertices": permutation of the m vertex coordinates, m >= 3.
inline IrrepCatalog catalog_dihedral(int m, std::string variant = "") {
  if (m < 1 || m > 12) throw Error("dihedral supports 1 <= m <= 12");
  if (variant.empty()) variant = (m == 1 || m == 2 || m == 4) ? "planar" : "vertices";
  IrrepCatalog cat;
  cat.name = "dihedral:" + std::to_string(m);
  cat.variant = variant;
  std::vector<Matrix<Rational>> gens;
  if (variant == "planar") {
    Matrix<Rational> s(2, 2);
    s(0, 1) = 1;
    s(1, 0) = 1;
    gens = {detail::rational_rotation(m), s};
  } else if (variant == "vertices") {
    if (m < 3) throw Error("vertices action needs m >= 3");
    gens = {detail::shift_matrix(m), detail::reflect_matrix(m)};
  } else {
    throw Error("unknown dihedral action variant '" + variant + "'");
  }
  cat.action = close_group(gens, 2 * m, cat.name);
  cat.irreps.push_back(detail::one_dim("A1", {1, 1}));
  cat.irreps.push_back(detail::one_dim("A2", {1, -1}));
  if (m % 2 == 0) {
    cat.irreps.push_back(detail::one_dim("B1", {-1, 1}));
    cat.irreps.push_back(detail::one_dim("B2", {-1, -1}));
  }
  for (int j = 1; 2 * j < m; ++j) {
    RealIrrep r;
    r.label = "E" + std::to_string(j);
    r.dim = 2;
    detail::push_rotation(r, j, m);
    detail::push_swap(r);
    cat.irreps.push_back(std::move(r));
  }
  return cat;
}

// ---------------------------------------------------------------------------
// Symmetric groups via Young's orthogonal form.

namespace detail {

/// Partitions of n in decreasing lexicographic order.
inline std::vector<std::vector<int>> partitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int left, int maxpart) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = std::min(left, maxpart); p >= 1; --p) {
      cur.push_back(p);
      rec(left - p, p);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

/// Standard tableau stored as row index of each entry 1..n (a Yamanouchi
/// word). Tableaux are listed in increasing lexicographic order of the word.
inline std::vector<std::vector<int>> standard_tableaux(const std::vector<int>& shape) {
  int n = 0;
  for (int p : shape) n += p;
  std::vector<std::vector<int>> out;
  std::vector<int> word, filled(shape.size(), 0);
  std::function<void()> rec = [&]() {
    if (static_cast<int>(word.size()) == n) {
      out.push_back(word);
      return;
    }
    for (std::size_t r = 0; r < shape.size(); ++r) {
      if (filled[r] >= shape[r]) continue;
      if (r > 0 && filled[r] >= filled[r - 1]) continue;
      word.push_back(static_cast<int>(r));
      ++filled[r];
      rec();
      --filled[r];
      word.pop_back();
    }
  };
  rec();
  return out;
}

/// Image of the adjacent transposition (k, k+1), k 1-based.
inline Matrix<AlgNum> young_generator(const std::vector<std::vector<int>>& tabs, int k) {
  const std::size_t d = tabs.size();
  Matrix<AlgNum> m(d, d);
  auto content = [](const std::vector<int>& word, int entry) {
    // column = number of earlier entries in the same row
    int row = word[entry - 1], col = 0;
    for (int e = 1; e < entry; ++e)
      if (word[e - 1] == row) ++col;
    return col - row;
  };
  for (std::size_t t = 0; t < d; ++t) {
    const auto& w = tabs[t];
    int r = content(w, k + 1) - content(w, k);
    m(t, t) = AlgNum(make_rational(1, r));
    if (r == 1 || r == -1) continue;
    std::vector<int> swapped = w;
    std::swap(swapped[k - 1], swapped[k]);
    auto it = std::find(tabs.begin(), tabs.end(), swapped);
    if (it == tabs.end()) throw Error("young form: swapped tableau not standard");
    Rational off2 = Rational(1) - make_rational(1, static_cast<long>(r) * r);
    m(static_cast<std::size_t>(it - tabs.begin()), t) = *AlgNum::sqrt_rational(off2);
  }
  return m;
}

inline std::string partition_label(const std::vector<int>& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + "]";
}

}  // namespace detail

/// Coordinate transposition matched to the adjacent transposition (i, i+1):
/// generator i swaps coordinates n-i and n-i+1 (1-based).
inline std::vector<Matrix<Rational>> symmetric_generators(int n) {
  std::vector<Matrix<Rational>> gens;
  for (int i = 1; i < n; ++i) {
    Matrix<Rational> g = Matrix<Rational>::identity(n);
    int a = n - i - 1, b = n - i;
    g(a, a) = 0;
    g(b, b) = 0;
    g(a, b) = 1;
    g(b, a) = 1;
    gens.push_back(g);
  }
  return gens;
}

/// Young orthogonal irreps of S_n, one per partition.
inline std::vector<RealIrrep> symmetric_irreps(int n) {
  auto parts = detail::partitions(n);
  if (n == 3) std::swap(parts[1], parts[2]);  // trivial, sign, standard
  std::vector<RealIrrep> out;
  for (const auto& p : parts) {
    auto tabs = detail::standard_tableaux(p);
    RealIrrep r;
    r.label = detail::partition_label(p);
    r.dim = static_cast<int>(tabs.size());
    for (int k = 1; k < n; ++k) r.gens.push_back(detail::young_generator(tabs, k));
    out.push_back(std::move(r));
  }
  return out;
}

/// S_n permuting coordinates. Enumerated for n <= 5; larger n (up to 8) are
/// generator-only.
inline IrrepCatalog catalog_symmetric(int n) {
  if (n < 2 || n > 8) throw Error("symmetric supports 2 <= n <= 8");
  IrrepCatalog cat;
  cat.name = "symmetric:" + std::to_string(n);
  cat.variant = "permutation";
  auto gens = symmetric_generators(n);
  if (n <= 5) cat.action = close_group(gens, 120, cat.name);
  else cat.action = generator_group(gens, cat.name);
  cat.irreps = symmetric_irreps(n);
  return cat;
}

/// Signed-permutation symmetries of the Choi-Lam biquadratic form on
/// (x1,x2,x3,y1,y2,y3). Order 96; no irreps.
inline GroupAction choi_group() {
  auto perm = [](std::vector<int> code) { return signed_perm_matrix(code); };
  std::vector<Matrix<Rational>> gens = {
      perm({-1, 2, 3, -4, 5, 6}), perm({1, -2, 3, 4, -5, 6}), perm({1, 2, -3, 4, 5, -6}),
      perm({1, 2, 3, -4, -5, -6}), perm({3, 1, 2, 6, 4, 5}),  perm({6, 5, 4, 3, 2, 1})};
  return close_group(gens, 10080, "choi");
}

/// Parses "dihedral:4", "dihedral:6:vertices", "cyclic:4", "c2n:3",
/// "symmetric:4", "trivial:n".
inline IrrepCatalog catalog(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() < 2 || parts.size() > 3) throw Error("group spec must look like name:param[:variant]");
  int k = 0;
  try {
    k = std::stoi(parts[1]);
  } catch (const std::exception&) {
    throw Error("group spec parameter must be an integer");
  }
  std::string variant = parts.size() == 3 ? parts[2] : "";
  const std::string& name = parts[0];
  if (name == "dihedral") return catalog_dihedral(k, variant);
  if (name == "cyclic") return catalog_cyclic(k, variant);
  if (name == "c2n") return catalog_c2n(k);
  if (name == "symmetric") return catalog_symmetric(k);
  if (name == "trivial") {
    if (k < 1) throw Error("trivial group needs n >= 1");
    IrrepCatalog cat;
    cat.name = spec;
    cat.variant = "identity";
    cat.action = close_group({Matrix<Rational>::identity(k)}, 1, spec);
    cat.irreps.push_back(detail::one_dim("trivial", {1}));
    return cat;
  }
  throw Error("unsupported catalog entry '" + name + "'");
}

/// Full consistency check: homomorphisms, sum of squared complex dims, and
/// orthogonality of characters.
inline RepReport verify_catalog(const IrrepCatalog& cat) {
  RepReport rep;
  const auto& G = cat.action;
  if (!G.enumerated) {
    rep.problems.push_back("group is generator-only; nothing to enumerate");
    return rep;
  }
  long total = 0;
  for (const auto& r : cat.irreps) {
    auto one = verify_irrep(r, G);
    for (auto& p : one.problems) rep.problems.push_back(r.label + ": " + p);
    long c = r.complex_dim();
    total += r.complex_type() ? 2 * c * c : c * c;
    if (G.order() % r.complex_dim() != 0) rep.problems.push_back(r.label + ": degree does not divide |G|");
  }
  if (total != static_cast<long>(G.order()))
    rep.problems.push_back("sum of squared degrees " + std::to_string(total) + " != |G| = " +
                           std::to_string(G.order()));
  std::vector<std::vector<BigFloat>> chars;
  for (const auto& r : cat.irreps) {
    if (r.approximate) chars.push_back(character<BigFloat>(r, G));
    else {
      std::vector<BigFloat> c;
      for (const auto& v : character<AlgNum>(r, G)) c.push_back(v.to_float<BigFloat>());
      chars.push_back(std::move(c));
    }
  }
  for (std::size_t i = 0; i < chars.size(); ++i)
    for (std::size_t j = i; j < chars.size(); ++j) {
      BigFloat s = 0;
      for (std::size_t g = 0; g < G.order(); ++g) s += chars[i][g] * chars[j][g];
      s /= BigFloat(G.order());
      BigFloat expect = i != j ? 0 : (cat.irreps[i].complex_type() ? 2 : 1);
      if (!Field<BigFloat>::is_zero(s - expect))
        rep.problems.push_back("character inner product (" + cat.irreps[i].label + "," + cat.irreps[j].label +
                               ") = " + s.str(8));
    }
  return rep;
}

}  // namespace symsos
