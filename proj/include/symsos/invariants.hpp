// Hironaka presentations (primary theta, secondary eta) and rewriting of
// invariant polynomials in them by graded linear algebra.
#pragma once

#include <functional>
#include <map>
#include <set>

#include "symsos/catalog.hpp"
#include "symsos/polynomial.hpp"

namespace symsos {

struct InvariantPresentation {
  int nvars = 0;
  std::vector<std::string> variables;   // names of x
  std::vector<Polynomial> theta;
  std::vector<std::string> theta_names;
  std::vector<Polynomial> eta;          // eta[0] == 1
  std::vector<std::string> eta_names;
  std::vector<Polynomial> syzygies;     // over (theta..., eta...) symbols
  std::vector<Matrix<Rational>> generators;  // group generators for invariance checks

  int ntheta() const { return static_cast<int>(theta.size()); }
  int neta() const { return static_cast<int>(eta.size()); }
  int theta_degree(int i) const { return theta[i].degree().value(); }
  int eta_degree(int j) const { return eta[j].degree().value(); }
  /// theta names followed by eta names
  std::vector<std::string> symbol_names() const {
    auto s = theta_names;
    s.insert(s.end(), eta_names.begin(), eta_names.end());
    return s;
  }
  int weighted_degree(const Monomial& theta_exponents) const {
    int d = 0;
    for (int i = 0; i < ntheta(); ++i) d += theta_exponents[i] * theta_degree(i);
    return d;
  }
};

/// sum_j eta_j * parts[j](theta)
struct InvariantPoly {
  std::vector<Polynomial> parts;  // one per eta, each over ntheta variables

  static InvariantPoly zero(const InvariantPresentation& pres) {
    InvariantPoly f;
    for (int j = 0; j < pres.neta(); ++j) f.parts.emplace_back(pres.ntheta());
    return f;
  }
  static InvariantPoly constant(const InvariantPresentation& pres, const Rational& c) {
    InvariantPoly f = zero(pres);
    f.parts[0] = Polynomial::constant(pres.ntheta(), c);
    return f;
  }
  bool is_zero() const {
    for (const auto& p : parts)
      if (!p.is_zero()) return false;
    return true;
  }
  friend bool operator==(const InvariantPoly& a, const InvariantPoly& b) { return a.parts == b.parts; }
  friend InvariantPoly operator+(InvariantPoly a, const InvariantPoly& b) {
    for (std::size_t j = 0; j < a.parts.size(); ++j) a.parts[j] += b.parts.at(j);
    return a;
  }
  friend InvariantPoly operator-(InvariantPoly a, const InvariantPoly& b) {
    for (std::size_t j = 0; j < a.parts.size(); ++j) a.parts[j] -= b.parts.at(j);
    return a;
  }
  InvariantPoly scaled(const Rational& s) const {
    InvariantPoly r = *this;
    for (auto& p : r.parts) p = p.scaled(s);
    return r;
  }
};

inline bool is_invariant(const Polynomial& p, const std::vector<Matrix<Rational>>& generators) {
  for (const auto& g : generators)
    if (substitute_linear(p, g) != p) return false;
  return true;
}

inline Polynomial expand_theta_monomial(const Monomial& a, const InvariantPresentation& pres,
                                        std::map<std::pair<int, int>, Polynomial>* cache = nullptr) {
  Polynomial out = Polynomial::constant(pres.nvars, 1);
  for (int i = 0; i < pres.ntheta(); ++i) {
    if (a[i] == 0) continue;
    if (cache) {
      auto key = std::make_pair(i, a[i]);
      auto it = cache->find(key);
      if (it == cache->end()) it = cache->emplace(key, pres.theta[i].pow(a[i])).first;
      out *= it->second;
    } else {
      out *= pres.theta[i].pow(a[i]);
    }
  }
  return out;
}

/// Full expansion in the original variables.
inline Polynomial expand_invariants(const InvariantPoly& f, const InvariantPresentation& pres) {
  if (static_cast<int>(f.parts.size()) != pres.neta()) throw Error("invariant polynomial has wrong eta count");
  Polynomial out(pres.nvars);
  std::map<std::pair<int, int>, Polynomial> cache;
  for (int j = 0; j < pres.neta(); ++j) {
    if (f.parts[j].nvars() != pres.ntheta()) throw Error("symbol mismatch: wrong theta count");
    Polynomial part(pres.nvars);
    for (const auto& [a, c] : f.parts[j].terms()) part += expand_theta_monomial(a, pres, &cache).scaled(c);
    out += part * pres.eta[j];
  }
  return out;
}

/// Expansion of a polynomial in the abstract symbols (theta..., eta...).
inline Polynomial expand_symbols(const Polynomial& s, const InvariantPresentation& pres) {
  if (s.nvars() != pres.ntheta() + pres.neta()) throw Error("symbol mismatch");
  std::vector<Polynomial> images = pres.theta;
  images.insert(images.end(), pres.eta.begin(), pres.eta.end());
  Polynomial out(pres.nvars);
  for (const auto& [m, c] : s.terms()) {
    Polynomial t = Polynomial::constant(pres.nvars, c);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i]) t *= images[i].pow(m[i]);
    out += t;
  }
  return out;
}

inline int weighted_degree(const InvariantPoly& f, const InvariantPresentation& pres) {
  int d = 0;
  bool any = false;
  for (int j = 0; j < pres.neta(); ++j)
    for (const auto& [a, c] : f.parts[j].terms()) {
      d = std::max(d, pres.weighted_degree(a) + pres.eta_degree(j));
      any = true;
    }
  return any ? d : 0;
}

/// theta-monomials of weighted degree exactly k, ascending order.
inline std::vector<Monomial> theta_monomials_of_degree(const InvariantPresentation& pres, int k) {
  std::vector<Monomial> out;
  if (k < 0) return out;
  Monomial cur(pres.ntheta(), 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == pres.ntheta()) {
      if (left == 0) out.push_back(cur);
      return;
    }
    int w = pres.theta_degree(i);
    for (int e = 0; e * w <= left; ++e) {
      cur[i] = e;
      rec(i + 1, left - e * w);
    }
    cur[i] = 0;
  };
  rec(0, k);
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  });
  return out;
}

/// Unique eta-linear representation, solved degree by degree.
inline InvariantPoly rewrite_in_invariants(const Polynomial& p, const InvariantPresentation& pres,
                                           bool check_invariance = true) {
  if (p.nvars() != pres.nvars) throw DimensionError("polynomial and presentation have different nvars");
  if (check_invariance && !is_invariant(p, pres.generators)) throw Error("polynomial is not invariant");
  InvariantPoly out = InvariantPoly::zero(pres);
  if (p.is_zero()) return out;
  std::map<std::pair<int, int>, Polynomial> cache;
  const int top = p.degree().value();
  for (int k = 0; k <= top; ++k) {
    Polynomial pk = p.homogeneous_part(k);
    if (pk.is_zero()) continue;
    // columns: eta_j * theta^a with weighted degree k
    std::vector<std::pair<int, Monomial>> cols;
    std::vector<Polynomial> expansions;
    for (int j = 0; j < pres.neta(); ++j)
      for (const auto& a : theta_monomials_of_degree(pres, k - pres.eta_degree(j))) {
        cols.emplace_back(j, a);
        expansions.push_back(expand_theta_monomial(a, pres, &cache) * pres.eta[j]);
      }
    std::map<Monomial, std::size_t, GradedLex> rows;
    for (const auto& [m, c] : pk.terms()) rows.emplace(m, 0);
    for (const auto& e : expansions)
      for (const auto& [m, c] : e.terms()) rows.emplace(m, 0);
    std::size_t r = 0;
    for (auto& [m, idx] : rows) idx = r++;
    Matrix<Rational> A(rows.size(), cols.size());
    Vector<Rational> rhs(rows.size(), Rational(0));
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (const auto& [m, v] : expansions[c].terms()) A(rows.at(m), c) = v;
    for (const auto& [m, v] : pk.terms()) rhs[rows.at(m)] = v;
    bool unique = true;
    auto sol = solve_linear(A, rhs, &unique);
    if (!sol) throw Error("rewrite failed in degree " + std::to_string(k) + ": presentation incomplete for this input");
    if (!unique) throw Error("rewrite not unique in degree " + std::to_string(k) + ": malformed presentation");
    for (std::size_t c = 0; c < cols.size(); ++c) out.parts[cols[c].first].add_term(cols[c].second, (*sol)[c]);
  }
  return out;
}

/// Checks invariance of theta and eta and that every syzygy expands to zero.
inline RepReport verify_presentation(const InvariantPresentation& pres) {
  RepReport rep;
  if (pres.eta.empty() || pres.eta[0] != Polynomial::constant(pres.nvars, 1))
    rep.problems.push_back("eta_1 must be the constant 1");
  for (int i = 0; i < pres.ntheta(); ++i) {
    if (!is_invariant(pres.theta[i], pres.generators)) rep.problems.push_back(pres.theta_names[i] + " is not invariant");
    if (pres.theta[i].is_zero() || !pres.theta[i].is_homogeneous())
      rep.problems.push_back(pres.theta_names[i] + " must be homogeneous and nonzero");
  }
  for (int j = 0; j < pres.neta(); ++j) {
    if (!is_invariant(pres.eta[j], pres.generators)) rep.problems.push_back(pres.eta_names[j] + " is not invariant");
    if (pres.eta[j].is_zero() || !pres.eta[j].is_homogeneous())
      rep.problems.push_back(pres.eta_names[j] + " must be homogeneous and nonzero");
  }
  for (std::size_t s = 0; s < pres.syzygies.size(); ++s)
    if (!expand_symbols(pres.syzygies[s], pres).is_zero())
      rep.problems.push_back("syzygy " + std::to_string(s + 1) + " does not vanish");
  return rep;
}

// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<std::string> numbered(const std::string& stem, int k) {
  std::vector<std::string> v;
  for (int i = 1; i <= k; ++i) v.push_back(stem + std::to_string(i));
  return v;
}

inline Polynomial elementary_symmetric(int n, int k) {
  Polynomial e(n);
  std::vector<int> pick(n, 0);
  std::fill(pick.end() - k, pick.end(), 1);
  do {
    Monomial m(pick.begin(), pick.end());
    e.add_term(m, 1);
  } while (std::next_permutation(pick.begin(), pick.end()));
  return e;
}

}  // namespace detail

/// Built-in presentations for the catalog groups that have one.
inline InvariantPresentation presentation(const IrrepCatalog& cat) {
  InvariantPresentation pres;
  const int n = cat.action.n;
  pres.nvars = n;
  pres.variables = default_variables(n);
  pres.generators = cat.action.generators;
  pres.eta = {Polynomial::constant(n, 1)};
  pres.eta_names = {"eta1"};
  auto parse = [&](const std::string& s) { return parse_polynomial(s, pres.variables); };
  const std::string kind = cat.name.substr(0, cat.name.find(':'));
  if (kind == "symmetric") {
    for (int k = 1; k <= n; ++k) pres.theta.push_back(detail::elementary_symmetric(n, k));
    pres.theta_names = detail::numbered("e", n);
  } else if (kind == "c2n") {
    for (int i = 0; i < n; ++i) {
      Monomial m(n, 0);
      m[i] = 2;
      pres.theta.push_back(Polynomial::monomial(m));
    }
    pres.theta_names = detail::numbered("theta", n);
  } else if (kind == "trivial") {
    for (int i = 0; i < n; ++i) pres.theta.push_back(Polynomial::variable(n, i));
    pres.theta_names = detail::numbered("theta", n);
  } else if ((cat.name == "dihedral:4" || cat.name == "cyclic:4") && cat.variant == "planar") {
    pres.theta = {parse("x^2 + y^2"), parse("x^2*y^2")};
    pres.theta_names = {"theta1", "theta2"};
    if (cat.name == "cyclic:4") {
      pres.eta.push_back(parse("x*y*(x^2 - y^2)"));
      pres.eta_names.push_back("eta2");
      pres.syzygies.push_back(
          parse_polynomial("eta2^2 + 4*theta2^2 - theta1^2*theta2", {"theta1", "theta2", "eta1", "eta2"}));
    }
  } else {
    throw Error("group '" + cat.name + "' is not in the presentation catalog; supply a presentation file");
  }
  auto rep = verify_presentation(pres);
  if (!rep.ok()) throw Error("built-in presentation failed verification: " + rep.problems[0]);
  return pres;
}

inline std::string render_invariant(const InvariantPoly& f, const InvariantPresentation& pres) {
  std::string out;
  for (int j = 0; j < pres.neta(); ++j) {
    if (f.parts[j].is_zero()) continue;
    std::string body = render_polynomial(f.parts[j], pres.theta_names);
    std::string piece = j == 0 ? body : (f.parts[j].size() == 1 && f.parts[j].coefficient(Monomial(pres.ntheta(), 0)) == 1
                                             ? pres.eta_names[j]
                                             : pres.eta_names[j] + "*(" + body + ")");
    if (!out.empty()) out += " + ";
    out += piece;
  }
  return out.empty() ? "0" : out;
}

/// Parses text over theta and eta names; eta must appear linearly.
inline InvariantPoly parse_invariant(const std::string& text, const InvariantPresentation& pres) {
  Polynomial s = parse_polynomial(text, pres.symbol_names());
  InvariantPoly f = InvariantPoly::zero(pres);
  const int k = pres.ntheta();
  for (const auto& [m, c] : s.terms()) {
    int which = 0, count = 0;
    for (int j = 0; j < pres.neta(); ++j)
      if (m[k + j] > 0) {
        count += m[k + j];
        which = j;
      }
    if (count > 1) throw Error("secondary invariants must appear linearly");
    Monomial a(m.begin(), m.begin() + k);
    f.parts[which].add_term(a, c);
  }
  return f;
}

}  // namespace symsos
