// Module bases of equivariants, the Pi matrices (b_k . b_l rewritten in the
// invariants) and per-row monomial envelopes.
#pragma once

#include <cmath>

#include "symsos/invariants.hpp"

namespace symsos {

using PolyVector = std::vector<AlgPolynomial>;

struct EquivariantBasis {
  int irrep = 0;
  std::string label;
  int dim = 1;
  bool complex_type = false;
  bool complete = true;  // false when generators were only searched up to a degree cap
  std::vector<PolyVector> vectors;
  int rank() const { return static_cast<int>(vectors.size()); }
};

struct PiMatrix {
  int irrep = 0;
  std::string label;
  std::vector<std::vector<InvariantPoly>> entries;
  int size() const { return static_cast<int>(entries.size()); }
};

/// Per-row theta-monomials.
using Envelope = std::vector<std::vector<Monomial>>;

inline int vector_degree(const PolyVector& b) {
  int d = 0;
  for (const auto& c : b)
    if (!c.is_zero()) d = std::max(d, c.degree().value());
  return d;
}

inline RepReport verify_equivariance(const EquivariantBasis& basis, const IrrepCatalog& cat) {
  RepReport rep;
  const auto& irrep = cat.irreps.at(basis.irrep);
  if (irrep.approximate) {
    rep.problems.push_back("irrep '" + irrep.label + "' has no exact images");
    return rep;
  }
  const auto& gens = cat.action.generators;
  for (int v = 0; v < basis.rank(); ++v) {
    const auto& b = basis.vectors[v];
    if (static_cast<int>(b.size()) != irrep.dim) {
      rep.problems.push_back("vector " + std::to_string(v + 1) + " has wrong length");
      continue;
    }
    for (std::size_t g = 0; g < gens.size(); ++g) {
      for (int j = 0; j < irrep.dim; ++j) {
        AlgPolynomial lhs = substitute_linear(b[j], gens[g]);
        AlgPolynomial rhs(cat.action.n);
        for (int m = 0; m < irrep.dim; ++m)
          if (!irrep.gens[g](j, m).is_zero()) rhs += b[m].scaled(irrep.gens[g](j, m));
        if (lhs != rhs) {
          rep.problems.push_back("vector " + std::to_string(v + 1) + " fails equivariance for generator " +
                                 std::to_string(g + 1));
          break;
        }
      }
    }
  }
  return rep;
}

namespace detail {

inline PolyVector alg_vector(const std::vector<std::string>& comps, const std::vector<std::string>& vars) {
  PolyVector v;
  for (const auto& c : comps) v.push_back(parse_alg_polynomial(c, vars));
  return v;
}

/// Hard-coded module bases; empty optional when the group is not covered here.
inline std::optional<std::vector<PolyVector>> catalog_equivariants(const IrrepCatalog& cat, int i) {
  const auto& vars = default_variables(cat.action.n);
  const auto& label = cat.irreps[i].label;
  auto one = [&](const std::string& s) { return std::vector<PolyVector>{alg_vector({s}, vars)}; };
  if (cat.name == "dihedral:4" && cat.variant == "planar") {
    if (label == "A2") return one("x*y*(x^2 - y^2)");
    if (label == "B1") return one("x*y");
    if (label == "B2") return one("x^2 - y^2");
    if (label == "E1") return std::vector<PolyVector>{alg_vector({"x", "y"}, vars), alg_vector({"x^3", "y^3"}, vars)};
  }
  if (cat.name == "cyclic:4" && cat.variant == "planar") {
    if (label == "sign") return std::vector<PolyVector>{alg_vector({"x*y"}, vars), alg_vector({"x^2 - y^2"}, vars)};
    if (label == "rot_1") return std::vector<PolyVector>{alg_vector({"x", "y"}, vars), alg_vector({"x^3", "y^3"}, vars)};
  }
  if (cat.name.rfind("c2n:", 0) == 0) {
    Monomial m(cat.action.n, 0);
    for (int k = 0; k < cat.action.n; ++k) m[k] = label[4 + k] == '1' ? 1 : 0;
    return std::vector<PolyVector>{{AlgPolynomial::monomial(m)}};
  }
  if (cat.name == "symmetric:3") {
    if (i == 1) return one("(x - y)*(x - z)*(y - z)");
    if (i == 2)
      return std::vector<PolyVector>{
          alg_vector({"(2*x - y - z)/2*sqrt(2)", "(y - z)/2*sqrt(6)"}, vars),
          alg_vector({"(2*y*z - z*x - x*y)/2*sqrt(2)", "(z*x - x*y)/2*sqrt(6)"}, vars)};
  }
  return std::nullopt;
}

inline std::vector<AlgNum> flatten(const PolyVector& b, const std::vector<Monomial>& monos, int n) {
  std::vector<AlgNum> out(b.size() * monos.size(), AlgNum(0));
  std::map<Monomial, std::size_t> where;
  for (std::size_t m = 0; m < monos.size(); ++m) where[monos[m]] = m;
  for (std::size_t j = 0; j < b.size(); ++j)
    for (const auto& [mono, c] : b[j].terms()) out[j * monos.size() + where.at(mono)] = c;
  return out;
}

inline PolyVector unflatten(const std::vector<AlgNum>& v, const std::vector<Monomial>& monos, int dim, int n) {
  PolyVector b(dim, AlgPolynomial(n));
  for (int j = 0; j < dim; ++j)
    for (std::size_t m = 0; m < monos.size(); ++m) {
      const AlgNum& c = v[j * monos.size() + m];
      if (!c.is_zero()) b[j].add_term(monos[m], c);
    }
  return b;
}

/// Degree-k equivariants: nullspace of b(g x) - theta_i(g) b(x) over the generators.
inline Matrix<AlgNum> equivariants_of_degree(const IrrepCatalog& cat, int i, int k) {
  const auto& irrep = cat.irreps[i];
  const int n = cat.action.n, dim = irrep.dim;
  auto monos = monomials_of_degree(n, k);
  const std::size_t M = monos.size(), N = dim * M;
  std::map<Monomial, std::size_t> where;
  for (std::size_t m = 0; m < M; ++m) where[monos[m]] = m;
  std::vector<std::vector<AlgNum>> rows;
  for (std::size_t g = 0; g < cat.action.generators.size(); ++g) {
    const auto& P = cat.action.generators[g];
    const auto& Y = irrep.gens[g];
    // column c = (j, m): coefficient of monomial m in component j
    std::vector<std::vector<AlgNum>> block(N, std::vector<AlgNum>(N, AlgNum(0)));
    for (int j = 0; j < dim; ++j)
      for (std::size_t m = 0; m < M; ++m) {
        auto img = substitute_linear(AlgPolynomial::monomial(monos[m]), P);
        for (const auto& [mono, c] : img.terms()) block[j * M + where.at(mono)][j * M + m] += c;
        for (int r = 0; r < dim; ++r)
          if (!Y(r, j).is_zero()) block[r * M + m][j * M + m] -= Y(r, j);
      }
    for (auto& row : block) {
      bool nz = false;
      for (const auto& v : row)
        if (!v.is_zero()) nz = true;
      if (nz) rows.push_back(std::move(row));
    }
  }
  Matrix<AlgNum> A(rows.size(), N);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < N; ++c) A(r, c) = rows[r][c];
  auto null = nullspace(A);
  Matrix<AlgNum> basis(null.size(), N);
  for (std::size_t r = 0; r < null.size(); ++r)
    for (std::size_t c = 0; c < N; ++c) basis(r, c) = null[r][c];
  if (basis.rows() == 0) return basis;
  return row_reduce(basis).reduced;  // component 1 leads, so its part is rational
}

/// Lowest degree where the Specht module of partition p occurs in R[x].
inline int partition_first_degree(const std::string& label) {
  int row = 0, d = 0, cur = 0;
  for (char ch : label) {
    if (std::isdigit(static_cast<unsigned char>(ch))) cur = cur * 10 + (ch - '0');
    else if (ch == ',' || ch == ']') {
      d += row * cur;
      ++row;
      cur = 0;
    }
  }
  return d;
}

/// Module generators degree by degree, keeping only what R[theta]-multiples
/// of earlier generators do not already span.
inline std::vector<PolyVector> solve_equivariants(const IrrepCatalog& cat, const InvariantPresentation& pres,
                                                  int i, int max_degree, bool& complete) {
  const auto& irrep = cat.irreps[i];
  const int n = cat.action.n;
  std::vector<PolyVector> gens;
  std::vector<int> gdeg;
  std::vector<AlgPolynomial> theta;
  for (const auto& t : pres.theta) theta.push_back(to_alg(t));
  complete = false;
  for (int k = 0; k <= max_degree; ++k) {
    auto E = equivariants_of_degree(cat, i, k);
    if (E.rows() == 0) continue;
    auto monos = monomials_of_degree(n, k);
    std::vector<std::vector<AlgNum>> span;
    for (std::size_t v = 0; v < gens.size(); ++v)
      for (const auto& a : theta_monomials_of_degree(pres, k - gdeg[v])) {
        AlgPolynomial t = AlgPolynomial::constant(n, AlgNum(1));
        for (int q = 0; q < pres.ntheta(); ++q)
          if (a[q]) t *= theta[q].pow(a[q]);
        PolyVector prod;
        for (const auto& c : gens[v]) prod.push_back(c * t);
        span.push_back(flatten(prod, monos, n));
      }
    auto rank_of = [&](const std::vector<std::vector<AlgNum>>& rows) {
      if (rows.empty()) return std::size_t(0);
      Matrix<AlgNum> m(rows.size(), rows[0].size());
      for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c) m(r, c) = rows[r][c];
      return rank(m);
    };
    std::size_t have = rank_of(span);
    for (std::size_t r = 0; r < E.rows() && have < E.rows(); ++r) {
      std::vector<AlgNum> row(E.cols());
      for (std::size_t c = 0; c < E.cols(); ++c) row[c] = E(r, c);
      span.push_back(row);
      std::size_t now = rank_of(span);
      if (now > have) {
        have = now;
        gens.push_back(unflatten(row, monos, irrep.dim, n));
        gdeg.push_back(k);
      } else {
        span.pop_back();
      }
    }
    if (static_cast<int>(gens.size()) == irrep.dim) {
      complete = true;
      break;
    }
  }
  return gens;
}

}  // namespace detail

/// Module basis for irrep i. Symmetric groups other than S3 are solved for;
/// max_degree caps that search (-1: until the rank reaches dim).
inline EquivariantBasis equivariant_basis(const IrrepCatalog& cat, const InvariantPresentation& pres, int i,
                                          int max_degree = -1) {
  if (i < 0 || i >= static_cast<int>(cat.irreps.size())) throw Error("irrep index out of range");
  const auto& irrep = cat.irreps[i];
  EquivariantBasis basis;
  basis.irrep = i;
  basis.label = irrep.label;
  basis.dim = irrep.dim;
  basis.complex_type = irrep.complex_type();
  if (i == 0) {
    for (const auto& e : pres.eta) basis.vectors.push_back({to_alg(e)});
  } else if (auto data = detail::catalog_equivariants(cat, i)) {
    basis.vectors = *data;
  } else if (cat.name.rfind("symmetric:", 0) == 0) {
    int first = detail::partition_first_degree(irrep.label);
    int cap = max_degree;
    if (cap < 0) {
      const int n = cat.action.n;
      if (n > 4) throw Error("equivariants of " + cat.name + " need a degree cap");
      cap = n * (n - 1) / 2;
    }
    if (first <= cap) basis.vectors = detail::solve_equivariants(cat, pres, i, cap, basis.complete);
    else basis.complete = false;
  } else {
    throw Error("group '" + cat.name + "' has no equivariant data; supply a basis file");
  }
  auto rep = verify_equivariance(basis, cat);
  if (!rep.ok()) throw Error("equivariance check failed: " + rep.problems[0]);
  return basis;
}

/// For a complex-type irrep the module over R[theta] also needs J*b, where J
/// is the complex structure commuting with the irrep.
inline EquivariantBasis sos_generators(const EquivariantBasis& basis) {
  if (!basis.complex_type) return basis;
  if (basis.dim != 2) throw Error("complex-type irreps of complex dimension > 1 are not supported");
  EquivariantBasis out = basis;
  for (const auto& b : basis.vectors) out.vectors.push_back({-b[1], b[0]});
  return out;
}

inline Polynomial dot_rational(const PolyVector& a, const PolyVector& b) {
  AlgPolynomial s(a.at(0).nvars());
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b.at(j);
  try {
    return to_rational(s);
  } catch (const Error&) {
    throw Error("equivariant inner product is not rational");
  }
}

inline PiMatrix pi_matrix(const EquivariantBasis& basis, const InvariantPresentation& pres) {
  PiMatrix pi;
  pi.irrep = basis.irrep;
  pi.label = basis.label;
  const int r = basis.rank();
  pi.entries.assign(r, std::vector<InvariantPoly>(r));
  for (int k = 0; k < r; ++k)
    for (int l = k; l < r; ++l) {
      auto e = rewrite_in_invariants(dot_rational(basis.vectors[k], basis.vectors[l]), pres, false);
      pi.entries[k][l] = e;
      pi.entries[l][k] = e;
    }
  return pi;
}

/// Theta-monomials of weighted degree <= budget (exactly budget if exact).
inline std::vector<Monomial> theta_monomials_up_to(const InvariantPresentation& pres, int budget, bool exact) {
  std::vector<Monomial> out;
  for (int d = exact ? budget : 0; d <= budget; ++d) {
    auto part = theta_monomials_of_degree(pres, d);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

/// Row k gets budget floor((target - deg pi_kk)/2); homogeneous mode needs an
/// exact half and keeps only that weighted degree.
inline Envelope monomial_envelope(const InvariantPresentation& pres, const PiMatrix& pi, int target_degree,
                                  bool homogeneous = false) {
  Envelope env(pi.size());
  for (int k = 0; k < pi.size(); ++k) {
    int slack = target_degree - weighted_degree(pi.entries[k][k], pres);
    if (slack < 0) continue;
    if (homogeneous && slack % 2) continue;
    env[k] = theta_monomials_up_to(pres, slack / 2, homogeneous);
  }
  return env;
}

inline std::size_t envelope_size(const Envelope& env) {
  std::size_t s = 0;
  for (const auto& row : env) s += row.size();
  return s;
}

/// Numeric value of an invariant polynomial at the point x.
inline double evaluate_invariant(const InvariantPoly& f, const InvariantPresentation& pres,
                                 const std::vector<double>& x) {
  std::vector<double> th(pres.ntheta()), et(pres.neta());
  auto ev = [&](const Polynomial& p) {
    return p.map_coefficients<double>([](const Rational& c) { return c.get_d(); }).evaluate(x);
  };
  for (int i = 0; i < pres.ntheta(); ++i) th[i] = ev(pres.theta[i]);
  for (int j = 0; j < pres.neta(); ++j) et[j] = ev(pres.eta[j]);
  double s = 0;
  for (int j = 0; j < pres.neta(); ++j)
    s += et[j] * f.parts[j].map_coefficients<double>([](const Rational& c) { return c.get_d(); }).evaluate(th);
  return s;
}

inline Matrix<double> evaluate_pi(const PiMatrix& pi, const InvariantPresentation& pres, const std::vector<double>& x) {
  Matrix<double> m(pi.size(), pi.size());
  for (int k = 0; k < pi.size(); ++k)
    for (int l = 0; l < pi.size(); ++l) m(k, l) = evaluate_invariant(pi.entries[k][l], pres, x);
  return m;
}

}  // namespace symsos
