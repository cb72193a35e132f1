// Molien series per irrep and isotypic dimension tables.
#pragma once

#include <iomanip>
#include <map>
#include <sstream>

#include "symsos/catalog.hpp"

namespace symsos {

/// Univariate polynomial in xi with rational coefficients, constant first.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }
  static UniPoly constant(const Rational& v) { return UniPoly({v}); }
  static UniPoly monomial(int k, const Rational& v = 1) {
    std::vector<Rational> c(k + 1, Rational(0));
    c[k] = v;
    return UniPoly(std::move(c));
  }

  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  Rational operator[](std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
  Rational lead() const { return c_.empty() ? Rational(0) : c_.back(); }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return UniPoly(std::move(c));
  }
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + b.scaled(-1); }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly();
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return UniPoly(std::move(c));
  }
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
  UniPoly scaled(const Rational& s) const {
    std::vector<Rational> c = c_;
    for (auto& v : c) v *= s;
    return UniPoly(std::move(c));
  }

  /// Quotient and remainder.
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const {
    if (d.is_zero()) throw Error("polynomial division by zero");
    std::vector<Rational> r = c_;
    int dq = degree() - d.degree();
    if (dq < 0) return {UniPoly(), *this};
    std::vector<Rational> q(dq + 1, Rational(0));
    for (int k = dq; k >= 0; --k) {
      Rational f = r[k + d.degree()] / d.lead();
      q[k] = f;
      if (f == 0) continue;
      for (int j = 0; j <= d.degree(); ++j) r[k + j] -= f * d.c_[j];
    }
    r.resize(d.degree() > 0 ? d.degree() : 0);
    return {UniPoly(std::move(q)), UniPoly(std::move(r))};
  }

  std::string to_string(const std::string& var = "xi") const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      const Rational& v = c_[k];
      if (v == 0) continue;
      bool neg = v < 0;
      Rational a = neg ? Rational(-v) : v;
      std::string body;
      std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
      if (mono.empty()) body = a.get_str();
      else if (a == 1) body = mono;
      else body = a.get_str() + "*" + mono;
      if (out.empty()) out = neg ? "-" + body : body;
      else out += (neg ? " - " : " + ") + body;
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

inline UniPoly poly_gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a.scaled(Rational(1) / a.lead());
}

/// Normalizes so the constant term (or the lead, if the constant is zero) is 1.
inline UniPoly normalize_unit(const UniPoly& p) {
  if (p.is_zero()) return p;
  Rational s = p[0] != 0 ? p[0] : p.lead();
  return p.scaled(Rational(1) / s);
}

struct RationalFunction {
  UniPoly num, den;

  /// Cancels common factors; denominator constant term 1 when nonzero.
  RationalFunction reduced() const {
    UniPoly g = poly_gcd(num, den);
    RationalFunction r{num.divmod(g).first, den.divmod(g).first};
    Rational s = r.den[0] != 0 ? r.den[0] : r.den.lead();
    return {r.num.scaled(Rational(1) / s), r.den.scaled(Rational(1) / s)};
  }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num * b.den == b.num * a.den;
  }
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction{a.num * b.den + b.num * a.den, a.den * b.den}.reduced();
  }
  RationalFunction scaled(const Rational& s) const { return {num.scaled(s), den}; }
  std::string to_string() const { return "(" + num.to_string() + ")/(" + den.to_string() + ")"; }
};

/// det(I - xi*M) from the characteristic polynomial (Faddeev-LeVerrier).
inline UniPoly det_one_minus(const Matrix<Rational>& M) {
  const std::size_t n = M.rows();
  // char poly t^n + c1 t^{n-1} + ... + cn; det(I - xi M) = 1 + c1 xi + ... + cn xi^n
  std::vector<Rational> c(n + 1, Rational(0));
  c[0] = 1;
  Matrix<Rational> Mk(n, n);  // M_0 = 0
  Matrix<Rational> I = Matrix<Rational>::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    Mk = M * Mk + I.scaled(c[k - 1]);
    Matrix<Rational> AM = M * Mk;
    c[k] = -trace(AM) / Rational(static_cast<long>(k));
  }
  return UniPoly(std::move(c));
}

/// Power-series coefficients c_0..c_dmax of num/den.
inline std::vector<Rational> taylor_coefficients(const RationalFunction& f, int dmax) {
  if (f.den[0] == 0) throw Error("denominator has zero constant term");
  std::vector<Rational> c(dmax + 1, Rational(0));
  Rational inv = Rational(1) / f.den[0];
  for (int k = 0; k <= dmax; ++k) {
    Rational s = f.num[k];
    for (int j = 1; j <= std::min(k, f.den.degree()); ++j) s -= f.den[j] * c[k - j];
    c[k] = s * inv;
  }
  return c;
}

inline std::vector<Integer> series_coefficients(const RationalFunction& f, int dmax) {
  std::vector<Integer> out;
  for (const auto& v : taylor_coefficients(f, dmax)) {
    if (!is_integer(v)) throw Error("series coefficient " + v.get_str() + " is not an integer");
    out.push_back(v.get_num());
  }
  return out;
}

/// psi(xi) = (1/|G|) sum_g chi(g) / det(I - xi theta(g)).
inline RationalFunction molien_series(const GroupAction& G, const RealIrrep& irrep) {
  G.require_elements();
  const std::size_t order = G.elements.size();
  // group elements by determinant polynomial
  std::map<std::vector<Rational>, std::pair<UniPoly, std::vector<std::size_t>>> classes;
  auto key_of = [](const UniPoly& p) { return p.coeffs(); };
  for (std::size_t g = 0; g < order; ++g) {
    UniPoly d;
    if (G.signed_permutation()) {
      // cycles of length L with sign product s give (1 - s xi^L)
      const auto& p = G.perms[g];
      std::vector<bool> seen(p.size(), false);
      d = UniPoly::constant(1);
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        int len = 0, sgn = 1;
        std::size_t j = i;
        while (!seen[j]) {
          seen[j] = true;
          ++len;
          if (p[j] < 0) sgn = -sgn;
          j = std::abs(p[j]) - 1;
        }
        d = d * (UniPoly::constant(1) - UniPoly::monomial(len, sgn));
      }
    } else {
      d = det_one_minus(G.elements[g]);
    }
    auto& slot = classes[key_of(d)];
    slot.first = d;
    slot.second.push_back(g);
  }
  UniPoly D = UniPoly::constant(1);
  for (const auto& [k, v] : classes) {
    UniPoly g = poly_gcd(D, v.first);
    D = normalize_unit(D * v.first.divmod(g).first);
  }
  const int deg = D.degree();
  std::vector<Rational> num(deg + 1, Rational(0));
  if (!irrep.approximate) {
    auto chi = character<AlgNum>(irrep, G);
    std::vector<AlgNum> acc(deg + 1);
    for (const auto& [k, v] : classes) {
      AlgNum sum;
      for (std::size_t g : v.second) sum += chi[g];
      if (sum.is_zero()) continue;
      UniPoly q = D.divmod(v.first).first;
      for (int i = 0; i <= q.degree(); ++i) acc[i] += sum * AlgNum(q[i]);
    }
    for (int i = 0; i <= deg; ++i) {
      if (!acc[i].is_rational()) throw Error("Molien numerator is not rational");
      num[i] = acc[i].to_rational() / Rational(static_cast<long>(order));
    }
  } else {
    auto chi = character<BigFloat>(irrep, G);
    std::vector<BigFloat> acc(deg + 1, BigFloat(0));
    for (const auto& [k, v] : classes) {
      BigFloat sum = 0;
      for (std::size_t g : v.second) sum += chi[g];
      UniPoly q = D.divmod(v.first).first;
      for (int i = 0; i <= q.degree(); ++i) acc[i] += sum * Field<Rational>::to_big(q[i]);
    }
    for (int i = 0; i <= deg; ++i) {
      // coefficients of |G| * numerator are integers
      BigFloat r = boost::multiprecision::round(acc[i]);
      if (boost::multiprecision::abs(acc[i] - r) > BigFloat("1e-20")) throw Error("Molien numerator did not round");
      num[i] = Rational(Integer(static_cast<long>(r.convert_to<long long>())), Integer(static_cast<long>(order)));
      num[i].canonicalize();
    }
  }
  return RationalFunction{UniPoly(std::move(num)), D}.reduced();
}

/// Weight of an irrep's Molien series in the Hilbert series identity.
inline Rational hilbert_weight(const RealIrrep& r) {
  return r.complex_type() ? Rational(r.dim / 2) : Rational(r.dim);
}

struct HilbertReport {
  bool holds = false;
  RationalFunction sum;
  RationalFunction expected;
};

/// Checks sum_i w_i psi_i = 1/(1 - xi)^n exactly.
inline HilbertReport hilbert_consistency(const IrrepCatalog& cat) {
  HilbertReport rep;
  rep.sum = {UniPoly(), UniPoly::constant(1)};
  for (const auto& r : cat.irreps) rep.sum = rep.sum + molien_series(cat.action, r).scaled(hilbert_weight(r));
  UniPoly d = UniPoly::constant(1);
  for (int i = 0; i < cat.action.n; ++i) d = d * UniPoly({Rational(1), Rational(-1)});
  rep.expected = {UniPoly::constant(1), d};
  rep.holds = rep.sum == rep.expected;
  return rep;
}

struct MolienTable {
  std::vector<std::string> labels;
  std::vector<std::vector<Integer>> rows;  // per irrep, degrees 0..dmax
  std::vector<Integer> total;              // sum of w_i * rows
};

inline MolienTable molien_table(const IrrepCatalog& cat, int dmax) {
  MolienTable t;
  t.total.assign(dmax + 1, Integer(0));
  for (const auto& r : cat.irreps) {
    auto row = series_coefficients(molien_series(cat.action, r), dmax);
    Rational w = hilbert_weight(r);
    for (int d = 0; d <= dmax; ++d) {
      Rational v = w * Rational(row[d]);
      t.total[d] += v.get_num() / v.get_den();
    }
    t.labels.push_back(r.label);
    t.rows.push_back(std::move(row));
  }
  return t;
}

/// Rows = irreps, columns = degrees, last row the total dimension.
inline std::string render_molien_table(const MolienTable& t) {
  std::size_t lw = 5;
  for (const auto& l : t.labels) lw = std::max(lw, l.size());
  std::size_t cw = 3;
  for (const auto& v : t.total) cw = std::max(cw, v.get_str().size() + 1);
  std::ostringstream os;
  os << std::left << std::setw(static_cast<int>(lw)) << "d=" << " |" << std::right;
  for (std::size_t d = 0; d < t.total.size(); ++d) os << std::setw(static_cast<int>(cw)) << d;
  os << "\n" << std::string(lw + 2 + cw * t.total.size(), '-') << "\n";
  auto row = [&](const std::string& label, const std::vector<Integer>& vals) {
    os << std::left << std::setw(static_cast<int>(lw)) << label << " |" << std::right;
    for (const auto& v : vals) os << std::setw(static_cast<int>(cw)) << v.get_str();
    os << "\n";
  };
  for (std::size_t i = 0; i < t.rows.size(); ++i) row(t.labels[i], t.rows[i]);
  os << std::string(lw + 2 + cw * t.total.size(), '-') << "\n";
  row("Total", t.total);
  return os.str();
}

/// Gram block census for c2n-invariant forms of degree 2*half: one entry per
/// irrep type r, block size = Molien coefficient at degree half, count = C(n, r).
struct CensusEntry {
  int type = 0;
  Integer block_size;
  Integer count;
};

struct Census {
  int n = 0, half_degree = 0;
  Integer unreduced;  // monomials of degree half
  std::vector<CensusEntry> entries;
};

inline Census even_form_census(int n, int half_degree) {
  IrrepCatalog cat = catalog_c2n(n);
  Census c;
  c.n = n;
  c.half_degree = half_degree;
  Integer binom = 1;  // C(n, r)
  std::vector<bool> seen(n + 1, false);
  for (const auto& irrep : cat.irreps) {
    int r = c2n_type(irrep);
    if (seen[r]) continue;
    seen[r] = true;
    auto coeffs = series_coefficients(molien_series(cat.action, irrep), half_degree);
    mpz_bin_uiui(binom.get_mpz_t(), n, r);
    if (coeffs[half_degree] != 0) c.entries.push_back({r, coeffs[half_degree], binom});
  }
  std::sort(c.entries.begin(), c.entries.end(), [](const auto& a, const auto& b) { return a.type < b.type; });
  mpz_bin_uiui(c.unreduced.get_mpz_t(), n + half_degree - 1, half_degree);
  return c;
}

}  // namespace symsos
