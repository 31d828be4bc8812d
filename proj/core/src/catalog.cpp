#include "klr/catalog.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace klr {

namespace {

QPolys empty_q(int n) { return QPolys{std::vector<std::vector<Poly>>(n, std::vector<Poly>(n))}; }

void set_pair(QPolys& q, int i, int j, const Poly& p) {
  q.table[i][j] = p;
  q.table[j][i] = p.swap_vars(0, 1);
}

std::vector<std::string> numeric_labels(int ell) {
  std::vector<std::string> labels;
  for (int i = 1; i <= ell; ++i) labels.push_back(std::to_string(i));
  return labels;
}

Poly u_var() { return Poly::variable(0); }
Poly v_var() { return Poly::variable(1); }

bool is_difference_polynomial(const Poly& q) {
  Poly t = Poly::variable(2);
  return q.compose({u_var() + t, v_var() + t}) == q;
}

}  // namespace

AlgebraPtr ambient_A(int ell) {
  if (ell < 1) throw std::invalid_argument("rank must be positive");
  CartanDatum d{numeric_labels(ell), std::vector<std::vector<int>>(ell, std::vector<int>(ell, 0))};
  for (int i = 0; i < ell; ++i) {
    d.form[i][i] = 2;
    if (i + 1 < ell) d.form[i][i + 1] = d.form[i + 1][i] = -1;
  }
  QPolys q = empty_q(ell);
  for (int i = 0; i < ell; ++i)
    for (int j = i + 1; j < ell; ++j) set_pair(q, i, j, j == i + 1 ? u_var() - v_var() : Poly(1));
  return std::make_shared<KlrAlgebra>(d, q);
}

AlgebraPtr ambient_B(int ell) {
  if (ell < 2) throw std::invalid_argument("type B needs rank at least 2");
  CartanDatum d{numeric_labels(ell), std::vector<std::vector<int>>(ell, std::vector<int>(ell, 0))};
  for (int i = 0; i < ell; ++i) {
    d.form[i][i] = i == 0 ? 2 : 4;
    if (i + 1 < ell) d.form[i][i + 1] = d.form[i + 1][i] = -2;
  }
  QPolys q = empty_q(ell);
  for (int i = 0; i < ell; ++i)
    for (int j = i + 1; j < ell; ++j) {
      Poly p(1);
      if (i == 0 && j == 1)
        p = u_var().pow(2) - v_var();
      else if (j == i + 1)
        p = u_var() - v_var();
      set_pair(q, i, j, p);
    }
  return std::make_shared<KlrAlgebra>(d, q);
}

GradedModule one_dim_module(AlgebraPtr alg, const Word& word, int deg2) {
  int n = static_cast<int>(word.size());
  GradedModule m = GradedModule::with_zero_action(std::move(alg), n, {}, {BasisVector{word, deg2}});
  Report rep = check_relations(m);
  if (!rep.ok()) throw std::invalid_argument("no one-dimensional module with zero action on this word: " + rep.issues.front());
  return m;
}

GradedModule simple_module(AlgebraPtr alg, int color) { return one_dim_module(std::move(alg), {color}, 0); }

GradedModule symmetric_affinization(const GradedModule& m, const std::string& var) {
  const KlrAlgebra& alg = *m.algebra();
  std::vector<int> w = m.weight();
  int norm = 0;
  for (int i = 0; i < alg.rank(); ++i) {
    if (w[i] == 0) continue;
    if (norm != 0 && alg.datum().norm(i) != norm)
      throw std::invalid_argument("symmetric affinization needs equal root norms on the support");
    norm = alg.datum().norm(i);
    for (int j = 0; j < alg.rank(); ++j)
      if (w[j] > 0 && !is_difference_polynomial(alg.q().at(i, j)))
        throw std::invalid_argument("parameters are not symmetric on the support");
  }
  if (norm == 0) throw std::invalid_argument("cannot affinize a module of height 0");
  std::vector<RingVariable> vars = m.vars();
  int z = static_cast<int>(vars.size());
  vars.push_back({var, 2 * norm});
  std::vector<PolyMatrix> x;
  for (int k = 0; k < m.height(); ++k) x.push_back(m.x(k) + PolyMatrix::scalar(m.dim(), Poly::variable(z)));
  return GradedModule(m.algebra(), m.height(), vars, m.basis(), x, m.tau());
}

namespace {

// Normal forms in k[x_0..x_{n-1}, z] / (e_1, ..., e_{n-1}, e_n - z) for the
// lex order x_0 > ... > x_{n-1}; z is variable n. The Groebner basis is
// h_{k+1}(x_k, ..., x_{n-1}) for k < n-1 and x_{n-1}^n - (-1)^{n+1} z, with
// pairwise coprime leading monomials x_k^{k+1}.
class NilHeckeQuotient {
 public:
  explicit NilHeckeQuotient(int n) : n_(n) {
    for (int k = 0; k < n; ++k) {
      Poly tail;
      if (k + 1 < n) {
        // x_k^{k+1} = x_k^{k+1} - h_{k+1}(x_k..x_{n-1})
        Poly h = complete_homogeneous(k, k + 1);
        tail = Poly::variable(k, k + 1) - h;
      } else {
        Monomial zm(static_cast<std::size_t>(n) + 1, 0);
        zm[n] = 1;
        tail = Poly::monomial(zm, Scalar(n % 2 == 1 ? 1 : -1));
      }
      rules_.push_back(tail);
    }
  }

  Poly reduce(const Poly& p) {
    Poly out;
    for (const auto& [m, c] : p.terms()) {
      Poly r = reduce_monomial(m);
      r *= c;
      out += r;
    }
    return out;
  }

  std::vector<Monomial> normal_monomials() const {
    std::vector<Monomial> out;
    std::vector<int> a(n_, 0);
    while (true) {
      Monomial m(a.begin(), a.end());
      monomial_trim(m);
      out.push_back(m);
      int k = n_ - 1;
      while (k >= 0 && ++a[k] > k) a[k--] = 0;
      if (k < 0) break;
    }
    return out;
  }

 private:
  Poly complete_homogeneous(int first, int degree) const {
    // sum of all monomials of the given degree in x_first..x_{n-1}
    std::vector<Poly> by_degree{Poly(1)};
    for (int v = first; v < n_; ++v) {
      std::vector<Poly> next(degree + 1);
      for (int d = 0; d <= degree; ++d)
        for (int e = std::max(0, d - static_cast<int>(by_degree.size()) + 1); e <= d; ++e)
          next[d] += by_degree[d - e] * Poly::variable(v, e);
      by_degree = std::move(next);
    }
    return by_degree[degree];
  }

  const Poly& reduce_monomial(const Monomial& m) {
    auto it = memo_.find(m);
    if (it != memo_.end()) return it->second;
    Poly result;
    int bad = -1;
    for (int k = 0; k < n_ && k < static_cast<int>(m.size()); ++k)
      if (m[k] > k) {
        bad = k;
        break;
      }
    if (bad < 0) {
      result = Poly::monomial(m);
    } else {
      Monomial rest = m;
      rest[bad] -= bad + 1;
      monomial_trim(rest);
      result = reduce(rules_[bad] * Poly::monomial(rest));
    }
    return memo_.emplace(m, std::move(result)).first->second;
  }

  int n_;
  std::vector<Poly> rules_;
  std::map<Monomial, Poly> memo_;
};

}  // namespace

GradedModule build_K(AlgebraPtr alg, int color, int n) {
  if (n < 1) throw std::invalid_argument("K(i^n) needs n >= 1");
  int d = alg->datum().norm(color);
  NilHeckeQuotient ring(n);
  std::vector<Monomial> mons = ring.normal_monomials();
  std::map<Monomial, int> index;
  for (int b = 0; b < static_cast<int>(mons.size()); ++b) index[mons[b]] = b;
  int dim = static_cast<int>(mons.size());
  int base = -n * (n - 1) * d;
  std::vector<BasisVector> basis;
  for (const auto& m : mons) {
    int deg = base;
    for (int a : m) deg += 2 * d * a;
    basis.push_back({Word(n, color), deg});
  }
  // Converts a reduced polynomial in x_0..x_{n-1}, z to a k[z]-vector.
  auto to_vector = [&](const Poly& p) {
    PolyVec out;
    for (const auto& [m, c] : p.terms()) {
      Monomial xpart(m.begin(), m.begin() + std::min<std::size_t>(m.size(), n));
      monomial_trim(xpart);
      int zpow = monomial_exponent(m, n);
      out[index.at(xpart)] += Poly::variable(0, zpow) * c;
    }
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
  };
  std::vector<PolyMatrix> x(n, PolyMatrix(dim, dim));
  std::vector<PolyMatrix> tau(n - 1, PolyMatrix(dim, dim));
  for (int b = 0; b < dim; ++b) {
    Poly f = Poly::monomial(mons[b]);
    for (int k = 0; k < n; ++k) x[k].set_column(b, to_vector(ring.reduce(Poly::variable(k) * f)));
    for (int k = 0; k + 1 < n; ++k) tau[k].set_column(b, to_vector(ring.reduce(divided_difference(f, k + 1, k))));
  }
  return GradedModule(std::move(alg), n, {{"z", 2 * n * d}}, basis, x, tau);
}

GradedModule affinization_L12(AlgebraPtr alg) {
  if (alg->rank() < 2) throw std::invalid_argument("needs at least two colors");
  PolyMatrix zm = PolyMatrix::scalar(1, Poly::variable(0));
  return GradedModule(std::move(alg), 2, {{"z", 4}}, {BasisVector{{0, 1}, 0}}, {zm, zm}, {PolyMatrix(1, 1)});
}

GradedModule affinization_B1(AlgebraPtr alg) {
  if (alg->rank() < 2) throw std::invalid_argument("needs at least two colors");
  std::vector<PolyMatrix> x;
  for (int j = 0; j < 2; ++j)
    x.push_back(PolyMatrix::scalar(1, Poly::variable(0, alg->datum().norm(j) / 2)));
  int zdeg2 = 2 * alg->datum().norm(0);
  return GradedModule(std::move(alg), 2, {{"z", zdeg2}}, {BasisVector{{0, 1}, 0}}, x, {PolyMatrix(1, 1)});
}

GradedModule module_B2(AlgebraPtr alg) {
  if (alg->rank() < 2) throw std::invalid_argument("needs at least two colors");
  // basis 0 = u (degree 1), basis 1 = v (degree -1), word (1,1,2)
  Word w{0, 0, 1};
  std::vector<BasisVector> basis{{w, 2}, {w, -2}};
  Poly z = Poly::variable(0);
  PolyMatrix x1(2, 2), x2(2, 2), x3(2, 2), t1(2, 2), t2(2, 2);
  x1.set(1, 0, -z);
  x1.set(0, 1, Poly(-1));
  x2.set(1, 0, z);
  x2.set(0, 1, Poly(1));
  x3 = PolyMatrix::scalar(2, z);
  t1.set(1, 0, Poly(1));
  return GradedModule(std::move(alg), 3, {{"z", 8}}, basis, {x1, x2, x3}, {t1, t2});
}

}  // namespace klr
