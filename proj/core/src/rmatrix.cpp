#include "klr/rmatrix.hpp"

#include <algorithm>
#include <stdexcept>

#include "klr/catalog.hpp"

namespace klr {

namespace {

using Element = KlrNormalizer::Element;

void add_into(Element& target, const Element& source, const Scalar& factor) {
  for (const auto& [term, c] : source) {
    auto [it, inserted] = target.try_emplace(term, Scalar(0));
    it->second += factor * c;
    if (it->second.is_zero()) target.erase(it);
  }
}

// phi_k on a normal-form element, branching on the left word of each term.
Element phi_element(KlrNormalizer& norm, int k, const Element& e) {
  Element equal, other;
  for (const auto& [term, c] : e) {
    Word w = norm.left_word(term.first);
    (w[k] == w[k + 1] ? equal : other).emplace(term, c);
  }
  Element out = norm.tau_times(k, other);
  if (!equal.empty()) {
    add_into(out, norm.tau_times(k, norm.x_times(k, equal)), Scalar(1));
    add_into(out, norm.x_times(k, norm.tau_times(k, equal)), Scalar(-1));
  }
  return out;
}

void drop_zeros(PolyVec& v) {
  for (auto it = v.begin(); it != v.end();) it = it->second.is_zero() ? v.erase(it) : std::next(it);
}

PolyVec unit(int j) { return PolyVec{{j, Poly(1)}}; }

// Q_{i,j}(x_a, x_b) + delta_{ij} as a polynomial in the x variables.
Poly intertwiner_square(const KlrAlgebra& alg, int i, int j, int a, int b) {
  Poly q = alg.q().at(i, j).remap({a, b});
  if (i == j) q += Poly(1);
  return q;
}

std::vector<Perm> all_perms(int n) {
  std::vector<Perm> out;
  Perm p = perm_identity(n);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

PolyVec phi_apply(const GradedModule& m, int k, const PolyVec& v) {
  PolyVec equal, other;
  for (const auto& [j, p] : v) {
    const Word& w = m.basis()[j].word;
    (w[k] == w[k + 1] ? equal : other).emplace(j, p);
  }
  PolyVec out = m.tau(k).apply(other);
  if (!equal.empty()) {
    axpy(out, Poly(1), m.tau(k).apply(m.x(k).apply(equal)));
    axpy(out, Poly(-1), m.x(k).apply(m.tau(k).apply(equal)));
  }
  drop_zeros(out);
  return out;
}

PolyVec phi_word_apply(const GradedModule& m, const ReducedWord& word, const PolyVec& v) {
  PolyVec cur = v;
  for (auto it = word.rbegin(); it != word.rend(); ++it) cur = phi_apply(m, *it, cur);
  return cur;
}

Report check_intertwiners(const GradedModule& m) {
  Report rep;
  const KlrAlgebra& alg = *m.algebra();
  int n = m.height();
  std::vector<Perm> perms = all_perms(n);
  for (int j = 0; j < m.dim(); ++j) {
    const Word& nu = m.basis()[j].word;
    std::string where = " on basis vector " + std::to_string(j);
    for (int k = 0; k + 1 < n; ++k) {
      PolyVec lhs = phi_apply(m, k, phi_apply(m, k, unit(j)));
      PolyVec rhs = apply_x_poly(m, intertwiner_square(alg, nu[k], nu[k + 1], k, k + 1), unit(j));
      if (lhs != rhs) rep.fail("phi_" + std::to_string(k + 1) + " squared" + where);
    }
    for (const Perm& w : perms) {
      ReducedWord word = lex_reduced_word(w);
      PolyVec image = phi_word_apply(m, word, unit(j));
      // (vi)
      PolyVec back = phi_word_apply(m, lex_reduced_word(perm_inverse(w)), image);
      Poly prod(1);
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          if (w[a] > w[b]) prod *= intertwiner_square(alg, nu[a], nu[b], a, b);
      if (back != apply_x_poly(m, prod, unit(j))) rep.fail("phi_{w^-1} phi_w product formula" + where);
      // (iii): another reduced word, the reverse of the lex word of w^-1
      ReducedWord other = lex_reduced_word(perm_inverse(w));
      std::reverse(other.begin(), other.end());
      if (phi_word_apply(m, other, unit(j)) != image) rep.fail("phi_w depends on the reduced word" + where);
      // (iv)
      for (int k = 0; k < n; ++k) {
        PolyVec lhs = phi_word_apply(m, word, m.x(k).apply(unit(j)));
        PolyVec rhs = m.x(w[k]).apply(image);
        if (lhs != rhs) rep.fail("phi_w x_k != x_{w(k)} phi_w" + where);
      }
    }
  }
  return rep;
}

GradedHom rmatrix_raw(const ModulePtr& m, const ModulePtr& n) {
  Convolution source({m, n});
  Convolution target({n, m});
  ReducedWord shuffle = lex_reduced_word(longest_shuffle(n->height(), m->height()));
  int dn = n->dim();
  std::vector<PolyVec> phi_part(source.tuple_count());
  for (int a = 0; a < m->dim(); ++a)
    for (int b = 0; b < dn; ++b) {
      int start = target.index(0, {b, a});
      phi_part[a * dn + b] = target.apply(
          [&shuffle](KlrNormalizer& norm, const Element& e) {
            Element cur = e;
            for (auto it = shuffle.rbegin(); it != shuffle.rend(); ++it) cur = phi_element(norm, *it, cur);
            return cur;
          },
          unit(start));
    }
  std::vector<PolyVec> cols(source.dim());
  for (int idx = 0; idx < source.dim(); ++idx) {
    auto [rep, tuple] = source.decode(idx);
    const PolyVec& base = phi_part[tuple[0] * dn + tuple[1]];
    const ReducedWord& word = source.reps()[rep].word;
    cols[idx] = word.empty() ? base : target.apply_word(word, base);
  }
  int nm = static_cast<int>(m->vars().size());
  int nn = static_cast<int>(n->vars().size());
  std::vector<int> var_map(nm + nn);
  for (int i = 0; i < nm; ++i) var_map[i] = nn + i;
  for (int j = 0; j < nn; ++j) var_map[nm + j] = j;
  return GradedHom{source.module_ptr(), target.module_ptr(), PolyMatrix(target.dim(), std::move(cols)), var_map, {}};
}

int z_valuation(const GradedHom& h, int var) {
  if (h.is_zero()) throw std::invalid_argument("valuation of the zero map");
  int best = -1;
  for (int j = 0; j < h.matrix.cols(); ++j)
    for (const auto& [i, p] : h.matrix.column(j)) {
      int v = p.valuation_in(var);
      if (best < 0 || v < best) best = v;
    }
  return best;
}

NormalizedRMatrix normalize_rmatrix(const GradedHom& raw, bool endomorphism) {
  if (raw.is_zero()) throw std::invalid_argument("cannot normalize the zero map");
  std::vector<Poly> entries;
  for (int j = 0; j < raw.matrix.cols(); ++j)
    for (const auto& [i, p] : raw.matrix.column(j)) entries.push_back(p);
  Poly content = gcd_all(entries);
  GradedHom hom = raw;
  hom.matrix = raw.matrix.map_entries([&content](const Poly& p) {
    auto q = p.divide_exact(content);
    if (!q) throw std::logic_error("content does not divide an entry");
    return *q;
  });
  Scalar scale;
  if (endomorphism) {
    int d = hom.matrix.cols();
    Scalar c = hom.matrix.get(0, 0).constant_term();
    for (int j = 0; j < d; ++j)
      for (const auto& [i, p] : hom.matrix.column(j)) {
        Scalar want = i == j ? c : Scalar(0);
        if (p.constant_term() != want)
          throw std::runtime_error("zero specialization of the R-matrix is not a multiple of the identity");
      }
    if (c.is_zero()) throw std::runtime_error("zero specialization of the R-matrix vanishes");
    scale = c.inverse();
  } else {
    for (int j = 0; j < hom.matrix.cols() && scale.is_zero(); ++j)
      for (const auto& [i, p] : hom.matrix.column(j))
        if (!p.constant_term().is_zero()) {
          scale = p.constant_term().inverse();
          break;
        }
    if (scale.is_zero()) throw std::runtime_error("zero specialization of the R-matrix vanishes");
  }
  hom.matrix = Poly(scale) * hom.matrix;
  return NormalizedRMatrix{hom, content, scale};
}

NormalizedRMatrix rmatrix_pair(const ModulePtr& m, const ModulePtr& n) {
  return normalize_rmatrix(rmatrix_raw(m, n), m == n);
}

GradedHom specialize_r(const GradedHom& normalized) {
  auto s = std::make_shared<GradedModule>(specialize_zero(*normalized.source));
  auto t = std::make_shared<GradedModule>(specialize_zero(*normalized.target));
  return specialize_hom(normalized, s, t);
}

GradedHom r_matrix(const ModulePtr& m, const ModulePtr& n) {
  if (!m->is_finite() || !n->is_finite()) throw std::invalid_argument("r_matrix expects finite modules");
  auto mz = std::make_shared<GradedModule>(symmetric_affinization(*m, "z"));
  auto nz = std::make_shared<GradedModule>(symmetric_affinization(*n, "w"));
  GradedHom r = specialize_r(normalize_rmatrix(rmatrix_raw(mz, nz), false).hom);
  // Keep the finite convolutions built from the original modules.
  r.source = Convolution({m, n}).module_ptr();
  r.target = Convolution({n, m}).module_ptr();
  return r;
}

GradedHom r_endomorphism(const GradedHom& r_hat) {
  int total = static_cast<int>(r_hat.source->vars().size());
  if (total % 2 != 0 || total == 0) throw std::invalid_argument("r_endomorphism expects M o M over two copies of a ring");
  int a = 0;
  int b = total / 2;
  Poly diff = Poly::variable(a) - Poly::variable(b);
  PolyMatrix delta = r_hat.matrix - PolyMatrix::identity(r_hat.matrix.cols());
  GradedHom r = r_hat;
  r.matrix = delta.map_entries([&diff](const Poly& p) {
    auto q = p.divide_exact(diff);
    if (!q) throw std::runtime_error("R - id is not divisible by z_1 - z_2 (realness fails)");
    return *q;
  });
  r.demazure = std::make_pair(a, b);
  return r;
}

std::optional<Poly> composition_polynomial(const GradedHom& r_nm, const GradedHom& r_mn) {
  GradedHom c = hom_compose(r_nm, r_mn);
  int d = c.matrix.cols();
  if (d == 0) return Poly(1);
  Poly f = c.matrix.get(0, 0);
  if (c.matrix != PolyMatrix::scalar(d, f)) return std::nullopt;
  return f;
}

GradedModule hconv_from(const GradedHom& r) {
  FiniteAction act(*r.target);
  GradedSubspace image(r.target->dim(), act.component_fn());
  for (int j = 0; j < r.matrix.cols(); ++j) image.insert(to_svec(r.matrix.column(j)));
  return make_submodule(*r.target, image).module;
}

GradedModule hconv(const ModulePtr& m, const ModulePtr& n) { return hconv_from(r_matrix(m, n)); }

GradedModule simple_head(const ModulePtr& m, const ModulePtr& n) {
  GradedHom r = r_matrix(m, n);
  auto deg = r.degree();
  if (!deg) throw std::logic_error("r-matrix is not homogeneous");
  return shift(hconv_from(r), -*deg);
}

AffinizationReport check_affinization(const GradedModule& m) {
  AffinizationReport out;
  if (m.vars().size() != 1) {
    out.issues.fail("an affinization has exactly one ring variable");
    return out;
  }
  int deg2 = m.vars()[0].deg2;
  out.even = deg2 % 4 == 0;
  Report rel = check_relations(m);
  out.issues.merge(rel, "relations: ");
  Report hom = check_homogeneity(m);
  out.issues.merge(hom, "grading: ");
  std::vector<int> w = m.weight();
  bool central_ok = true;
  for (int i = 0; i < m.algebra()->rank(); ++i) {
    if (w[i] == 0) continue;
    out.support.push_back(i);
    PolyMatrix a = central_poly_action(m, i);
    Poly p = a.get(0, 0);
    bool monomial = p.size() == 1 && a == PolyMatrix::scalar(m.dim(), p);
    if (p.is_zero()) {
      out.issues.fail("a_" + m.algebra()->datum().labels[i] + " acts by zero");
      central_ok = false;
    }
    if (monomial)
      out.central.emplace_back(p.degree_in(0), p.leading_coefficient());
    else
      out.central.emplace_back(-1, Scalar(0));
  }
  GradedModule bar = specialize_zero(m);
  bool quotient_simple = is_simple(bar);
  if (!quotient_simple) out.issues.fail("M/zM is not simple");
  out.valid = rel.ok() && hom.ok() && central_ok && quotient_simple && deg2 > 0;
  if (quotient_simple) {
    GradedModule two = flatten(m, {2});
    out.strong = hom_space(bar, two, 0).empty();
    if (!out.strong) out.issues.fail("M/z^2M splits");
  }
  return out;
}

GradedModule fuse_affinizations(const ModulePtr& m, const ModulePtr& n, int deg2) {
  if (m->vars().size() != 1 || n->vars().size() != 1) throw std::invalid_argument("fusion needs two affinizations");
  int dm = m->vars()[0].deg2;
  int dn = n->vars()[0].deg2;
  if (deg2 <= 0 || dm % deg2 != 0 || dn % deg2 != 0) throw std::invalid_argument("degree must divide both z-degrees");
  Convolution conv({m, n});
  const GradedModule& mn = conv.module();
  std::vector<Poly> images{Poly::variable(0, dm / deg2), Poly::variable(0, dn / deg2)};
  auto sub = [&images](const Poly& p) { return p.compose(images); };
  std::vector<PolyMatrix> x, tau;
  for (const auto& a : mn.x()) x.push_back(a.map_entries(sub));
  for (const auto& a : mn.tau()) tau.push_back(a.map_entries(sub));
  return GradedModule(mn.algebra(), mn.height(), {{"z", deg2}}, mn.basis(), x, tau);
}

}  // namespace klr
