#include "klr/module.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "klr/perm.hpp"

namespace klr {

GradedModule::GradedModule(AlgebraPtr alg, int height, std::vector<RingVariable> vars,
                           std::vector<BasisVector> basis, std::vector<PolyMatrix> x,
                           std::vector<PolyMatrix> tau)
    : alg_(std::move(alg)),
      height_(height),
      vars_(std::move(vars)),
      basis_(std::move(basis)),
      actions_(std::make_shared<Actions>()) {
  if (!alg_) throw std::invalid_argument("module without algebra");
  if (height_ < 0) throw std::invalid_argument("negative height");
  for (const auto& v : vars_)
    if (v.deg2 <= 0)
      throw std::invalid_argument("ring variable '" + v.name + "' has non-positive degree; degrees unbounded below");
  for (const auto& b : basis_) {
    if (static_cast<int>(b.word.size()) != height_) throw std::invalid_argument("basis word has wrong length");
    for (int c : b.word)
      if (c < 0 || c >= alg_->rank()) throw std::invalid_argument("basis word uses an unknown color");
  }
  actions_->x = std::move(x);
  actions_->tau = std::move(tau);
  validate_actions();
}

GradedModule GradedModule::lazy(AlgebraPtr alg, int height, std::vector<RingVariable> vars,
                                std::vector<BasisVector> basis, ActionBuilder build) {
  std::vector<PolyMatrix> none_x(height), none_tau(std::max(0, height - 1));
  int n = static_cast<int>(basis.size());
  for (auto& m : none_x) m = PolyMatrix(n, n);
  for (auto& m : none_tau) m = PolyMatrix(n, n);
  GradedModule m(std::move(alg), height, std::move(vars), std::move(basis), std::move(none_x), std::move(none_tau));
  m.actions_ = std::make_shared<Actions>();
  m.actions_->build = std::move(build);
  return m;
}

const GradedModule::Actions& GradedModule::actions() const {
  Actions& a = *actions_;
  std::call_once(a.once, [this, &a] {
    if (a.build) {
      a.build(a.x, a.tau);
      a.build = nullptr;
      validate_actions();
    }
  });
  return a;
}

void GradedModule::validate_actions() const {
  const Actions& a = *actions_;
  int n = dim();
  if (static_cast<int>(a.x.size()) != height_) throw std::invalid_argument("wrong number of x matrices");
  if (static_cast<int>(a.tau.size()) != std::max(0, height_ - 1))
    throw std::invalid_argument("wrong number of tau matrices");
  int nv = static_cast<int>(vars_.size());
  auto check = [n, nv](const PolyMatrix& m) {
    if (m.rows() != n || m.cols() != n) throw std::invalid_argument("generator matrix has wrong size");
    for (int j = 0; j < m.cols(); ++j)
      for (const auto& [i, p] : m.column(j))
        if (p.num_vars() > nv) throw std::invalid_argument("matrix entry uses an undeclared ring variable");
  };
  for (const auto& m : a.x) check(m);
  for (const auto& m : a.tau) check(m);
}

GradedModule GradedModule::with_zero_action(AlgebraPtr alg, int height, std::vector<RingVariable> vars,
                                            std::vector<BasisVector> basis) {
  int n = static_cast<int>(basis.size());
  std::vector<PolyMatrix> x(height, PolyMatrix(n, n));
  std::vector<PolyMatrix> tau(std::max(0, height - 1), PolyMatrix(n, n));
  return GradedModule(std::move(alg), height, std::move(vars), std::move(basis), std::move(x), std::move(tau));
}

GradedModule GradedModule::zero(AlgebraPtr alg, int height) {
  return with_zero_action(std::move(alg), height, {}, {});
}

std::vector<long> GradedModule::var_degrees() const {
  std::vector<long> d;
  for (const auto& v : vars_) d.push_back(v.deg2);
  return d;
}

std::vector<int> GradedModule::weight() const {
  std::vector<int> w(alg_->rank(), 0);
  if (!basis_.empty())
    for (int c : basis_.front().word) ++w[c];
  return w;
}

const PolyMatrix& GradedModule::generator(int g) const {
  return g < height_ ? x(g) : tau(g - height_);
}

int GradedModule::generator_deg2(int g, const Word& nu) const {
  if (g < height_) return alg_->deg2_x(nu[g]);
  return alg_->deg2_tau_at(nu, g - height_);
}

Word GradedModule::generator_target_word(int g, const Word& nu) const {
  if (g < height_) return nu;
  Word w(nu);
  std::swap(w[g - height_], w[g - height_ + 1]);
  return w;
}

std::string GradedModule::generator_name(int g) const {
  if (g < height_) return "x" + std::to_string(g + 1);
  return "tau" + std::to_string(g - height_ + 1);
}

void GradedModule::set_x(int k, PolyMatrix m) {
  if (m.rows() != dim() || m.cols() != dim()) throw std::invalid_argument("x matrix has wrong size");
  auto fresh = std::make_shared<Actions>();
  fresh->x = x();
  fresh->tau = tau();
  fresh->x.at(k) = std::move(m);
  actions_ = std::move(fresh);
}

void GradedModule::set_tau(int l, PolyMatrix m) {
  if (m.rows() != dim() || m.cols() != dim()) throw std::invalid_argument("tau matrix has wrong size");
  auto fresh = std::make_shared<Actions>();
  fresh->x = x();
  fresh->tau = tau();
  fresh->tau.at(l) = std::move(m);
  actions_ = std::move(fresh);
}

PolyVec apply_x_poly(const GradedModule& m, const Poly& p, const PolyVec& v) {
  PolyVec out;
  for (const auto& [mono, c] : p.terms()) {
    PolyVec cur = v;
    for (std::size_t k = 0; k < mono.size(); ++k)
      for (int r = 0; r < mono[k]; ++r) cur = m.x(static_cast<int>(k)).apply(cur);
    axpy(out, Poly(c), cur);
  }
  return out;
}

namespace {

std::string instance(const GradedModule& m, int col) {
  return "on basis " + std::to_string(col) + " " + m.algebra()->datum().word_str(m.basis()[col].word);
}

bool vec_equal(const PolyVec& a, const PolyVec& b) { return a == b; }

PolyVec unit(int j) { return PolyVec{{j, Poly(1)}}; }

}  // namespace

Report check_relations(const GradedModule& m) {
  Report rep;
  const KlrAlgebra& alg = *m.algebra();
  int n = m.height();
  int d = m.dim();
  std::set<std::string> seen;  // first failure per relation class
  auto fail = [&](const std::string& cls, const std::string& msg) {
    if (seen.insert(cls).second) rep.fail(cls + ": " + msg);
  };
  for (int j = 0; j < d; ++j) {
    const Word& nu = m.basis()[j].word;
    PolyVec ej = unit(j);
    // idempotent compatibility
    for (int k = 0; k < n; ++k)
      for (const auto& [i, p] : m.x(k).column(j))
        if (m.basis()[i].word != nu) fail("idempotent", "x" + std::to_string(k + 1) + " leaves e(nu) " + instance(m, j));
    for (int l = 0; l + 1 < n; ++l) {
      Word target = nu;
      std::swap(target[l], target[l + 1]);
      for (const auto& [i, p] : m.tau(l).column(j))
        if (m.basis()[i].word != target)
          fail("idempotent", "tau" + std::to_string(l + 1) + " does not map e(nu) to e(s nu) " + instance(m, j));
    }
    std::vector<PolyVec> xe(n);
    for (int k = 0; k < n; ++k) xe[k] = m.x(k).column(j);
    // x commute
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (!vec_equal(m.x(a).apply(xe[b]), m.x(b).apply(xe[a])))
          fail("x-commute", "x" + std::to_string(a + 1) + "x" + std::to_string(b + 1) + " " + instance(m, j));
    std::vector<PolyVec> te(std::max(0, n - 1));
    for (int l = 0; l + 1 < n; ++l) te[l] = m.tau(l).column(j);
    // distant tau commute
    for (int a = 0; a + 1 < n; ++a)
      for (int b = a + 2; b + 1 < n; ++b)
        if (!vec_equal(m.tau(a).apply(te[b]), m.tau(b).apply(te[a])))
          fail("tau-commute", "tau" + std::to_string(a + 1) + "tau" + std::to_string(b + 1) + " " + instance(m, j));
    for (int l = 0; l + 1 < n; ++l) {
      // tau^2 = Q(x_l, x_{l+1})
      PolyVec lhs = m.tau(l).apply(te[l]);
      Poly q = alg.q().at(nu[l], nu[l + 1]).remap({l, l + 1});
      PolyVec rhs = apply_x_poly(m, q, ej);
      if (!vec_equal(lhs, rhs)) fail("tau-square", "tau" + std::to_string(l + 1) + "^2 " + instance(m, j));
      // tau_l x_k - x_{s_l(k)} tau_l = correction
      bool equal = nu[l] == nu[l + 1];
      for (int k = 0; k < n; ++k) {
        int sk = k == l ? l + 1 : (k == l + 1 ? l : k);
        PolyVec diff = m.tau(l).apply(xe[k]);
        axpy(diff, Poly(-1), m.x(sk).apply(te[l]));
        PolyVec expect;
        if (equal && k == l) expect = scale(ej, Poly(-1));
        if (equal && k == l + 1) expect = ej;
        if (!vec_equal(diff, expect))
          fail("tau-x", "tau" + std::to_string(l + 1) + " x" + std::to_string(k + 1) + " " + instance(m, j));
      }
    }
    // braid
    for (int k = 0; k + 2 < n; ++k) {
      PolyVec lhs = m.tau(k + 1).apply(m.tau(k).apply(te[k + 1]));
      axpy(lhs, Poly(-1), m.tau(k).apply(m.tau(k + 1).apply(te[k])));
      PolyVec expect;
      if (nu[k] == nu[k + 2]) {
        Poly qb = alg.qbar(nu[k], nu[k + 1]).remap({k, k + 1, k + 2});
        expect = apply_x_poly(m, qb, ej);
      }
      if (!vec_equal(lhs, expect)) fail("braid", "at k=" + std::to_string(k + 1) + " " + instance(m, j));
    }
  }
  Report hom = check_homogeneity(m);
  rep.merge(hom);
  return rep;
}

Report check_homogeneity(const GradedModule& m) {
  Report rep;
  std::vector<long> weights = m.var_degrees();
  for (int g = 0; g < m.generator_count(); ++g) {
    const PolyMatrix& mat = m.generator(g);
    for (int j = 0; j < m.dim(); ++j) {
      int target = m.basis()[j].deg2 + m.generator_deg2(g, m.basis()[j].word);
      for (const auto& [i, p] : mat.column(j)) {
        auto deg = p.homogeneous_degree(weights);
        if (!deg || m.basis()[i].deg2 + *deg != target) {
          rep.fail("grading: " + m.generator_name(g) + " entry (" + std::to_string(i) + "," + std::to_string(j) +
                   ") is not homogeneous of the generator degree");
          return rep;
        }
      }
    }
  }
  return rep;
}

QCharacter q_character(const GradedModule& m) {
  if (!m.is_finite()) throw std::invalid_argument("q-character requested for a module over a polynomial ring");
  QCharacter ch;
  for (const auto& b : m.basis()) ch[b.word][b.deg2] += 1;
  return ch;
}

std::string laurent_str(const std::map<int, long>& coeffs) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [e2, c] : coeffs) {
    if (c == 0) continue;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    long a = c < 0 ? -c : c;
    if (e2 == 0) {
      os << a;
      continue;
    }
    if (a != 1) os << a;
    os << "q";
    if (e2 % 2 == 0) {
      if (e2 != 2) os << "^" << (e2 / 2 < 0 ? "(" + std::to_string(e2 / 2) + ")" : std::to_string(e2 / 2));
    } else {
      os << "^(" << e2 << "/2)";
    }
  }
  if (first) return "0";
  return os.str();
}

std::map<std::string, std::string> qchar_strings(const GradedModule& m) {
  std::map<std::string, std::string> out;
  for (const auto& [w, poly] : q_character(m)) out[m.algebra()->datum().word_str(w)] = laurent_str(poly);
  return out;
}

std::map<Word, long> ungraded_character(const GradedModule& m) {
  std::map<Word, long> ch;
  for (const auto& b : m.basis()) ch[b.word] += 1;
  return ch;
}

GradedModule shift(const GradedModule& m, int deg2) {
  std::vector<BasisVector> basis = m.basis();
  for (auto& b : basis) b.deg2 += deg2;
  return GradedModule(m.algebra(), m.height(), m.vars(), basis, m.x(), m.tau());
}

namespace {

PolyMatrix block_diag(const PolyMatrix& a, const PolyMatrix& b) {
  int n = a.rows() + b.rows();
  PolyMatrix r(n, n);
  for (int j = 0; j < a.cols(); ++j) r.set_column(j, a.column(j));
  for (int j = 0; j < b.cols(); ++j) {
    PolyVec col;
    for (const auto& [i, p] : b.column(j)) col.emplace(i + a.rows(), p);
    r.set_column(j + a.cols(), col);
  }
  return r;
}

}  // namespace

GradedModule direct_sum(const GradedModule& a, const GradedModule& b) {
  if (a.height() != b.height()) throw std::invalid_argument("direct sum of modules of different height");
  if (a.vars().size() != b.vars().size()) throw std::invalid_argument("direct sum needs matching coefficient rings");
  std::vector<BasisVector> basis = a.basis();
  basis.insert(basis.end(), b.basis().begin(), b.basis().end());
  std::vector<PolyMatrix> x, tau;
  for (int k = 0; k < a.height(); ++k) x.push_back(block_diag(a.x(k), b.x(k)));
  for (int l = 0; l + 1 < a.height(); ++l) tau.push_back(block_diag(a.tau(l), b.tau(l)));
  return GradedModule(a.algebra(), a.height(), a.vars(), basis, x, tau);
}

GradedModule flatten(const GradedModule& m, const std::vector<int>& orders) {
  int nv = static_cast<int>(m.vars().size());
  if (static_cast<int>(orders.size()) != nv) throw std::invalid_argument("one truncation order per variable");
  for (int o : orders)
    if (o < 1) throw std::invalid_argument("truncation order must be positive");
  // Enumerate exponent vectors below the orders.
  std::vector<Monomial> exps;
  std::vector<int> cur(nv, 0);
  while (true) {
    Monomial mm(cur.begin(), cur.end());
    monomial_trim(mm);
    exps.push_back(mm);
    int v = 0;
    while (v < nv && ++cur[v] == orders[v]) cur[v++] = 0;
    if (v == nv) break;
  }
  std::map<Monomial, int> exp_index;
  for (int e = 0; e < static_cast<int>(exps.size()); ++e) exp_index[exps[e]] = e;
  int ne = static_cast<int>(exps.size());
  int d = m.dim();
  auto idx = [ne](int basis, int e) { return basis * ne + e; };
  std::vector<BasisVector> basis;
  basis.reserve(static_cast<std::size_t>(d) * ne);
  for (int b = 0; b < d; ++b)
    for (int e = 0; e < ne; ++e) {
      int deg = m.basis()[b].deg2;
      for (int v = 0; v < static_cast<int>(exps[e].size()); ++v) deg += exps[e][v] * m.vars()[v].deg2;
      basis.push_back({m.basis()[b].word, deg});
    }
  auto convert = [&](const PolyMatrix& mat) {
    PolyMatrix r(d * ne, d * ne);
    for (int j = 0; j < d; ++j)
      for (int e = 0; e < ne; ++e) {
        PolyVec col;
        for (const auto& [i, p] : mat.column(j))
          for (const auto& [mono, c] : p.terms()) {
            Monomial total = monomial_mul(mono, exps[e]);
            monomial_trim(total);
            bool inside = true;
            for (int v = 0; v < static_cast<int>(total.size()); ++v)
              if (total[v] >= orders[v]) inside = false;
            if (!inside) continue;
            auto& slot = col[idx(i, exp_index.at(total))];
            slot += Poly(c);
          }
        for (auto it = col.begin(); it != col.end();) it = it->second.is_zero() ? col.erase(it) : std::next(it);
        r.set_column(idx(j, e), col);
      }
    return r;
  };
  std::vector<PolyMatrix> x, tau;
  for (const auto& mat : m.x()) x.push_back(convert(mat));
  for (const auto& mat : m.tau()) tau.push_back(convert(mat));
  return GradedModule(m.algebra(), m.height(), {}, basis, x, tau);
}

GradedModule specialize_zero(const GradedModule& m) {
  return flatten(m, std::vector<int>(m.vars().size(), 1));
}

GradedModule rename_vars(const GradedModule& m, std::vector<RingVariable> vars) {
  if (vars.size() != m.vars().size()) throw std::invalid_argument("variable count mismatch in rename");
  return GradedModule(m.algebra(), m.height(), std::move(vars), m.basis(), m.x(), m.tau());
}

PolyMatrix central_poly_action(const GradedModule& m, int color) {
  int d = m.dim();
  PolyMatrix result(d, d);
  for (int j = 0; j < d; ++j) {
    const Word& nu = m.basis()[j].word;
    Monomial mono(nu.size(), 0);
    for (std::size_t a = 0; a < nu.size(); ++a)
      if (nu[a] == color) mono[a] = 1;
    monomial_trim(mono);
    result.set_column(j, apply_x_poly(m, Poly::monomial(mono), PolyVec{{j, Poly(1)}}));
  }
  return result;
}

ParitySplit parity_split(const GradedModule& m) {
  ParitySplit s;
  for (int j = 0; j < m.dim(); ++j) {
    const auto& b = m.basis()[j];
    if (b.deg2 % 2 != 0) throw std::invalid_argument("parity split needs integral degrees");
    int deg = b.deg2 / 2;
    int p = parity(m.algebra()->datum(), b.word);
    if (((deg - p) % 2 + 2) % 2 == 0)
      s.even_indices.push_back(j);
    else
      s.odd_indices.push_back(j);
  }
  return s;
}

GradedModule restrict_to(const GradedModule& m, const std::vector<int>& indices) {
  std::map<int, int> pos;
  for (int k = 0; k < static_cast<int>(indices.size()); ++k) pos[indices[k]] = k;
  int n = static_cast<int>(indices.size());
  std::vector<BasisVector> basis;
  for (int i : indices) basis.push_back(m.basis().at(i));
  auto convert = [&](const PolyMatrix& mat) {
    PolyMatrix r(n, n);
    for (int k = 0; k < n; ++k) {
      PolyVec col;
      for (const auto& [i, p] : mat.column(indices[k])) {
        auto it = pos.find(i);
        if (it == pos.end()) throw std::invalid_argument("index set is not invariant under the action");
        col.emplace(it->second, p);
      }
      r.set_column(k, col);
    }
    return r;
  };
  std::vector<PolyMatrix> x, tau;
  for (const auto& mat : m.x()) x.push_back(convert(mat));
  for (const auto& mat : m.tau()) tau.push_back(convert(mat));
  return GradedModule(m.algebra(), m.height(), m.vars(), basis, x, tau);
}

GradedModule twist_grading(const GradedModule& m, const SkewForm& c) {
  // Twists compose additively, so twisting by c then by -c is the identity.
  int r = m.algebra()->rank();
  SkewForm total = SkewForm::zero(r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) total.values[i][j] = m.algebra()->skew().at(i, j) + c.at(i, j);
  AlgebraPtr twisted = m.algebra()->with_skew(total);
  std::vector<BasisVector> basis = m.basis();
  for (auto& b : basis)
    for (std::size_t x = 0; x < b.word.size(); ++x)
      for (std::size_t y = x + 1; y < b.word.size(); ++y) b.deg2 += c.at(b.word[x], b.word[y]);
  return GradedModule(twisted, m.height(), m.vars(), basis, m.x(), m.tau());
}

std::vector<SVec> scalar_columns(const PolyMatrix& m) {
  std::vector<SVec> cols(m.cols());
  for (int j = 0; j < m.cols(); ++j) cols[j] = to_svec(m.column(j));
  return cols;
}

SVec to_svec(const PolyVec& v) {
  SVec out;
  out.reserve(v.size());
  for (const auto& [i, p] : v) {
    if (!p.is_constant()) throw std::invalid_argument("non-constant entry in a finite-dimensional module");
    if (!p.is_zero()) out.emplace_back(i, p.constant_term());
  }
  return out;
}

PolyVec to_polyvec(const SVec& v) {
  PolyVec out;
  for (const auto& [i, c] : v)
    if (!c.is_zero()) out.emplace(i, Poly(c));
  return out;
}

}  // namespace klr
