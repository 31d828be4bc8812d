#include "klr/convolution.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <tuple>
#include <stdexcept>

namespace klr {

PolyVec apply_tau_word(const GradedModule& m, const ReducedWord& word, const PolyVec& v) {
  PolyVec cur = v;
  for (auto it = word.rbegin(); it != word.rend(); ++it) cur = m.tau(*it).apply(cur);
  return cur;
}

struct Convolution::Impl {
  AlgebraPtr alg;
  std::vector<ModulePtr> factors;
  std::vector<int> blocks;
  std::vector<int> starts;
  int height = 0;
  std::vector<CosetRep> reps;
  std::map<Perm, int> rep_lookup;
  std::vector<int> var_offset;
  std::vector<RingVariable> vars;
  std::vector<int> radix;
  int tuple_count = 1;
  std::vector<Word> right_words;
  std::vector<std::vector<int>> tuples;
  std::vector<BasisVector> basis;

  // Caches guarded by mutex.
  std::recursive_mutex mutex;
  std::map<Word, std::unique_ptr<KlrNormalizer>> normalizers;
  struct FactorKey {
    int factor;
    int basis;
    Perm perm;
    Monomial exps;
    bool operator<(const FactorKey& o) const {
      return std::tie(factor, basis, perm, exps) < std::tie(o.factor, o.basis, o.perm, o.exps);
    }
  };
  std::map<FactorKey, PolyVec> factor_cache;
  ModulePtr module;

  int factor_count() const { return static_cast<int>(factors.size()); }
  int dim() const { return static_cast<int>(basis.size()); }
  KlrNormalizer& normalizer(int tuple_index);
  const PolyVec& factor_action(int factor, const Perm& local, const Monomial& exps, int basis);
  PolyVec element_to_vector(const Element& e, int tuple_index);
  PolyVec apply(const ElementOp& op, const PolyVec& v);
  void build_actions(std::vector<PolyMatrix>& x, std::vector<PolyMatrix>& tau);
};

Convolution::Convolution(std::vector<ModulePtr> factors_in) : impl_(std::make_shared<Impl>()) {
  Impl& c = *impl_;
  c.factors = std::move(factors_in);
  if (c.factors.empty()) throw std::invalid_argument("convolution of no factors");
  c.alg = c.factors.front()->algebra();
  for (const auto& f : c.factors)
    if (!f->algebra()->same_parameters(*c.alg)) throw std::invalid_argument("convolution factors use different algebras");
  int k = c.factor_count();
  for (const auto& f : c.factors) c.blocks.push_back(f->height());
  c.height = std::accumulate(c.blocks.begin(), c.blocks.end(), 0);
  c.starts = block_starts(c.blocks);
  c.reps = minimal_coset_reps(c.blocks);
  for (int r = 0; r < static_cast<int>(c.reps.size()); ++r) c.rep_lookup[c.reps[r].perm] = r;

  std::map<std::string, int> name_count;
  for (const auto& f : c.factors)
    for (const auto& v : f->vars()) ++name_count[v.name];
  for (int i = 0; i < k; ++i) {
    c.var_offset.push_back(static_cast<int>(c.vars.size()));
    for (const auto& v : c.factors[i]->vars()) {
      RingVariable nv = v;
      if (name_count[v.name] > 1) nv.name = v.name + "_" + std::to_string(i + 1);
      c.vars.push_back(nv);
    }
  }

  c.radix.assign(k, 0);
  c.tuple_count = 1;
  for (int i = k - 1; i >= 0; --i) {
    c.radix[i] = c.tuple_count;
    c.tuple_count *= c.factors[i]->dim();
  }
  int total = static_cast<int>(c.reps.size()) * c.tuple_count;

  c.right_words.resize(c.tuple_count);
  c.tuples.resize(c.tuple_count);
  std::vector<int> right_deg(c.tuple_count, 0);
  for (int t = 0; t < c.tuple_count; ++t) {
    Word nu;
    int deg = 0;
    int rem = t;
    std::vector<int> tuple(k);
    for (int i = 0; i < k; ++i) {
      tuple[i] = rem / c.radix[i];
      rem %= c.radix[i];
      const auto& bv = c.factors[i]->basis()[tuple[i]];
      nu.insert(nu.end(), bv.word.begin(), bv.word.end());
      deg += bv.deg2;
    }
    c.right_words[t] = nu;
    c.tuples[t] = tuple;
    right_deg[t] = deg;
  }
  c.basis.resize(total);
  for (int r = 0; r < static_cast<int>(c.reps.size()); ++r)
    for (int t = 0; t < c.tuple_count; ++t) {
      Word mu = c.right_words[t];
      int deg = right_deg[t];
      const auto& w = c.reps[r].word;
      for (auto it = w.rbegin(); it != w.rend(); ++it) {
        deg += c.alg->deg2_tau_at(mu, *it);
        std::swap(mu[*it], mu[*it + 1]);
      }
      c.basis[r * c.tuple_count + t] = {mu, deg};
    }
}

KlrNormalizer& Convolution::Impl::normalizer(int tuple_index) {
  Impl& c = *this;
  auto& norm = c.normalizers[c.right_words[tuple_index]];
  if (!norm) norm = std::make_unique<KlrNormalizer>(c.alg, c.right_words[tuple_index], c.blocks);
  return *norm;
}

const PolyVec& Convolution::Impl::factor_action(int i, const Perm& local, const Monomial& exps, int b) {
  Impl& c = *this;
  FactorKey key{i, b, local, exps};
  auto it = c.factor_cache.find(key);
  if (it != c.factor_cache.end()) return it->second;
  const GradedModule& f = *c.factors[i];
  PolyVec cur{{b, Poly(1)}};
  for (std::size_t x = 0; x < exps.size(); ++x)
    for (int rep = 0; rep < exps[x]; ++rep) cur = f.x(static_cast<int>(x)).apply(cur);
  cur = apply_tau_word(f, lex_reduced_word(local), cur);
  if (c.var_offset[i] != 0) {
    PolyVec shifted;
    for (auto& [idx, p] : cur) shifted.emplace(idx, p.shift(c.var_offset[i]));
    cur = std::move(shifted);
  }
  return c.factor_cache.emplace(key, std::move(cur)).first->second;
}

PolyVec Convolution::Impl::element_to_vector(const Element& elem, int t) {
  Impl& c = *this;
  int k = c.factor_count();
  const std::vector<int>& tuple = c.tuples[t];
  PolyVec out;
  for (const auto& [term, coef] : elem) {
    ParabolicSplit split = parabolic_split(term.first, c.blocks);
    int target_rep = c.rep_lookup.at(split.coset);
    PolyVec acc{{0, Poly(coef)}};
    for (int i = 0; i < k && !acc.empty(); ++i) {
      Perm local(c.blocks[i]);
      for (int a = 0; a < c.blocks[i]; ++a)
        local[a] = static_cast<std::uint8_t>(split.parabolic[c.starts[i] + a] - c.starts[i]);
      Monomial exps;
      for (int a = 0; a < c.blocks[i]; ++a) exps.push_back(monomial_exponent(term.second, c.starts[i] + a));
      monomial_trim(exps);
      const PolyVec& part = factor_action(i, local, exps, tuple[i]);
      PolyVec next;
      for (const auto& [ai, ap] : acc)
        for (const auto& [bi, bp] : part) next[ai + bi * c.radix[i]] += ap * bp;
      acc.clear();
      for (auto& [idx, p] : next)
        if (!p.is_zero()) acc.emplace(idx, std::move(p));
    }
    for (auto& [idx, p] : acc) out[target_rep * c.tuple_count + idx] += p;
  }
  for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

PolyVec Convolution::Impl::apply(const ElementOp& op, const PolyVec& v) {
  Impl& c = *this;
  std::lock_guard<std::recursive_mutex> lock(c.mutex);
  PolyVec out;
  for (const auto& [idx, coeff] : v) {
    int r = idx / c.tuple_count;
    int t = idx % c.tuple_count;
    KlrNormalizer& norm = normalizer(t);
    Element start = KlrNormalizer::basis(c.reps[r].perm);
    Element result = op(norm, start);
    axpy(out, coeff, element_to_vector(result, t));
  }
  return out;
}

PolyVec Convolution::apply(const ElementOp& op, const PolyVec& v) const { return impl_->apply(op, v); }

PolyVec Convolution::apply_word(const ReducedWord& word, const PolyVec& v) const {
  for (int l : word)
    if (l < 0 || l + 1 >= impl_->height) throw std::out_of_range("crossing index out of range");
  return apply(
      [&word](KlrNormalizer& n, const Element& e) {
        Element cur = e;
        for (auto it = word.rbegin(); it != word.rend(); ++it) cur = n.tau_times(*it, cur);
        return cur;
      },
      v);
}

PolyVec Convolution::apply_x(int k, const PolyVec& v) const {
  return apply([k](KlrNormalizer& n, const Element& e) { return n.x_times(k, e); }, v);
}

PolyVec Convolution::apply_tau(int l, const PolyVec& v) const { return apply_word({l}, v); }

void Convolution::Impl::build_actions(std::vector<PolyMatrix>& x, std::vector<PolyMatrix>& tau) {
  std::lock_guard<std::recursive_mutex> lock(mutex);
  int n = height;
  int total = dim();
  int ngen = 2 * n - (n > 0 ? 1 : 0);
  std::vector<std::vector<PolyVec>> columns(ngen, std::vector<PolyVec>(total));
  for (int j = 0; j < total; ++j) {
    int r = j / tuple_count;
    int t = j % tuple_count;
    KlrNormalizer& norm = normalizer(t);
    for (int g = 0; g < ngen; ++g) {
      const Element& elem = g < n ? norm.x_times(g, reps[r].perm) : norm.tau_times(g - n, reps[r].perm);
      columns[g][j] = element_to_vector(elem, t);
    }
  }
  x.clear();
  tau.clear();
  for (int g = 0; g < ngen; ++g) {
    if (g < n)
      x.emplace_back(total, std::move(columns[g]));
    else
      tau.emplace_back(total, std::move(columns[g]));
  }
}

const GradedModule& Convolution::module() const { return *module_ptr(); }

ModulePtr Convolution::module_ptr() const {
  std::lock_guard<std::recursive_mutex> lock(impl_->mutex);
  if (!impl_->module) {
    std::shared_ptr<Impl> impl = impl_;
    impl_->module = std::make_shared<GradedModule>(GradedModule::lazy(
        impl->alg, impl->height, impl->vars, impl->basis,
        [impl](std::vector<PolyMatrix>& x, std::vector<PolyMatrix>& tau) { impl->build_actions(x, tau); }));
  }
  return impl_->module;
}

const std::vector<ModulePtr>& Convolution::factors() const { return impl_->factors; }
int Convolution::factor_count() const { return impl_->factor_count(); }
const std::vector<int>& Convolution::blocks() const { return impl_->blocks; }
const std::vector<CosetRep>& Convolution::reps() const { return impl_->reps; }
const std::vector<BasisVector>& Convolution::basis() const { return impl_->basis; }
const std::vector<RingVariable>& Convolution::vars() const { return impl_->vars; }
const AlgebraPtr& Convolution::algebra() const { return impl_->alg; }
int Convolution::dim() const { return impl_->dim(); }
int Convolution::height() const { return impl_->height; }
int Convolution::var_offset(int i) const { return impl_->var_offset.at(i); }
int Convolution::tuple_count() const { return impl_->tuple_count; }

int Convolution::rep_index(const Perm& w) const {
  auto it = impl_->rep_lookup.find(w);
  if (it == impl_->rep_lookup.end()) throw std::invalid_argument("permutation is not a minimal coset representative");
  return it->second;
}

int Convolution::index(int rep, const std::vector<int>& tuple) const {
  int t = 0;
  for (int i = 0; i < factor_count(); ++i) t += tuple[i] * impl_->radix[i];
  return rep * impl_->tuple_count + t;
}

std::pair<int, std::vector<int>> Convolution::decode(int idx) const {
  return {idx / impl_->tuple_count, impl_->tuples[idx % impl_->tuple_count]};
}

PolyVec Convolution::pure_tensor(const std::vector<PolyVec>& parts) const {
  const Impl& c = *impl_;
  if (static_cast<int>(parts.size()) != factor_count()) throw std::invalid_argument("one vector per factor");
  PolyVec acc{{0, Poly(1)}};
  for (int i = 0; i < factor_count(); ++i) {
    PolyVec next;
    for (const auto& [ai, ap] : acc)
      for (const auto& [bi, bp] : parts[i]) next[ai + bi * c.radix[i]] += ap * bp.shift(c.var_offset[i]);
    acc.clear();
    for (auto& [idx, p] : next)
      if (!p.is_zero()) acc.emplace(idx, std::move(p));
  }
  return acc;  // identity representative has index 0
}

GradedModule convolve(const GradedModule& a, const GradedModule& b) {
  return Convolution({std::make_shared<GradedModule>(a), std::make_shared<GradedModule>(b)}).module();
}

GradedModule convolve_all(const std::vector<ModulePtr>& factors) { return Convolution(factors).module(); }

GradedModule unit_module(AlgebraPtr alg) {
  return GradedModule::with_zero_action(std::move(alg), 0, {}, {BasisVector{{}, 0}});
}

}  // namespace klr
