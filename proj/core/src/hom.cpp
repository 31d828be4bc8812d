#include "klr/hom.hpp"

#include <stdexcept>

namespace klr {

namespace {

// Monomials of total degree <= 2 in `count` variables.
std::vector<Poly> test_coefficients(int count) {
  std::vector<Poly> out{Poly(1)};
  for (int a = 0; a < count; ++a) {
    out.push_back(Poly::variable(a));
    for (int b = a; b < count; ++b) out.push_back(Poly::variable(a) * Poly::variable(b));
  }
  return out;
}

void drop_zeros(PolyVec& v) {
  for (auto it = v.begin(); it != v.end();) it = it->second.is_zero() ? v.erase(it) : std::next(it);
}

}  // namespace

std::optional<int> GradedHom::degree() const {
  std::vector<long> weights = target->var_degrees();
  std::optional<int> deg;
  for (int j = 0; j < matrix.cols(); ++j)
    for (const auto& [i, p] : matrix.column(j)) {
      auto pd = p.homogeneous_degree(weights);
      if (!pd) return std::nullopt;
      int d = target->basis()[i].deg2 + static_cast<int>(*pd) - source->basis()[j].deg2;
      if (deg && *deg != d) return std::nullopt;
      deg = d;
    }
  return deg ? deg : std::optional<int>(0);
}

std::vector<int> identity_var_map(int count) {
  std::vector<int> out(count);
  for (int i = 0; i < count; ++i) out[i] = i;
  return out;
}

PolyVec hom_apply(const GradedHom& h, const PolyVec& v) {
  PolyVec out;
  for (const auto& [j, f] : v) {
    axpy(out, f.remap(h.var_map), h.matrix.column(j));
    if (h.demazure) out[j] -= divided_difference(f, h.demazure->first, h.demazure->second);
  }
  drop_zeros(out);
  return out;
}

GradedHom hom_identity(const ModulePtr& m) {
  return GradedHom{m, m, PolyMatrix::identity(m->dim()), identity_var_map(static_cast<int>(m->vars().size())), {}};
}

GradedHom hom_compose(const GradedHom& h2, const GradedHom& h1) {
  if (h1.demazure || h2.demazure) throw std::invalid_argument("cannot compose homs with a Demazure correction");
  if (h1.target->dim() != h2.source->dim()) throw std::invalid_argument("hom composition: dimension mismatch");
  std::vector<PolyVec> cols;
  for (int j = 0; j < h1.matrix.cols(); ++j) cols.push_back(hom_apply(h2, h1.matrix.column(j)));
  std::vector<int> vm;
  for (int v : h1.var_map) vm.push_back(v < static_cast<int>(h2.var_map.size()) ? h2.var_map[v] : v);
  return GradedHom{h1.source, h2.target, PolyMatrix(h2.target->dim(), std::move(cols)), vm, {}};
}

GradedHom hom_scale(const GradedHom& h, const Poly& factor) {
  GradedHom out = h;
  out.matrix = factor * h.matrix;
  return out;
}

Report check_hom(const GradedHom& h) {
  Report rep;
  const GradedModule& src = *h.source;
  const GradedModule& tgt = *h.target;
  if (src.height() != tgt.height()) {
    rep.fail("source and target have different heights");
    return rep;
  }
  if (h.matrix.cols() != src.dim() || h.matrix.rows() != tgt.dim()) {
    rep.fail("matrix has the wrong shape");
    return rep;
  }
  if (!h.degree()) rep.fail("hom is not homogeneous");
  for (int j = 0; j < src.dim(); ++j)
    for (const auto& [i, p] : h.matrix.column(j))
      if (tgt.basis()[i].word != src.basis()[j].word) {
        rep.fail("hom does not preserve idempotents (column " + std::to_string(j) + ")");
        return rep;
      }
  std::vector<Poly> coeffs = test_coefficients(static_cast<int>(src.vars().size()));
  for (int g = 0; g < src.generator_count(); ++g)
    for (int j = 0; j < src.dim(); ++j)
      for (const Poly& f : coeffs) {
        PolyVec v{{j, f}};
        PolyVec lhs = hom_apply(h, src.generator(g).apply(v));
        PolyVec rhs = tgt.generator(g).apply(hom_apply(h, v));
        if (lhs != rhs) {
          rep.fail("hom does not commute with " + src.generator_name(g) + " on basis vector " + std::to_string(j) +
                   " times " + f.str());
          return rep;
        }
      }
  return rep;
}

GradedHom specialize_hom(const GradedHom& h, const ModulePtr& source0, const ModulePtr& target0) {
  PolyMatrix m = h.matrix.map_entries([](const Poly& p) { return Poly(p.constant_term()); });
  return GradedHom{source0, target0, m, {}, {}};
}

SlotHom::SlotHom(Convolution source, Convolution target, int slot, GradedHom small)
    : source_(std::move(source)), target_(std::move(target)), slot_(slot), small_(std::move(small)) {
  int k = source_.factor_count();
  if (slot_ < 0 || slot_ + 1 >= k) throw std::out_of_range("slot out of range");
  const auto& sf = source_.factors();
  const auto& tf = target_.factors();
  if (target_.factor_count() != k) throw std::invalid_argument("slot hom: factor count mismatch");
  for (int i = 0; i < k; ++i) {
    int from = i == slot_ ? slot_ + 1 : i == slot_ + 1 ? slot_ : i;
    if (tf[i] != sf[from]) throw std::invalid_argument("slot hom: target is not the slot-swapped convolution");
  }
  const ModulePtr& a = sf[slot_];
  const ModulePtr& b = sf[slot_ + 1];
  if (small_.source->dim() != Convolution({a, b}).dim() || small_.target->dim() != Convolution({b, a}).dim())
    throw std::invalid_argument("slot hom: small hom does not match the factors");
  int na = static_cast<int>(a->vars().size());
  int nb = static_cast<int>(b->vars().size());
  // small target ring = vars(b) then vars(a)
  for (int i = 0; i < nb; ++i) small_to_big_.push_back(target_.var_offset(slot_) + i);
  for (int i = 0; i < na; ++i) small_to_big_.push_back(target_.var_offset(slot_ + 1) + i);
  int total = static_cast<int>(source_.vars().size());
  var_map_.resize(total);
  for (int i = 0; i < k; ++i) {
    int nv = static_cast<int>(sf[i]->vars().size());
    for (int u = 0; u < nv; ++u) {
      int sv = source_.var_offset(i) + u;
      if (i == slot_ || i == slot_ + 1) {
        int small_var = (i == slot_ ? 0 : na) + u;
        var_map_[sv] = small_to_big_.at(small_.var_map.at(small_var));
      } else {
        var_map_[sv] = target_.var_offset(i) + u;
      }
    }
  }
  if (small_.demazure)
    demazure_ = std::make_pair(small_to_big_.at(small_.demazure->first), small_to_big_.at(small_.demazure->second));
}

PolyVec SlotHom::pure_image(const std::vector<int>& tuple) const {
  const auto& sf = source_.factors();
  const ModulePtr& a = sf[slot_];
  const ModulePtr& b = sf[slot_ + 1];
  int small_src = tuple[slot_] * b->dim() + tuple[slot_ + 1];
  int small_tc = a->dim() * b->dim();
  std::vector<CosetRep> small_reps = minimal_coset_reps(b->height(), a->height());
  int start = block_starts(target_.blocks())[slot_];
  int n = target_.height();
  PolyVec out;
  for (const auto& [idx, g] : small_.matrix.column(small_src)) {
    int rho = idx / small_tc;
    int t = idx % small_tc;
    std::vector<int> big = tuple;
    big[slot_] = t / a->dim();
    big[slot_ + 1] = t % a->dim();
    Perm perm = perm_identity(n);
    const Perm& local = small_reps[rho].perm;
    for (std::size_t p = 0; p < local.size(); ++p) perm[start + p] = static_cast<std::uint8_t>(start + local[p]);
    out[target_.index(target_.rep_index(perm), big)] += g.remap(small_to_big_);
  }
  drop_zeros(out);
  return out;
}

PolyVec SlotHom::image(int index) const {
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    auto it = cache_->images.find(index);
    if (it != cache_->images.end()) return it->second;
  }
  auto [rep, tuple] = source_.decode(index);
  PolyVec out = pure_image(tuple);
  const ReducedWord& word = source_.reps()[rep].word;
  if (!word.empty()) out = target_.apply_word(word, out);
  std::lock_guard<std::mutex> lock(cache_->mutex);
  return cache_->images.emplace(index, std::move(out)).first->second;
}

PolyVec SlotHom::apply(const PolyVec& v) const {
  PolyVec out;
  for (const auto& [j, f] : v) {
    axpy(out, f.remap(var_map_), image(j));
    if (demazure_) out[j] -= divided_difference(f, demazure_->first, demazure_->second);
  }
  drop_zeros(out);
  return out;
}

}  // namespace klr
