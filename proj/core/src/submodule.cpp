#include "klr/submodule.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <stdexcept>

namespace klr {

namespace {

SVec unit_vec(int i) { return SVec{{i, Scalar(1)}}; }

SVec combine(const std::vector<SVec>& columns, const SVec& v) {
  std::map<int, Scalar> acc;
  for (const auto& [j, c] : v)
    for (const auto& [i, a] : columns[j]) acc[i] += c * a;
  return svec_from_map(acc);
}

}  // namespace

FiniteAction::FiniteAction(const GradedModule& m, bool dual) : dim_(m.dim()) {
  if (!m.is_finite()) throw std::invalid_argument("finite-dimensional module expected");
  for (int g = 0; g < m.generator_count(); ++g) {
    std::vector<SVec> cols = scalar_columns(m.generator(g));
    if (dual) {
      std::vector<SVec> t(dim_);
      for (int j = 0; j < dim_; ++j)
        for (const auto& [i, c] : cols[j]) t[i].emplace_back(j, c);
      cols = std::move(t);
    }
    gens_.push_back(std::move(cols));
  }
  std::map<std::pair<Word, int>, int> index;
  component_->resize(dim_);
  for (int j = 0; j < dim_; ++j) {
    const BasisVector& b = m.basis()[j];
    auto [it, inserted] = index.try_emplace({b.word, b.deg2}, static_cast<int>(members_.size()));
    if (inserted) members_.emplace_back();
    (*component_)[j] = it->second;
    members_[it->second].push_back(j);
  }
}

std::function<int(int)> FiniteAction::component_fn() const {
  std::shared_ptr<const std::vector<int>> comp = component_;
  return [comp](int i) { return (*comp)[i]; };
}

SVec FiniteAction::apply(int g, const SVec& v) const { return combine(gens_[g], v); }

GradedSubspace::GradedSubspace(int dim, std::function<int(int)> component)
    : dim_(dim), component_(std::move(component)) {}

int GradedSubspace::comp_of(int index) const { return component_(index); }

std::vector<SVec> GradedSubspace::insert(const SVec& v) {
  std::map<int, SVec> split;
  for (const auto& e : v) split[comp_of(e.first)].push_back(e);
  std::vector<SVec> added;
  for (auto& [c, part] : split) {
    auto [it, inserted] = parts_.try_emplace(c, Echelon(dim_));
    int row = it->second.insert(part);
    if (row >= 0) {
      ++rank_;
      added.push_back(it->second.rows()[row]);
    }
  }
  return added;
}

SVec GradedSubspace::reduce(const SVec& v) const {
  std::map<int, SVec> split;
  for (const auto& e : v) split[comp_of(e.first)].push_back(e);
  std::map<int, Scalar> out;
  for (auto& [c, part] : split) {
    auto it = parts_.find(c);
    SVec r = it == parts_.end() ? part : it->second.reduce(part);
    for (const auto& [i, a] : r) out[i] += a;
  }
  return svec_from_map(out);
}

bool GradedSubspace::contains(const SVec& v) const { return reduce(v).empty(); }

std::optional<SVec> GradedSubspace::coordinates(const SVec& v) const {
  std::map<int, SVec> split;
  for (const auto& e : v) split[comp_of(e.first)].push_back(e);
  std::map<int, Scalar> out;
  int offset = 0;
  auto s = split.begin();
  for (const auto& [c, ech] : parts_) {
    while (s != split.end() && s->first < c) {
      if (!s->second.empty()) return std::nullopt;  // component with no rows
      ++s;
    }
    if (s != split.end() && s->first == c) {
      std::vector<std::pair<int, Scalar>> coords;
      if (!ech.reduce(s->second, &coords).empty()) return std::nullopt;
      for (const auto& [row, a] : coords) out[offset + row] += a;
      ++s;
    }
    offset += ech.rank();
  }
  for (; s != split.end(); ++s)
    if (!s->second.empty()) return std::nullopt;
  return svec_from_map(out);
}

std::vector<SVec> GradedSubspace::rows() const {
  std::vector<SVec> out;
  for (const auto& [c, ech] : parts_) out.insert(out.end(), ech.rows().begin(), ech.rows().end());
  return out;
}

std::vector<int> GradedSubspace::non_pivots() const {
  std::vector<int> out;
  for (int i = 0; i < dim_; ++i) {
    auto it = parts_.find(comp_of(i));
    if (it == parts_.end() || !it->second.is_pivot(i)) out.push_back(i);
  }
  return out;
}

GradedSubspace spin(const FiniteAction& action, const std::vector<SVec>& seeds) {
  GradedSubspace sub(action.dim(), action.component_fn());
  std::deque<SVec> queue;
  for (const auto& s : seeds)
    for (auto& r : sub.insert(s)) queue.push_back(std::move(r));
  while (!queue.empty()) {
    SVec v = std::move(queue.front());
    queue.pop_front();
    for (int g = 0; g < action.generator_count(); ++g)
      for (auto& r : sub.insert(action.apply(g, v))) queue.push_back(std::move(r));
  }
  return sub;
}

Submodule make_submodule(const GradedModule& m, const GradedSubspace& sub) {
  std::vector<SVec> rows = sub.rows();
  int n = static_cast<int>(rows.size());
  std::vector<BasisVector> basis;
  for (const auto& r : rows) basis.push_back(m.basis()[r.front().first]);
  FiniteAction act(m);
  std::vector<PolyMatrix> x, tau;
  for (int g = 0; g < m.generator_count(); ++g) {
    std::vector<PolyVec> cols;
    for (const auto& r : rows) {
      auto coords = sub.coordinates(act.apply(g, r));
      if (!coords) throw std::invalid_argument("subspace is not a submodule");
      cols.push_back(to_polyvec(*coords));
    }
    (g < m.height() ? x : tau).emplace_back(n, std::move(cols));
  }
  return Submodule{GradedModule(m.algebra(), m.height(), {}, basis, x, tau), rows};
}

SVec Quotient::project(const SVec& v) const {
  SVec r = relations.reduce(v);
  SVec out;
  for (const auto& [i, c] : r) {
    auto it = std::lower_bound(kept.begin(), kept.end(), i);
    out.emplace_back(static_cast<int>(it - kept.begin()), c);
  }
  return out;
}

Quotient make_quotient(const GradedModule& m, const GradedSubspace& sub) {
  Quotient q{GradedModule(), sub.non_pivots(), sub};
  int n = static_cast<int>(q.kept.size());
  std::vector<BasisVector> basis;
  for (int i : q.kept) basis.push_back(m.basis()[i]);
  FiniteAction act(m);
  std::vector<PolyMatrix> x, tau;
  for (int g = 0; g < m.generator_count(); ++g) {
    std::vector<PolyVec> cols;
    for (int i : q.kept) cols.push_back(to_polyvec(q.project(act.apply(g, unit_vec(i)))));
    (g < m.height() ? x : tau).emplace_back(n, std::move(cols));
  }
  q.module = GradedModule(m.algebra(), m.height(), {}, basis, x, tau);
  return q;
}

namespace {

// Vectors annihilated by every row of a graded subspace of the dual.
GradedSubspace annihilator(const FiniteAction& act, const GradedSubspace& dual_sub) {
  std::map<int, std::vector<SVec>> by_comp;
  for (const auto& r : dual_sub.rows()) by_comp[act.component(r.front().first)].push_back(r);
  GradedSubspace out(act.dim(), act.component_fn());
  for (int c = 0; c < act.component_count(); ++c) {
    const auto& mem = act.members(c);
    const auto& rows = by_comp[c];
    // column k = pairing of member k with every row
    std::vector<SVec> columns(mem.size());
    for (std::size_t k = 0; k < mem.size(); ++k)
      for (std::size_t r = 0; r < rows.size(); ++r) {
        Scalar a = svec_get(rows[r], mem[k]);
        if (!a.is_zero()) columns[k].emplace_back(static_cast<int>(r), a);
      }
    for (const auto& kv : kernel_of_columns(columns)) {
      SVec v;
      for (const auto& [k, a] : kv) v.emplace_back(mem[k], a);
      std::sort(v.begin(), v.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
      out.insert(v);
    }
  }
  return out;
}

// Action on k copies of the module, generators acting diagonally.
class ReplicatedAction {
 public:
  ReplicatedAction(const FiniteAction& base, int copies) : base_(base), copies_(copies) {}
  int dim() const { return base_.dim() * copies_; }
  int component(int i) const { return base_.component(i % base_.dim()); }
  SVec apply(int g, const SVec& v) const {
    int d = base_.dim();
    std::map<int, SVec> split;
    for (const auto& [i, c] : v) split[i / d].emplace_back(i % d, c);
    SVec out;
    for (const auto& [copy, part] : split)
      for (const auto& [i, c] : base_.apply(g, part)) out.emplace_back(copy * d + i, c);
    return out;
  }
  int generator_count() const { return base_.generator_count(); }

 private:
  const FiniteAction& base_;
  int copies_;
};

}  // namespace

SimplicityResult test_simple(const GradedModule& m) {
  SimplicityResult res;
  if (m.dim() == 0) {
    res.reason = "zero module";
    return res;
  }
  FiniteAction act(m);
  int best = 0;
  for (int c = 1; c < act.component_count(); ++c)
    if (act.members(c).size() < act.members(best).size()) best = c;
  const std::vector<int>& corner = act.members(best);
  int seed = corner.front();

  GradedSubspace gen = spin(act, {unit_vec(seed)});
  if (gen.dim() < m.dim()) {
    res.reason = "a homogeneous vector generates a proper submodule";
    res.witness = std::move(gen);
    return res;
  }
  FiniteAction dual(m, true);
  GradedSubspace dual_gen = spin(dual, {unit_vec(seed)});
  if (dual_gen.dim() < m.dim()) {
    res.reason = "the dual has a proper submodule";
    res.witness = annihilator(act, dual_gen);
    return res;
  }
  int k = static_cast<int>(corner.size());
  if (k == 1) {
    res.simple = true;
    return res;
  }

  // Corner algebra: spin (c_1, ..., c_k) in k copies of M.
  ReplicatedAction rep(act, k);
  GradedSubspace sub(rep.dim(), [&rep](int i) { return rep.component(i); });
  std::deque<SVec> queue;
  SVec start;
  for (int j = 0; j < k; ++j) start.emplace_back(j * m.dim() + corner[j], Scalar(1));
  for (auto& r : sub.insert(start)) queue.push_back(std::move(r));
  while (!queue.empty()) {
    SVec v = std::move(queue.front());
    queue.pop_front();
    for (int g = 0; g < rep.generator_count(); ++g)
      for (auto& r : sub.insert(rep.apply(g, v))) queue.push_back(std::move(r));
  }
  std::vector<SVec> corner_rows;
  for (const auto& r : sub.rows())
    if (act.component(r.front().first % m.dim()) == best) corner_rows.push_back(r);
  if (static_cast<int>(corner_rows.size()) == k * k) {
    res.simple = true;
    return res;
  }

  // Not absolutely simple. Look for a witness among kernels and images of
  // corner elements.
  std::map<int, int> position;
  for (int i = 0; i < k; ++i) position[corner[i]] = i;
  for (const auto& r : corner_rows) {
    // columns[j] = image of c_j
    std::vector<SVec> columns(k);
    for (const auto& [idx, c] : r) columns[idx / m.dim()].emplace_back(position.at(idx % m.dim()), c);
    std::vector<SVec> candidates = kernel_of_columns(columns);
    candidates.insert(candidates.end(), columns.begin(), columns.end());
    for (const auto& cand : candidates) {
      if (cand.empty()) continue;
      SVec v;
      for (const auto& [i, c] : cand) v.emplace_back(corner[i], c);
      std::sort(v.begin(), v.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
      GradedSubspace s = spin(act, {v});
      if (s.dim() < m.dim()) {
        res.reason = "a corner element has a kernel or image generating a proper submodule";
        res.witness = std::move(s);
        return res;
      }
    }
  }
  res.reason = "not absolutely simple (no witness submodule found)";
  return res;
}

bool is_simple(const GradedModule& m) { return test_simple(m).simple; }

std::vector<GradedModule> composition_factors(const GradedModule& m) {
  if (m.dim() == 0) return {};
  SimplicityResult r = test_simple(m);
  if (r.simple) return {m};
  if (!r.witness) throw std::runtime_error("composition series: " + r.reason);
  Submodule sub = make_submodule(m, *r.witness);
  Quotient quo = make_quotient(m, *r.witness);
  std::vector<GradedModule> out = composition_factors(sub.module);
  for (auto& f : composition_factors(quo.module)) out.push_back(std::move(f));
  return out;
}

std::vector<std::vector<SVec>> hom_space(const GradedModule& source, const GradedModule& target, int deg2) {
  if (!source.is_finite() || !target.is_finite()) throw std::invalid_argument("hom_space needs finite modules");
  if (source.height() != target.height()) return {};
  int ds = source.dim();
  int dt = target.dim();
  std::map<std::pair<Word, int>, std::vector<int>> target_by_key;
  for (int i = 0; i < dt; ++i) target_by_key[{target.basis()[i].word, target.basis()[i].deg2}].push_back(i);
  std::vector<std::vector<std::pair<int, int>>> unknowns(ds);  // (target row, unknown id)
  std::vector<std::pair<int, int>> entry_of;                    // unknown -> (row, col)
  for (int j = 0; j < ds; ++j) {
    auto it = target_by_key.find({source.basis()[j].word, source.basis()[j].deg2 + deg2});
    if (it == target_by_key.end()) continue;
    for (int i : it->second) {
      unknowns[j].emplace_back(i, static_cast<int>(entry_of.size()));
      entry_of.emplace_back(i, j);
    }
  }
  int nu = static_cast<int>(entry_of.size());
  if (nu == 0) return {};
  std::vector<std::map<long, Scalar>> cols(nu);
  for (int g = 0; g < source.generator_count(); ++g) {
    std::vector<SVec> gs = scalar_columns(source.generator(g));
    std::vector<SVec> gt = scalar_columns(target.generator(g));
    auto key = [&](int j, int i) { return (static_cast<long>(g) * ds + j) * dt + i; };
    for (int j = 0; j < ds; ++j) {
      // H (g e_j) = sum_l gs[l][j] H e_l
      for (const auto& [l, c] : gs[j])
        for (const auto& [i, u] : unknowns[l]) cols[u][key(j, i)] += c;
      // g (H e_j)
      for (const auto& [i, u] : unknowns[j])
        for (const auto& [i2, c] : gt[i]) cols[u][key(j, i2)] -= c;
    }
  }
  std::map<long, int> compress;
  std::vector<SVec> columns(nu);
  for (int u = 0; u < nu; ++u) {
    for (const auto& [k, c] : cols[u]) {
      if (c.is_zero()) continue;
      auto [it, inserted] = compress.try_emplace(k, static_cast<int>(compress.size()));
      columns[u].emplace_back(it->second, c);
    }
    std::sort(columns[u].begin(), columns[u].end(), [](const auto& p, const auto& q) { return p.first < q.first; });
  }
  std::vector<std::vector<SVec>> out;
  for (const auto& kv : kernel_of_columns(columns)) {
    std::vector<std::map<int, Scalar>> mat(ds);
    for (const auto& [u, c] : kv) mat[entry_of[u].second][entry_of[u].first] = c;
    std::vector<SVec> hom;
    for (const auto& col : mat) hom.push_back(svec_from_map(col));
    out.push_back(std::move(hom));
  }
  return out;
}

bool is_isomorphic(const GradedModule& a, const GradedModule& b, std::uint64_t seed) {
  if (a.dim() != b.dim() || a.height() != b.height()) return false;
  if (a.dim() == 0) return true;
  if (q_character(a) != q_character(b)) return false;
  auto homs = hom_space(a, b, 0);
  if (homs.empty()) return false;
  auto bijective = [&](const std::vector<SVec>& cols) { return rank_of(cols) == a.dim(); };
  for (const auto& h : homs)
    if (bijective(h)) return true;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dist(-7, 7);
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::vector<SVec> combo(a.dim());
    for (const auto& h : homs) {
      Scalar c(dist(rng));
      for (int j = 0; j < a.dim(); ++j) combo[j] = svec_add(combo[j], c, h[j]);
    }
    if (bijective(combo)) return true;
  }
  return false;
}

GradedHom scalar_hom(ModulePtr source, ModulePtr target, const std::vector<SVec>& columns) {
  std::vector<PolyVec> cols;
  for (const auto& c : columns) cols.push_back(to_polyvec(c));
  int rows = target->dim();
  return GradedHom{std::move(source), std::move(target), PolyMatrix(rows, std::move(cols)), {}, {}};
}

}  // namespace klr
