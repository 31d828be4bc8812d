#include "klr/rewrite.hpp"

#include <numeric>
#include <stdexcept>

namespace klr {

namespace {

constexpr int kMaxDepth = 20000;

struct DepthGuard {
  int& depth;
  explicit DepthGuard(int& d) : depth(d) {
    if (++depth > kMaxDepth) throw std::logic_error("rewriting did not terminate within the depth bound");
  }
  ~DepthGuard() { --depth; }
};

}  // namespace

KlrNormalizer::KlrNormalizer(AlgebraPtr alg, Word nu, std::vector<int> blocks)
    : alg_(std::move(alg)), nu_(std::move(nu)), blocks_(std::move(blocks)) {
  n_ = static_cast<int>(nu_.size());
  if (std::accumulate(blocks_.begin(), blocks_.end(), 0) != n_)
    throw std::invalid_argument("block sizes do not match the word length");
}

KlrNormalizer::Element KlrNormalizer::basis(const Perm& u, Monomial a) {
  monomial_trim(a);
  Element e;
  e.emplace(Term{u, std::move(a)}, Scalar(1));
  return e;
}

void KlrNormalizer::add_scaled(Element& target, const Element& source, const Scalar& c, const Monomial& shift) {
  if (c.is_zero()) return;
  for (const auto& [term, coeff] : source) {
    Term t{term.first, shift.empty() ? term.second : monomial_mul(term.second, shift)};
    if (!shift.empty()) monomial_trim(t.second);
    auto [it, inserted] = target.try_emplace(std::move(t), Scalar(0));
    it->second += c * coeff;
    if (it->second.is_zero()) target.erase(it);
  }
}

const ReducedWord& KlrNormalizer::chosen(const Perm& u) {
  auto it = chosen_cache_.find(u);
  if (it != chosen_cache_.end()) return it->second;
  return chosen_cache_.emplace(u, chosen_word(u, blocks_)).first->second;
}

const KlrNormalizer::Element& KlrNormalizer::x_times(int k, const Perm& u) {
  auto key = std::make_pair(k, u);
  auto it = x_cache_.find(key);
  if (it != x_cache_.end()) return it->second;
  DepthGuard guard(depth_);
  Element result;
  const ReducedWord& word = chosen(u);
  if (word.empty()) {
    Monomial a(k + 1, 0);
    a[k] = 1;
    result = basis(u, a);
  } else {
    int l = word.front();
    Perm rest = perm_left_mul(l, u);
    Word mid = left_word(rest);
    bool equal = mid[l] == mid[l + 1];
    int moved = k == l ? l + 1 : (k == l + 1 ? l : k);
    Element inner = x_times(moved, rest);
    result = tau_times(l, inner);
    if (equal && k == l) add_scaled(result, basis(rest), Scalar(-1), {});
    if (equal && k == l + 1) add_scaled(result, basis(rest), Scalar(1), {});
  }
  return x_cache_.emplace(key, std::move(result)).first->second;
}

const KlrNormalizer::Element& KlrNormalizer::tau_times(int l, const Perm& u) {
  auto key = std::make_pair(l, u);
  auto it = tau_cache_.find(key);
  if (it != tau_cache_.end()) return it->second;
  DepthGuard guard(depth_);
  Element result;
  Perm p = perm_left_mul(l, u);
  if (!has_left_descent(u, l)) {
    const ReducedWord& target = chosen(p);
    if (target.front() == l) {
      result = basis(p);
    } else {
      ReducedWord w{l};
      const ReducedWord& cu = chosen(u);
      w.insert(w.end(), cu.begin(), cu.end());
      int first = target.front();
      MoveResult mr = move_to_front(w, first);
      Element inner = word_normal_form(mr.rest);
      result = tau_times(first, inner);
      add_scaled(result, mr.correction, Scalar(1), {});
    }
  } else {
    MoveResult mr = move_to_front(chosen(u), l);
    Word mid = left_word(p);
    Poly q = alg_->q().at(mid[l], mid[l + 1]).remap({l, l + 1});
    Element inner = word_normal_form(mr.rest);
    result = poly_times(q, inner);
    Element corr = tau_times(l, mr.correction);
    add_scaled(result, corr, Scalar(1), {});
  }
  return tau_cache_.emplace(key, std::move(result)).first->second;
}

const KlrNormalizer::MoveResult& KlrNormalizer::move_to_front(const ReducedWord& word, int t) {
  auto key = std::make_pair(word, t);
  auto it = move_cache_.find(key);
  if (it != move_cache_.end()) return it->second;
  DepthGuard guard(depth_);
  if (word.empty()) throw std::logic_error("move_to_front on an empty word");
  MoveResult res;
  int a = word.front();
  ReducedWord tail(word.begin() + 1, word.end());
  if (a == t) {
    res.rest = tail;
  } else if (std::abs(a - t) > 1) {
    MoveResult inner = move_to_front(tail, t);
    res.rest.push_back(a);
    res.rest.insert(res.rest.end(), inner.rest.begin(), inner.rest.end());
    res.correction = tau_times(a, inner.correction);
  } else {
    MoveResult first = move_to_front(tail, t);
    MoveResult second = move_to_front(first.rest, a);
    const ReducedWord& base = second.rest;
    res.rest = {a, t};
    res.rest.insert(res.rest.end(), base.begin(), base.end());
    Element corr = tau_times(a, tau_times(t, second.correction));
    add_scaled(corr, tau_times(a, first.correction), Scalar(1), {});
    int k = std::min(a, t);
    Word mid = left_word(perm_from_word(n_, base));
    if (mid[k] == mid[k + 2]) {
      Poly qb = alg_->qbar(mid[k], mid[k + 1]).remap({k, k + 1, k + 2});
      Scalar sign = (a == k) ? Scalar(-1) : Scalar(1);
      Element braid = poly_times(qb, word_normal_form(base));
      add_scaled(corr, braid, sign, {});
    }
    res.correction = std::move(corr);
  }
  return move_cache_.emplace(key, std::move(res)).first->second;
}

const KlrNormalizer::Element& KlrNormalizer::word_normal_form(const ReducedWord& word) {
  auto it = word_cache_.find(word);
  if (it != word_cache_.end()) return it->second;
  DepthGuard guard(depth_);
  Element result;
  if (word.empty()) {
    result = basis(perm_identity(n_));
  } else {
    ReducedWord tail(word.begin() + 1, word.end());
    Element inner = word_normal_form(tail);
    result = tau_times(word.front(), inner);
  }
  return word_cache_.emplace(word, std::move(result)).first->second;
}

KlrNormalizer::Element KlrNormalizer::word_element(const ReducedWord& word) {
  for (int l : word)
    if (l < 0 || l + 1 >= n_) throw std::out_of_range("crossing index out of range");
  return word_normal_form(word);
}

KlrNormalizer::Element KlrNormalizer::x_times(int k, const Element& e) {
  Element out;
  for (const auto& [term, c] : e) {
    const Element& part = x_times(k, term.first);
    add_scaled(out, part, c, term.second);
  }
  return out;
}

KlrNormalizer::Element KlrNormalizer::tau_times(int l, const Element& e) {
  Element out;
  for (const auto& [term, c] : e) {
    const Element& part = tau_times(l, term.first);
    add_scaled(out, part, c, term.second);
  }
  return out;
}

KlrNormalizer::Element KlrNormalizer::poly_times(const Poly& p, const Element& e) {
  Element out;
  for (const auto& [m, c] : p.terms()) {
    Element cur = e;
    for (std::size_t k = 0; k < m.size(); ++k)
      for (int r = 0; r < m[k]; ++r) cur = x_times(static_cast<int>(k), cur);
    add_scaled(out, cur, c, {});
  }
  return out;
}

}  // namespace klr
