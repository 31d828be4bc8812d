#include "klr/perm.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace klr {

Perm perm_identity(int n) {
  Perm p(n);
  for (int k = 0; k < n; ++k) p[k] = static_cast<std::uint8_t>(k);
  return p;
}

int perm_length(const Perm& u) {
  int inv = 0;
  for (std::size_t a = 0; a < u.size(); ++a)
    for (std::size_t b = a + 1; b < u.size(); ++b)
      if (u[a] > u[b]) ++inv;
  return inv;
}

Perm perm_compose(const Perm& a, const Perm& b) {
  Perm r(b.size());
  for (std::size_t k = 0; k < b.size(); ++k) r[k] = a[b[k]];
  return r;
}

Perm perm_inverse(const Perm& u) {
  Perm r(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) r[u[k]] = static_cast<std::uint8_t>(k);
  return r;
}

Perm perm_left_mul(int l, const Perm& u) {
  Perm r(u);
  for (auto& v : r) {
    if (v == l)
      v = static_cast<std::uint8_t>(l + 1);
    else if (v == l + 1)
      v = static_cast<std::uint8_t>(l);
  }
  return r;
}

Perm perm_right_mul(const Perm& u, int l) {
  Perm r(u);
  std::swap(r[l], r[l + 1]);
  return r;
}

bool has_left_descent(const Perm& u, int l) {
  int pos_l = -1, pos_next = -1;
  for (std::size_t k = 0; k < u.size(); ++k) {
    if (u[k] == l) pos_l = static_cast<int>(k);
    if (u[k] == l + 1) pos_next = static_cast<int>(k);
  }
  return pos_l > pos_next;
}

Perm perm_from_word(int n, const ReducedWord& w) {
  Perm p = perm_identity(n);
  for (int l : w) {
    if (l < 0 || l + 1 >= n) throw std::out_of_range("reflection index out of range");
    p = perm_right_mul(p, l);
  }
  return p;
}

ReducedWord lex_reduced_word(const Perm& u) {
  ReducedWord w;
  Perm cur(u);
  int n = static_cast<int>(u.size());
  bool progress = true;
  while (progress) {
    progress = false;
    for (int l = 0; l + 1 < n; ++l)
      if (has_left_descent(cur, l)) {
        w.push_back(l);
        cur = perm_left_mul(l, cur);
        progress = true;
        break;
      }
  }
  return w;
}

Word act_on_word(const Perm& u, const Word& nu) {
  Word r(nu.size());
  for (std::size_t k = 0; k < nu.size(); ++k) r[u[k]] = nu[k];
  return r;
}

Perm longest_shuffle(int m, int n) {
  Perm p(m + n);
  for (int k = 0; k < m; ++k) p[k] = static_cast<std::uint8_t>(k + n);
  for (int k = m; k < m + n; ++k) p[k] = static_cast<std::uint8_t>(k - m);
  return p;
}

std::vector<int> block_starts(const std::vector<int>& blocks) {
  std::vector<int> s{0};
  for (int b : blocks) {
    if (b < 0) throw std::invalid_argument("negative block size");
    s.push_back(s.back() + b);
  }
  return s;
}

namespace {

void enumerate_reps(const std::vector<int>& starts, int block, std::vector<bool>& used, Perm& cur,
                    std::vector<Perm>& out) {
  int nblocks = static_cast<int>(starts.size()) - 1;
  int n = starts.back();
  if (block == nblocks) {
    out.push_back(cur);
    return;
  }
  int size = starts[block + 1] - starts[block];
  // Choose an increasing set of `size` unused values.
  std::vector<int> chosen;
  auto rec = [&](auto&& self, int from) -> void {
    if (static_cast<int>(chosen.size()) == size) {
      for (int k = 0; k < size; ++k) cur[starts[block] + k] = static_cast<std::uint8_t>(chosen[k]);
      enumerate_reps(starts, block + 1, used, cur, out);
      return;
    }
    for (int v = from; v < n; ++v) {
      if (used[v]) continue;
      used[v] = true;
      chosen.push_back(v);
      self(self, v + 1);
      chosen.pop_back();
      used[v] = false;
    }
  };
  rec(rec, 0);
}

}  // namespace

std::vector<CosetRep> minimal_coset_reps(const std::vector<int>& blocks) {
  auto starts = block_starts(blocks);
  int n = starts.back();
  std::vector<bool> used(n, false);
  Perm cur(n);
  std::vector<Perm> perms;
  enumerate_reps(starts, 0, used, cur, perms);
  std::vector<CosetRep> reps;
  reps.reserve(perms.size());
  for (auto& p : perms) reps.push_back({p, lex_reduced_word(p)});
  std::sort(reps.begin(), reps.end(), [](const CosetRep& a, const CosetRep& b) {
    if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
    return a.word < b.word;
  });
  return reps;
}

std::vector<CosetRep> minimal_coset_reps(int m, int n) { return minimal_coset_reps(std::vector<int>{m, n}); }

ParabolicSplit parabolic_split(const Perm& u, const std::vector<int>& blocks) {
  auto starts = block_starts(blocks);
  if (starts.back() != static_cast<int>(u.size())) throw std::invalid_argument("block sizes do not sum to n");
  Perm coset(u);
  for (std::size_t b = 0; b + 1 < starts.size(); ++b)
    std::sort(coset.begin() + starts[b], coset.begin() + starts[b + 1]);
  Perm parabolic = perm_compose(perm_inverse(coset), u);
  return {coset, parabolic};
}

bool is_minimal_rep(const Perm& u, const std::vector<int>& blocks) {
  auto starts = block_starts(blocks);
  for (std::size_t b = 0; b + 1 < starts.size(); ++b)
    for (int k = starts[b]; k + 1 < starts[b + 1]; ++k)
      if (u[k] > u[k + 1]) return false;
  return true;
}

bool in_parabolic(const Perm& u, const std::vector<int>& blocks) {
  auto starts = block_starts(blocks);
  for (std::size_t b = 0; b + 1 < starts.size(); ++b)
    for (int k = starts[b]; k < starts[b + 1]; ++k)
      if (u[k] < starts[b] || u[k] >= starts[b + 1]) return false;
  return true;
}

ReducedWord chosen_word(const Perm& u, const std::vector<int>& blocks) {
  auto split = parabolic_split(u, blocks);
  ReducedWord w = lex_reduced_word(split.coset);
  ReducedWord v = lex_reduced_word(split.parabolic);
  w.insert(w.end(), v.begin(), v.end());
  return w;
}

}  // namespace klr
