#pragma once

#include <cstdint>
#include <vector>

#include "klr/cartan.hpp"

namespace klr {

// Permutation in one-line notation, 0-based: perm[k] is the image of k.
using Perm = std::vector<std::uint8_t>;
// Reduced word as a list of simple reflection indices (0-based: s_0 swaps 0,1).
using ReducedWord = std::vector<int>;

Perm perm_identity(int n);
int perm_length(const Perm& u);
Perm perm_compose(const Perm& a, const Perm& b);  // a after b
Perm perm_inverse(const Perm& u);
Perm perm_left_mul(int l, const Perm& u);   // s_l u
Perm perm_right_mul(const Perm& u, int l);  // u s_l
bool has_left_descent(const Perm& u, int l);
Perm perm_from_word(int n, const ReducedWord& w);
// Lexicographically smallest reduced word.
ReducedWord lex_reduced_word(const Perm& u);
// (u nu)_{u(k)} = nu_k.
Word act_on_word(const Perm& u, const Word& nu);

// Block-swap permutation w[m,n]: k -> k+n for k < m, k -> k-m otherwise.
Perm longest_shuffle(int m, int n);

struct CosetRep {
  Perm perm;
  ReducedWord word;
};

// Minimal length representatives of S_n / (S_{n_1} x ... x S_{n_k}), each with
// its lexicographically smallest reduced word, sorted by (length, word).
std::vector<CosetRep> minimal_coset_reps(const std::vector<int>& blocks);
std::vector<CosetRep> minimal_coset_reps(int m, int n);

// Block boundaries: starts[i] is the first position of block i; last entry is n.
std::vector<int> block_starts(const std::vector<int>& blocks);

// Splits u = w v with w a minimal coset representative and v in the parabolic
// subgroup of the block structure.
struct ParabolicSplit {
  Perm coset;
  Perm parabolic;
};
ParabolicSplit parabolic_split(const Perm& u, const std::vector<int>& blocks);
bool is_minimal_rep(const Perm& u, const std::vector<int>& blocks);
bool in_parabolic(const Perm& u, const std::vector<int>& blocks);

// Canonical word of u relative to a block structure: the lex word of the
// coset part followed by the lex words of the per-block parts.
ReducedWord chosen_word(const Perm& u, const std::vector<int>& blocks);

}  // namespace klr
