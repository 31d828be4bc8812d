#pragma once

#include <map>
#include <unordered_map>
#include <utility>
#include <vector>

#include "klr/cartan.hpp"
#include "klr/perm.hpp"

namespace klr {

// Normal forms in R(beta) e(nu) for a fixed right idempotent nu. An element is
// a combination of tau_{w} x^a e(nu), where w is the chosen reduced word of a
// permutation relative to a block structure (see chosen_word). The defining
// relations are applied as a terminating rewriting system; the measure is the
// number of crossings.
class KlrNormalizer {
 public:
  using Term = std::pair<Perm, Monomial>;
  using Element = std::map<Term, Scalar>;

  KlrNormalizer(AlgebraPtr alg, Word nu, std::vector<int> blocks);

  int height() const { return n_; }
  const Word& right_word() const { return nu_; }
  const std::vector<int>& blocks() const { return blocks_; }

  static Element basis(const Perm& u, Monomial a = {});
  // x_k * tau_{chosen(u)} e(nu)
  const Element& x_times(int k, const Perm& u);
  // tau_l * tau_{chosen(u)} e(nu)
  const Element& tau_times(int l, const Perm& u);
  // Normal form of tau_{w_1} ... tau_{w_m} e(nu) for an arbitrary word.
  Element word_element(const ReducedWord& word);

  Element x_times(int k, const Element& e);
  Element tau_times(int l, const Element& e);
  // Multiplication on the left by a polynomial in x_1..x_n (variable k = x_k).
  Element poly_times(const Poly& p, const Element& e);

  // Left idempotent word of the term with permutation u.
  Word left_word(const Perm& u) const { return act_on_word(u, nu_); }

 private:
  struct MoveResult {
    ReducedWord rest;
    Element correction;
  };
  // For a reduced word W and a left descent t of its permutation, returns
  // (W', C) with tau_W e(nu) = tau_t tau_W' e(nu) + C.
  const MoveResult& move_to_front(const ReducedWord& word, int t);
  const Element& word_normal_form(const ReducedWord& word);
  const ReducedWord& chosen(const Perm& u);

  static void add_scaled(Element& target, const Element& source, const Scalar& c, const Monomial& shift);

  AlgebraPtr alg_;
  Word nu_;
  std::vector<int> blocks_;
  int n_;
  int depth_ = 0;
  std::map<Perm, ReducedWord> chosen_cache_;
  std::map<std::pair<int, Perm>, Element> x_cache_;
  std::map<std::pair<int, Perm>, Element> tau_cache_;
  std::map<std::pair<ReducedWord, int>, MoveResult> move_cache_;
  std::map<ReducedWord, Element> word_cache_;
};

}  // namespace klr
