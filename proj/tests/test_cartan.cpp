#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "klr/catalog.hpp"
#include "klr/perm.hpp"

using namespace klr;

namespace {

long binomial(int n, int k) {
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

int inversions(const Perm& p) {
  int c = 0;
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = a + 1; b < p.size(); ++b) c += p[a] > p[b];
  return c;
}

// Minimal coset representatives by brute force: permutations increasing on
// each block.
std::set<Perm> brute_force_reps(int m, int n) {
  std::set<Perm> out;
  Perm p = perm_identity(m + n);
  do {
    bool ok = true;
    for (int k = 0; k + 1 < m + n; ++k)
      if (k + 1 != m && p[k] > p[k + 1]) ok = false;
    if (ok) out.insert(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

TEST_CASE("Cartan datum validation") {
  CartanDatum a2{{"1", "2"}, {{2, -1}, {-1, 2}}};
  CHECK(validate_cartan(a2).ok());
  CartanDatum b2{{"1", "2"}, {{2, -2}, {-2, 4}}};
  CHECK(validate_cartan(b2).ok());
  CHECK(b2.cartan_matrix() == std::vector<std::vector<int>>{{2, -2}, {-1, 2}});
  CartanDatum odd{{"1"}, {{3}}};
  Report r = validate_cartan(odd);
  REQUIRE_FALSE(r.ok());
  CHECK(r.issues.front().find("condition (1)") != std::string::npos);
  CHECK(is_finite_type(a2.form));
  CHECK_FALSE(is_finite_type({{2, -2}, {-2, 2}}));
}

TEST_CASE("parameter polynomials of the ambient algebras") {
  auto a3 = ambient_A(3);
  CHECK(validate_qpolys(a3->q(), a3->datum()).ok());
  Poly u = Poly::variable(0), v = Poly::variable(1);
  CHECK(a3->q().at(0, 1) == u - v);
  CHECK(a3->q().at(1, 0) == v - u);
  CHECK(a3->q().at(0, 2) == Poly(1));
  CHECK(a3->q().at(1, 1).is_zero());
  auto b3 = ambient_B(3);
  CHECK(validate_qpolys(b3->q(), b3->datum()).ok());
  CHECK(b3->q().at(0, 1) == u.pow(2) - v);
  CHECK(b3->q().at(1, 2) == u - v);
  // u - v on the type B form violates the support condition
  QPolys bad = b3->q();
  bad.table[0][1] = u - v;
  bad.table[1][0] = v - u;
  CHECK_FALSE(validate_qpolys(bad, b3->datum()).ok());
}

TEST_CASE("qbar is the divided difference of Q") {
  auto a2 = ambient_A(2);
  auto b2 = ambient_B(2);
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> pick(-9, 9);
  for (int t = 0; t < 5; ++t) {
    Scalar u(pick(rng)), v(pick(rng)), w(pick(rng));
    CHECK(qbar_eval(a2->q(), 0, 1, u, v, w) == Scalar(1));
    CHECK(qbar_eval(b2->q(), 0, 1, u, v, w) == u + w);
    CHECK(qbar_eval(a2->q(), 0, 0, u, v, w) == Scalar(0));
    for (const auto& alg : {a2, b2})
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          const Poly& q = alg->q().at(i, j);
          Scalar lhs = (u - w) * qbar_eval(alg->q(), i, j, u, v, w);
          Scalar rhs = q.evaluate({u, v}) - q.evaluate({w, v});
          CHECK(lhs == rhs);
        }
  }
}

TEST_CASE("minimal coset representatives agree with brute force") {
  for (int m = 0; m <= 7; ++m)
    for (int n = 0; m + n <= 7; ++n) {
      auto reps = minimal_coset_reps(m, n);
      CHECK(static_cast<long>(reps.size()) == binomial(m + n, m));
      std::set<Perm> got;
      for (const auto& r : reps) {
        got.insert(r.perm);
        CHECK(static_cast<int>(r.word.size()) == inversions(r.perm));
        CHECK(perm_from_word(m + n, r.word) == r.perm);
      }
      CHECK(got == brute_force_reps(m, n));
      for (std::size_t k = 1; k < reps.size(); ++k) {
        bool ordered = reps[k - 1].word.size() < reps[k].word.size() ||
                       (reps[k - 1].word.size() == reps[k].word.size() && reps[k - 1].word < reps[k].word);
        CHECK(ordered);
      }
    }
  auto r11 = minimal_coset_reps(1, 1);
  CHECK(r11[0].word.empty());
  CHECK(r11[1].word == ReducedWord{0});
}

TEST_CASE("block swap permutation") {
  CHECK(longest_shuffle(1, 1) == Perm{1, 0});
  Perm w21 = longest_shuffle(2, 1);
  CHECK(w21 == Perm{1, 2, 0});
  CHECK(lex_reduced_word(w21).size() == 2);
  CHECK(perm_from_word(3, lex_reduced_word(w21)) == w21);
  CHECK(longest_shuffle(0, 3) == perm_identity(3));
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) CHECK(perm_length(longest_shuffle(m, n)) == m * n);
}

TEST_CASE("generator degrees") {
  auto a3 = ambient_A(3);
  CHECK(generator_degree2(*a3, "x", {0, 1}, 0) == 4);
  CHECK(generator_degree2(*a3, "tau", {0, 1}, 0) == 2);
  CHECK(generator_degree2(*a3, "e", {0, 1}, 0) == 0);
  CHECK_THROWS(generator_degree2(*a3, "tau", {0, 1}, 1));
  SkewForm c{{{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}};
  auto twisted = a3->with_skew(c);
  CHECK(generator_degree2(*twisted, "tau", {0, 1}, 0) == 0);
  CHECK(generator_degree2(*twisted, "tau", {1, 0}, 0) == 4);
}

TEST_CASE("parity map") {
  auto a3 = ambient_A(3);
  CHECK(parity(a3->datum(), {0, 1}) == 1);
  for (const Word& nu : {Word{0, 1}, Word{0, 1, 2}, Word{2, 0, 1, 0}})
    for (int k = 0; k + 1 < static_cast<int>(nu.size()); ++k) {
      Word s = nu;
      std::swap(s[k], s[k + 1]);
      int diff = ((parity(a3->datum(), s) - parity(a3->datum(), nu)) % 2 + 2) % 2;
      CHECK(diff == ((a3->datum().form[nu[k]][nu[k + 1]] % 2) + 2) % 2);
    }
}
