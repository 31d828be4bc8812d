#include <random>

#include "doctest.h"
#include "klr/catalog.hpp"
#include "klr/convolution.hpp"

using namespace klr;

namespace {

ModulePtr share(GradedModule m) { return std::make_shared<GradedModule>(std::move(m)); }

// All interleavings of two words, with multiplicity.
std::map<Word, long> shuffle_words(const Word& a, const Word& b) {
  std::map<Word, long> out;
  int m = static_cast<int>(a.size()), n = static_cast<int>(b.size());
  for (unsigned mask = 0; mask < (1u << (m + n)); ++mask) {
    if (__builtin_popcount(mask) != m) continue;
    Word w;
    int ia = 0, ib = 0;
    for (int k = 0; k < m + n; ++k) w.push_back((mask >> k) & 1u ? a[ia++] : b[ib++]);
    ++out[w];
  }
  return out;
}

std::map<Word, long> shuffle_characters(const std::map<Word, long>& x, const std::map<Word, long>& y) {
  std::map<Word, long> out;
  for (const auto& [a, ca] : x)
    for (const auto& [b, cb] : y)
      for (const auto& [w, c] : shuffle_words(a, b)) out[w] += ca * cb * c;
  return out;
}

}  // namespace

TEST_CASE("one-dimensional modules") {
  auto a3 = ambient_A(3);
  GradedModule l12 = one_dim_module(a3, {0, 1});
  CHECK(check_relations(l12).ok());
  CHECK(qchar_strings(l12) == std::map<std::string, std::string>{{"(1,2)", "1"}});
  CHECK(check_relations(one_dim_module(a3, {0, 1, 2})).ok());
  // the crossing squared would need Q_{1,2}(0,0) = 1
  GradedModule bad = l12;
  bad.set_tau(0, PolyMatrix::identity(1));
  Report r = check_relations(bad);
  REQUIRE_FALSE(r.ok());
  bool tau_square = false;
  for (const auto& s : r.issues) tau_square |= s.rfind("tau-square", 0) == 0;
  CHECK(tau_square);
  CHECK(q_character(GradedModule::zero(a3, 2)).empty());
}

TEST_CASE("convolution of simples in type A") {
  auto a3 = ambient_A(3);
  auto l1 = share(simple_module(a3, 0));
  auto l2 = share(simple_module(a3, 1));
  Convolution c({l1, l2});
  CHECK(c.dim() == 2);
  CHECK(check_relations(c.module()).ok());
  QCharacter ch = q_character(c.module());
  CHECK(ch[Word{0, 1}] == std::map<int, long>{{0, 1}});
  CHECK(ch[Word{1, 0}] == std::map<int, long>{{2, 1}});
  GradedModule l11 = convolve(*l1, *l1);
  CHECK(ungraded_character(l11) == std::map<Word, long>{{{0, 0}, 2}});
  CHECK(check_relations(l11).ok());
  // unit module is neutral
  GradedModule with_unit = convolve(*l1, unit_module(a3));
  CHECK(with_unit.dim() == 1);
  CHECK(q_character(with_unit) == q_character(*l1));
  // tau_1 links both basis vectors, so they share a parity summand
  ParitySplit split = parity_split(c.module());
  CHECK(split.even_indices.size() + split.odd_indices.size() == 2);
  CHECK(split.even_indices.size() * split.odd_indices.size() == 0);
}

TEST_CASE("convolutions of height three and four satisfy the relations") {
  for (auto alg : {ambient_A(3), ambient_B(3)}) {
    std::vector<ModulePtr> simples;
    for (int i = 0; i < 3; ++i) simples.push_back(share(simple_module(alg, i)));
    for (const Word& w : {Word{0, 1, 2}, Word{0, 0, 0}, Word{1, 0, 1}, Word{0, 1, 0, 2}, Word{1, 1, 0, 0}}) {
      std::vector<ModulePtr> f;
      for (int i : w) f.push_back(simples[i]);
      GradedModule m = convolve_all(f);
      CHECK(check_relations(m).ok());
      long expected = 1;
      for (int k = 2; k <= static_cast<int>(w.size()); ++k) expected *= k;
      CHECK(m.dim() == expected);
    }
  }
}

TEST_CASE("dimension and shuffle oracle on random pairs") {
  auto a3 = ambient_A(3);
  std::vector<ModulePtr> pool;
  for (int i = 0; i < 3; ++i) pool.push_back(share(simple_module(a3, i)));
  pool.push_back(share(one_dim_module(a3, {0, 1})));
  pool.push_back(share(one_dim_module(a3, {1, 2})));
  pool.push_back(share(one_dim_module(a3, {0, 1, 2})));
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(pool.size()) - 1);
  for (int t = 0; t < 10; ++t) {
    const auto& a = pool[pick(rng)];
    const auto& b = pool[pick(rng)];
    Convolution c({a, b});
    long binom = 1;
    for (int k = 1; k <= a->height(); ++k) binom = binom * (b->height() + k) / k;
    CHECK(c.dim() == binom * a->dim() * b->dim());
    CHECK(ungraded_character(c.module()) ==
          shuffle_characters(ungraded_character(*a), ungraded_character(*b)));
  }
}

TEST_CASE("lazy convolution matrices survive the handle") {
  auto a3 = ambient_A(3);
  ModulePtr m;
  {
    Convolution c({share(simple_module(a3, 0)), share(simple_module(a3, 1))});
    m = c.module_ptr();
  }
  // tau_1 tau_1 acts by Q_{1,2}(x_1, x_2) = 0
  CHECK(m->tau(0).nonzeros() == 1);
}

TEST_CASE("element-level application agrees with the matrices") {
  auto a3 = ambient_A(3);
  auto l1z = share(symmetric_affinization(simple_module(a3, 0)));
  auto l2 = share(simple_module(a3, 1));
  Convolution c({l1z, l2, l1z});
  const GradedModule& m = c.module();
  CHECK(check_relations(m).ok());
  for (int j = 0; j < m.dim(); ++j) {
    PolyVec e{{j, Poly(1)}};
    for (int k = 0; k < m.height(); ++k) CHECK(c.apply_x(k, e) == m.x(k).apply(e));
    for (int l = 0; l + 1 < m.height(); ++l) CHECK(c.apply_tau(l, e) == m.tau(l).apply(e));
  }
}

TEST_CASE("catalog affinizations") {
  auto a4 = ambient_A(4);
  auto b3 = ambient_B(3);
  auto b4 = ambient_B(4);
  GradedModule l12z = affinization_L12(a4);
  CHECK(check_relations(l12z).ok());
  CHECK(l12z.vars()[0].deg2 == 4);
  GradedModule b1 = affinization_B1(b3);
  CHECK(check_relations(b1).ok());
  CHECK(b1.vars()[0].deg2 == 4);
  GradedModule b2 = module_B2(b4);
  CHECK(check_relations(b2).ok());
  CHECK(b2.vars()[0].deg2 == 8);
  GradedModule l1z = symmetric_affinization(simple_module(a4, 0));
  CHECK(check_relations(l1z).ok());
  CHECK(l1z.x(0) == PolyMatrix::scalar(1, Poly::variable(0)));
  CHECK(l12z.x(0) == PolyMatrix::scalar(1, Poly::variable(0)));
  // affinization in u - v form fails for Q = u^2 - v
  CHECK_THROWS(symmetric_affinization(one_dim_module(b3, {0, 1})));
}

TEST_CASE("K(i^n) in type A_2") {
  auto a2 = ambient_A(2);
  for (int n = 1; n <= 3; ++n) {
    GradedModule k = build_K(a2, 0, n);
    CHECK(check_relations(k).ok());
    CHECK(k.vars()[0].deg2 == 2 * n * 2);
    long fact = 1;
    for (int t = 2; t <= n; ++t) fact *= t;
    CHECK(k.dim() == fact);
    CHECK(central_poly_action(k, 0) == PolyMatrix::scalar(k.dim(), Poly::variable(0)));
    std::vector<ModulePtr> f(n, share(simple_module(a2, 0)));
    CHECK(q_character(specialize_zero(k)) == q_character(convolve_all(f)));
  }
}

TEST_CASE("flatten at two truncation orders") {
  auto a2 = ambient_A(2);
  GradedModule l1z = symmetric_affinization(simple_module(a2, 0));
  for (int order : {3, 4}) {
    GradedModule f = flatten(l1z, {order});
    CHECK(f.dim() == order);
    CHECK(check_relations(f).ok());
    std::map<int, long> expect;
    for (int t = 0; t < order; ++t) expect[4 * t] = 1;
    CHECK(q_character(f)[Word{0}] == expect);
  }
}

TEST_CASE("grading twist") {
  auto a3 = ambient_A(3);
  SkewForm c{{{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}};
  auto l1 = simple_module(a3, 0), l2 = simple_module(a3, 1);
  GradedModule lhs = twist_grading(convolve(l1, l2), c);
  CHECK(check_relations(lhs).ok());
  GradedModule rhs = shift(convolve(twist_grading(l1, c), twist_grading(l2, c)), 1);
  CHECK(q_character(lhs) == q_character(rhs));
  SkewForm neg{{{0, -1, 0}, {1, 0, 0}, {0, 0, 0}}};
  CHECK(q_character(twist_grading(lhs, neg)) == q_character(convolve(l1, l2)));
}
