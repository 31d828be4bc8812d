#include <set>

#include "doctest.h"
#include "klr/catalog.hpp"
#include "klr/rmatrix.hpp"

using namespace klr;

namespace {

ModulePtr share(GradedModule m) { return std::make_shared<GradedModule>(std::move(m)); }

}  // namespace

TEST_CASE("simplicity of small convolutions") {
  auto a3 = ambient_A(3);
  auto l1 = share(simple_module(a3, 0));
  auto l2 = share(simple_module(a3, 1));
  auto l3 = share(simple_module(a3, 2));
  // adjacent colors: length two
  GradedModule l12 = Convolution({l1, l2}).module();
  SimplicityResult r = test_simple(l12);
  CHECK_FALSE(r.simple);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->dim() == 1);
  auto factors = composition_factors(l12);
  REQUIRE(factors.size() == 2);
  std::set<Word> words;
  for (const auto& f : factors) {
    CHECK(f.dim() == 1);
    CHECK(check_relations(f).ok());
    words.insert(f.basis()[0].word);
  }
  CHECK(words == std::set<Word>{{0, 1}, {1, 0}});
  // distant colors commute: simple of dimension 2
  CHECK(is_simple(Convolution({l1, l3}).module()));
  // L(1) o L(1): one component of dimension 2, corner algebra test
  GradedModule l11 = Convolution({l1, l1}).module();
  CHECK(l11.dim() == 2);
  CHECK(is_simple(l11));
  CHECK(is_simple(Convolution({l1, l1, l1}).module()));
}

TEST_CASE("hom spaces and isomorphism") {
  auto a3 = ambient_A(3);
  auto l1 = share(simple_module(a3, 0));
  auto l3 = share(simple_module(a3, 2));
  GradedModule a = Convolution({l1, l3}).module();
  GradedModule b = Convolution({l3, l1}).module();
  CHECK(is_isomorphic(a, b));
  CHECK(hom_space(a, b, 0).size() == 1);
  CHECK(hom_space(a, a, 0).size() == 1);
  auto l2 = share(simple_module(a3, 1));
  CHECK_FALSE(is_isomorphic(Convolution({l1, l2}).module(), Convolution({l2, l1}).module()));
}

TEST_CASE("intertwiner identities") {
  auto a3 = ambient_A(3);
  auto l1 = share(simple_module(a3, 0));
  auto l2 = share(simple_module(a3, 1));
  auto l1z = share(symmetric_affinization(*l1));
  CHECK(check_intertwiners(Convolution({l1z, l2, l1}).module()).ok());
  CHECK(check_intertwiners(Convolution({l1, l1, l2}).module()).ok());
  auto b3 = ambient_B(3);
  auto k = share(build_K(b3, 0, 2));
  auto m2 = share(simple_module(b3, 1));
  CHECK(check_intertwiners(Convolution({k, m2}).module()).ok());
}

TEST_CASE("raw and normalized R-matrices in type A") {
  auto a3 = ambient_A(3);
  auto l1z = share(symmetric_affinization(simple_module(a3, 0), "z"));
  auto l2z = share(symmetric_affinization(simple_module(a3, 1), "w"));
  GradedHom r12 = rmatrix_raw(l1z, l2z);
  CHECK(check_hom(r12).ok());
  CHECK(z_valuation(r12, 1) == 0);
  GradedHom r21 = rmatrix_raw(l2z, l1z);
  auto f = composition_polynomial(r21, r12);
  REQUIRE(f.has_value());
  CHECK(*f == Poly::variable(0) - Poly::variable(1));

  // equal pair: R^2 = id and r is well defined
  NormalizedRMatrix r11 = rmatrix_pair(l1z, l1z);
  CHECK(check_hom(r11.hom).ok());
  CHECK(hom_compose(r11.hom, r11.hom).matrix == PolyMatrix::identity(r11.hom.matrix.cols()));
  GradedHom r = r_endomorphism(r11.hom);
  CHECK(check_hom(r).ok());
  CHECK(r.degree() == std::optional<int>(-l1z->vars()[0].deg2));
  // R = (z_1 - z_2) r + id on test vectors
  PolyVec v{{0, Poly::variable(0) * Poly::variable(0)}, {1, Poly::variable(1)}};
  PolyVec lhs = hom_apply(r11.hom, v);
  PolyVec rhs = scale(hom_apply(r, v), Poly::variable(0) - Poly::variable(1));
  axpy(rhs, Poly(1), v);
  for (auto it = rhs.begin(); it != rhs.end();) it = it->second.is_zero() ? rhs.erase(it) : std::next(it);
  CHECK(lhs == rhs);
}

TEST_CASE("r-matrix image is the simple head") {
  auto a3 = ambient_A(3);
  auto l1 = share(simple_module(a3, 0));
  auto l2 = share(simple_module(a3, 1));
  GradedHom r = r_matrix(l1, l2);
  CHECK_FALSE(r.is_zero());
  GradedModule head = hconv_from(r);
  CHECK(head.dim() == 1);
  CHECK(is_simple(head));
  CHECK(head.basis()[0].word == Word{0, 1});
}

TEST_CASE("affinization checks") {
  auto a2 = ambient_A(2);
  for (int n = 2; n <= 3; ++n) {
    AffinizationReport rep = check_affinization(build_K(a2, 0, n));
    CHECK(rep.valid);
    CHECK(rep.strong);
    REQUIRE(rep.central.size() == 1);
    CHECK(rep.central[0].first == 1);
  }
  auto l1 = share(simple_module(a2, 0));
  auto l1z = share(symmetric_affinization(*l1));
  AffinizationReport good = check_affinization(*l1z);
  CHECK(good.valid);
  CHECK(good.strong);
  AffinizationReport bad = check_affinization(Convolution({l1z, l1}).module());
  CHECK_FALSE(bad.valid);
  auto a3 = ambient_A(3);
  CHECK(check_affinization(affinization_L12(a3)).valid);
}
