#include "doctest.h"
#include "klr/catalog.hpp"
#include "klr/duality.hpp"

using namespace klr;

namespace {

ModulePtr share(GradedModule m) { return std::make_shared<GradedModule>(std::move(m)); }

}  // namespace

TEST_CASE("rank-one datum from a single affinization") {
  auto a2 = ambient_A(2);
  auto l1z = share(symmetric_affinization(simple_module(a2, 0)));
  DualityDatum d = datum_from_affinizations(a2, {"1"}, {l1z});
  DerivedCartan dc = derive_cartan(d);
  CHECK(dc.cartan == std::vector<std::vector<int>>{{2}});
  CHECK(dc.finite);
  // zeroing r breaks F(b)
  DualityDatum broken = d;
  broken.r[0].matrix = PolyMatrix(broken.r[0].matrix.rows(), broken.r[0].matrix.cols());
  auto checks = check_axioms(broken);
  CHECK_FALSE(checks[1].report.ok());
  CHECK(checks[1].axiom == "F(b)");
}

TEST_CASE("type D datum: axioms, Cartan matrix and degrees") {
  DualityDatum d = duality_datum("D", 4);
  for (const auto& c : check_axioms(d)) {
    std::string first = c.report.ok() ? "" : c.report.issues.front();
    INFO(c.axiom << ": " << first);
    CHECK(c.report.ok());
  }
  DerivedCartan dc = derive_cartan(d);
  std::vector<std::vector<int>> d4{{2, 0, -1, 0}, {0, 2, -1, 0}, {-1, -1, 2, -1}, {0, 0, -1, 2}};
  CHECK(dc.cartan == d4);
  CHECK(dc.finite);
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) {
      if (j == k) continue;
      int a = j + 1, b = k + 1;
      int expect = 0;
      if (a == 2 && b == 1)
        expect = -1;
      else if (std::abs(a - b) == 1 || (a == 1 && b == 3) || (a == 3 && b == 1))
        expect = 1;
      INFO("R(" << a << "," << b << ")");
      CHECK(dc.r_deg2[j][k] == 2 * expect);
    }
}

TEST_CASE("delta bimodule relations") {
  DeltaBimodule delta(duality_datum("D", 4));
  for (std::vector<int> gamma : {std::vector<int>{1, 0, 1, 0}, {0, 2, 0, 0}, {1, 1, 1, 0}, {2, 0, 0, 0}}) {
    Report rep = check_delta(delta, gamma);
    std::string first = rep.issues.empty() ? "" : rep.issues.front();
    INFO(first);
    CHECK(rep.ok());
  }
}

TEST_CASE("functor on the type D examples") {
  DeltaBimodule delta(duality_datum("D", 4));
  const AlgebraPtr& rd = delta.algebra();
  const AlgebraPtr& a4 = delta.datum().ambient;
  // F(L(j)) = M_j / z M_j
  for (int j = 0; j < 4; ++j) {
    GradedModule f = apply_functor(delta, one_dim_module(rd, {j})).module();
    CHECK(is_isomorphic(f, specialize_zero(*delta.datum().modules[j])));
  }
  GradedModule l13 = one_dim_module(rd, {0, 2});
  auto l1 = share(one_dim_module(rd, {0}));
  auto l3 = share(one_dim_module(rd, {2}));
  CHECK(is_isomorphic(l13, simple_head(l1, l3)));
  GradedModule f13 = apply_functor(delta, l13).module();
  CHECK(f13.dim() == 1);
  auto l12 = share(one_dim_module(a4, {0, 1}));
  auto m3 = share(simple_module(a4, 2));
  GradedModule l123 = simple_head(l12, m3);
  CHECK(l123.dim() == 1);
  CHECK(l123.basis()[0].word == Word{0, 1, 2});
  CHECK(is_isomorphic(f13, l123));
  GradedModule l132 = one_dim_module(rd, {0, 2, 1});
  CHECK(apply_functor(delta, l132).module().dim() == 0);
}

namespace {

std::string first_issue(const Report& r) { return r.issues.empty() ? "" : r.issues.front(); }

void check_all_axioms(const DualityDatum& d) {
  for (const auto& c : check_axioms(d)) {
    std::string first = first_issue(c.report);
    INFO(d.name << " " << c.axiom << ": " << first);
    CHECK(c.report.ok());
  }
}

Poly u_var(int power = 1) { return Poly::variable(0, power); }
Poly v_var(int power = 1) { return Poly::variable(1, power); }

// Columns of the unique (up to scalar) degree-0 map, or empty when the hom
// space is not one-dimensional.
std::vector<SVec> unique_map(const GradedModule& a, const GradedModule& b) {
  auto homs = hom_space(a, b, 0);
  return homs.size() == 1 ? homs.front() : std::vector<SVec>{};
}

PolyVec apply_columns(const std::vector<SVec>& cols, const PolyVec& v) {
  std::map<int, Scalar> acc;
  for (const auto& [i, p] : v)
    for (const auto& [j, c] : cols.at(i)) acc[j] += p.constant_term() * c;
  return to_polyvec(svec_from_map(acc));
}

}  // namespace

TEST_CASE("type C datum") {
  DualityDatum d = duality_datum("C", 3);
  check_all_axioms(d);
  DerivedCartan dc = derive_cartan(d);
  CHECK(dc.cartan == std::vector<std::vector<int>>{{2, -1, 0}, {-2, 2, -1}, {0, -1, 2}});
  CHECK(dc.q.at(0, 1) == u_var() + v_var(2));
}

TEST_CASE("type B1 datum") {
  DualityDatum d = duality_datum("B1", 3);
  check_all_axioms(d);
  DerivedCartan dc = derive_cartan(d);
  CHECK(dc.cartan == std::vector<std::vector<int>>{{2, -2}, {-1, 2}});
  CHECK(dc.q.at(0, 1) == u_var(2) - v_var());
  DeltaBimodule delta(d);
  GradedModule f1 = apply_functor(delta, one_dim_module(delta.algebra(), {0})).module();
  CHECK(is_isomorphic(f1, one_dim_module(d.ambient, {0, 1})));
}

TEST_CASE("type B2 datum") {
  DualityDatum d = duality_datum("B2", 4);
  check_all_axioms(d);
  DerivedCartan dc = derive_cartan(d);
  CHECK(dc.cartan == std::vector<std::vector<int>>{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}});
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) {
      if (j == k) continue;
      INFO("Q(" << j + 1 << "," << k + 1 << ")");
      if (std::abs(j - k) == 1)
        CHECK((dc.q.at(j, k) == u_var() - v_var() || dc.q.at(j, k) == v_var() - u_var()));
      else
        CHECK(dc.q.at(j, k) == Poly(1));
    }
  Report rep = check_delta(DeltaBimodule(d), {1, 1, 0});
  INFO(first_issue(rep));
  CHECK(rep.ok());
}

TEST_CASE("functor on affinizations of L(j)") {
  for (std::string name : {"D", "B1"}) {
    DeltaBimodule delta(duality_datum(name, name == "D" ? 4 : 3));
    for (int j = 0; j < delta.datum().size(); ++j) {
      GradedModule nhat = symmetric_affinization(simple_module(delta.algebra(), j));
      AffinizationImage img = functor_on_affinization(delta, nhat, 2, delta.datum().modules[j].get());
      INFO(name << " j=" << j + 1 << ": " << first_issue(img.report));
      CHECK(img.report.ok());
      CHECK(img.dims[1] == 2 * img.dims[0]);
    }
  }
}

TEST_CASE("tensor compatibility") {
  DeltaBimodule d(duality_datum("D", 4));
  GradedModule l1 = simple_module(d.algebra(), 0), l3 = simple_module(d.algebra(), 2);
  Report rep = tensor_compatibility_check(d, l1, l3);
  INFO(first_issue(rep));
  CHECK(rep.ok());
  DeltaBimodule c(duality_datum("C", 3));
  GradedModule l2 = simple_module(c.algebra(), 1);
  rep = tensor_compatibility_check(c, l2, l2);
  INFO(first_issue(rep));
  CHECK(rep.ok());
}

TEST_CASE("exactness on short exact sequences") {
  DeltaBimodule delta(duality_datum("D", 4));
  const AlgebraPtr& rd = delta.algebra();
  // 0 -> z L(2)_z / z^2 -> L(2)_z / z^2 -> L(2) -> 0
  GradedModule b = flatten(symmetric_affinization(simple_module(rd, 1)), {2});
  GradedModule c = simple_module(rd, 1);
  GradedModule a = shift(c, 2 * delta.derived().form.form[1][1]);
  ShortExactSequence seq{a, b, c, unique_map(a, b), unique_map(b, c)};
  REQUIRE(seq.inclusion.size() == 1);
  REQUIRE(seq.projection.size() == 2);
  Report rep = exactness_check(delta, seq);
  INFO(first_issue(rep));
  CHECK(rep.ok());

  // socle and head of L(3) o L(1)
  auto l1 = share(simple_module(rd, 0));
  auto l3 = share(simple_module(rd, 2));
  GradedModule conv31 = convolve(*l3, *l1);
  GradedModule head = simple_head(l3, l1);
  auto factors = composition_factors(conv31);
  REQUIRE(factors.size() == 2);
  GradedModule socle = is_isomorphic(factors[0], head) ? factors[1] : factors[0];
  ShortExactSequence nonsplit{socle, conv31, head, unique_map(socle, conv31), unique_map(conv31, head)};
  REQUIRE(nonsplit.inclusion.size() == 1);
  REQUIRE(nonsplit.projection.size() == 2);
  rep = exactness_check(delta, nonsplit);
  INFO(first_issue(rep));
  CHECK(rep.ok());
  // a broken sequence is reported
  ShortExactSequence broken = nonsplit;
  broken.projection = {SVec{}, SVec{}};
  CHECK_FALSE(exactness_check(delta, broken).ok());
}

TEST_CASE("Ex. D: the composite through L(2) o L(1,2,3) vanishes") {
  AlgebraPtr a4 = ambient_A(4);
  auto l12 = share(one_dim_module(a4, {0, 1}));
  auto l2 = share(simple_module(a4, 1));
  auto l3 = share(simple_module(a4, 2));
  Convolution start({l12, l3, l2});
  Convolution middle({l12, l2, l3});
  Convolution end({l2, l12, l3});
  SlotHom f1(start, middle, 1, r_matrix(l3, l2));
  SlotHom f2(middle, end, 0, r_matrix(l12, l2));
  GradedModule target = convolve(*l2, simple_head(l12, l3));
  std::vector<SVec> f3 = unique_map(end.module(), target);
  REQUIRE(f3.size() == static_cast<std::size_t>(end.dim()));
  CHECK(rank_of(f3) == target.dim());
  PolyVec gen = start.pure_tensor({PolyVec{{0, Poly(1)}}, PolyVec{{0, Poly(1)}}, PolyVec{{0, Poly(1)}}});
  PolyVec mid = f2.apply(f1.apply(gen));
  CHECK_FALSE(mid.empty());
  CHECK(apply_columns(f3, mid).empty());
}
