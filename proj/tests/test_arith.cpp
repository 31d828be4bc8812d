#include <random>

#include "doctest.h"
#include "klr/linalg.hpp"
#include "klr/poly.hpp"
#include "klr/scalar.hpp"

using namespace klr;

TEST_CASE("scalar parsing and field arithmetic") {
  CHECK(Scalar::parse("3/6") == Scalar(1) / Scalar(2));
  CHECK(Scalar::parse("-4") == Scalar(-4));
  {
    FieldScope f7(7);
    CHECK(Scalar(3) * Scalar(5) == Scalar(1));
    CHECK(Scalar(3).inverse() == Scalar(5));
    CHECK(Scalar(-1) == Scalar(6));
  }
  CHECK(Scalar(-1) != Scalar(6));
  CHECK(parse_field("rational") == 0);
  CHECK(parse_field("fp:11") == 11);
  CHECK_THROWS(parse_field("fp:12"));
  CHECK_THROWS(parse_field("reals"));
}

TEST_CASE("polynomial ring basics") {
  Poly u = Poly::variable(0), v = Poly::variable(1);
  Poly p = (u - v) * (u + v);
  CHECK(p == u.pow(2) - v.pow(2));
  CHECK(p.divide_exact(u - v).value() == u + v);
  CHECK_FALSE((u.pow(2) + Poly(1)).divide_exact(u - v).has_value());
  CHECK(gcd(p, (u - v) * u) == u - v);
  CHECK(divided_difference(u.pow(2), 0, 1) == u + v);
  CHECK(p.swap_vars(0, 1) == -p);
  CHECK(p.homogeneous_degree({1, 1}).value() == 2);
  CHECK_FALSE((u + v.pow(2)).homogeneous_degree({1, 1}).has_value());
  CHECK((u + v.pow(2)).homogeneous_degree({2, 1}).value() == 2);
}

TEST_CASE("divided difference identity on random polynomials") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(-3, 3), expo(0, 3);
  for (int trial = 0; trial < 20; ++trial) {
    Poly f;
    for (int t = 0; t < 4; ++t) f.add_term({expo(rng), expo(rng), expo(rng)}, Scalar(coef(rng)));
    Poly d = divided_difference(f, 0, 2);
    CHECK((Poly::variable(0) - Poly::variable(2)) * d == f - f.swap_vars(0, 2));
  }
}

TEST_CASE("echelon and kernels") {
  Echelon e(3);
  CHECK(e.insert({{0, Scalar(1)}, {1, Scalar(2)}}) == 0);
  CHECK(e.insert({{0, Scalar(2)}, {1, Scalar(4)}}) == -1);
  CHECK(e.insert({{1, Scalar(1)}, {2, Scalar(1)}}) == 1);
  CHECK(e.rank() == 2);
  CHECK(e.contains({{0, Scalar(1)}, {1, Scalar(1)}, {2, Scalar(-1)}}));
  // columns (1,0), (0,1), (1,1): kernel spanned by (1,1,-1)
  std::vector<SVec> cols{{{0, Scalar(1)}}, {{1, Scalar(1)}}, {{0, Scalar(1)}, {1, Scalar(1)}}};
  auto ker = kernel_of_columns(cols);
  REQUIRE(ker.size() == 1);
  SVec combo;
  for (const auto& [k, c] : ker[0]) combo = svec_add(combo, c, cols[k]);
  CHECK(combo.empty());
  CHECK(dense_determinant({{Scalar(2), Scalar(-1)}, {Scalar(-1), Scalar(2)}}) == Scalar(3));
  CHECK(dense_rank({{Scalar(1), Scalar(2)}, {Scalar(2), Scalar(4)}}) == 1);
}
