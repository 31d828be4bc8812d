#include "doctest.h"
#include "klr/catalog.hpp"
#include "klr/io.hpp"
#include "klr/rmatrix.hpp"

using namespace klr;

namespace {

void check_round_trip(const GradedModule& m) {
  GradedModule back = module_from_json(module_to_json(m));
  CHECK(back.dim() == m.dim());
  CHECK(back.vars().size() == m.vars().size());
  if (m.is_finite()) CHECK(q_character(back) == q_character(m));
  CHECK(check_relations(back).ok() == check_relations(m).ok());
  for (int g = 0; g < m.generator_count(); ++g) CHECK(back.generator(g) == m.generator(g));
  CHECK(module_to_json(back) == module_to_json(m));
}

}  // namespace

TEST_CASE("module documents round-trip") {
  AlgebraPtr a3 = ambient_A(3);
  AlgebraPtr b3 = ambient_B(3);
  check_round_trip(simple_module(a3, 1));
  check_round_trip(one_dim_module(a3, {0, 1}));
  check_round_trip(affinization_L12(a3));
  check_round_trip(build_K(a3, 0, 2));
  check_round_trip(affinization_B1(b3));
  check_round_trip(module_B2(b3));
  check_round_trip(convolve(simple_module(a3, 0), simple_module(a3, 1)));
  AffinizationReport before = check_affinization(module_B2(b3));
  AffinizationReport after = check_affinization(module_from_json(module_to_json(module_B2(b3))));
  CHECK(before.valid == after.valid);
  CHECK(before.strong == after.strong);
  CHECK(before.central == after.central);
}

TEST_CASE("algebra documents") {
  AlgebraPtr b3 = ambient_B(3);
  AlgebraPtr back = algebra_from_json(algebra_to_json(*b3));
  CHECK(back->same_parameters(*b3));
  // missing Q entries are filled from the transpose or set to 1
  AlgebraPtr a3 = algebra_from_json(R"({"format": 1, "index_set": ["1", "2", "3"],
    "form": [[2, -1, 0], [-1, 2, -1], [0, -1, 2]],
    "qpoly": [{"i": "1", "j": "2", "terms": [{"p": 1, "q": 0, "coeff": "1"}, {"p": 0, "q": 1, "coeff": "-1"}]},
              {"i": 2, "j": 3, "terms": [{"p": 1, "q": 0, "coeff": "1"}, {"p": 0, "q": 1, "coeff": "-1"}]}]})");
  CHECK(a3->same_parameters(*ambient_A(3)));
}

TEST_CASE("malformed documents name the offending field") {
  auto message = [](auto&& fn) -> std::string {
    try {
      fn();
    } catch (const InputError& e) {
      return e.what();
    }
    return "";
  };
  std::string doc = module_to_json(simple_module(ambient_A(2), 0));
  CHECK(message([] { module_from_json("{not json"); }).rfind("document:", 0) == 0);
  std::string no_format = doc;
  no_format.replace(no_format.rfind("\"format\":1"), 10, "\"format\":7");
  CHECK(message([&] { module_from_json(no_format); }).find("module.format") != std::string::npos);
  CHECK(message([] { algebra_from_json(R"({"format": 1, "index_set": ["1"], "form": [[2, 0]]})"); })
            .find("algebra.form[0]") != std::string::npos);
  CHECK(message([] { algebra_from_json(R"({"format": 1, "index_set": ["1", "2"], "form": [[2, -1], [-1, 2]]})"); })
            .find("no Q-polynomial") != std::string::npos);
  std::string bad_entry = module_to_json(convolve(simple_module(ambient_A(2), 0), simple_module(ambient_A(2), 1)));
  bad_entry.replace(bad_entry.find("\"tau\":[["), 8, "\"tau\":[[[9,0,\"1\"],");
  CHECK(message([&] { module_from_json(bad_entry); }).find("module.tau[0][0]") != std::string::npos);
  CHECK(message([] { datum_from_json(R"({"format": 1, "catalog": "D", "ell": 9})"); }).find("datum.ell") !=
        std::string::npos);
}

TEST_CASE("datum documents round-trip") {
  DualityDatum d = duality_datum("D", 4);
  DualityDatum back = datum_from_json(datum_to_json(d));
  CHECK(axioms_ok(check_axioms(back)));
  CHECK(derive_cartan(back).cartan == derive_cartan(d).cartan);
  CHECK(derive_cartan(back).skew.values == derive_cartan(d).skew.values);
  DualityDatum named = datum_from_json(R"({"format": 1, "catalog": "C", "ell": 3})");
  CHECK(derive_cartan(named).cartan == derive_cartan(duality_datum("C", 3)).cartan);
  // without R the normalized R-matrices are used
  AlgebraPtr a2 = ambient_A(2);
  std::string doc = R"({"format": 1, "name": "rank one", "ambient": )" + algebra_to_json(*a2) +
                    R"(, "labels": ["1"], "modules": [)" +
                    module_to_json(symmetric_affinization(simple_module(a2, 0)), false) + "]}";
  DualityDatum one = datum_from_json(doc);
  CHECK(derive_cartan(one).cartan == std::vector<std::vector<int>>{{2}});
}
