#include "examples.hpp"

#include <json.hpp>

#include "klr/catalog.hpp"
#include "klr/duality.hpp"
#include "klr/rmatrix.hpp"
#include "klr/submodule.hpp"

using nlohmann::json;
using namespace klr;

namespace {

using Matrix = std::vector<std::vector<int>>;

// The ell at which each example's displayed claims are stated.
int claim_ell(const std::string& name) { return name == "D" || name == "B2" ? 4 : 3; }

struct Claims {
  json list = json::array();
  bool ok = true;
  std::vector<std::string> summary;

  void add(const std::string& what, bool pass, json detail = nullptr) {
    json entry{{"claim", what}, {"ok", pass}};
    if (!detail.is_null()) entry["detail"] = std::move(detail);
    list.push_back(std::move(entry));
    ok = ok && pass;
    summary.push_back(std::string(pass ? "  ok    " : "  FAIL  ") + what);
  }
};

Poly u_var(int power = 1) { return Poly::variable(0, power); }
Poly v_var(int power = 1) { return Poly::variable(1, power); }

std::string composition_str(const DerivedCartan& dc, int j, int k) {
  std::string a = "z" + std::to_string(j + 1), b = "z" + std::to_string(k + 1);
  return dc.q.at(j, k).str({a, b});
}

void cartan_claims(const std::string& name, const DerivedCartan& dc, Claims& claims) {
  if (name == "D") {
    Matrix d4{{2, 0, -1, 0}, {0, 2, -1, 0}, {-1, -1, 2, -1}, {0, 0, -1, 2}};
    claims.add("A^D is of type D_4", dc.cartan == d4);
    bool table = true;
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) {
        if (j == k) continue;
        int a = j + 1, b = k + 1;
        int expect = 0;
        if (a == 2 && b == 1)
          expect = -1;
        else if (std::abs(a - b) == 1 || (a == 1 && b == 3) || (a == 3 && b == 1))
          expect = 1;
        table = table && dc.r_deg2[j][k] == 2 * expect;
      }
    claims.add("degree table of the normalized R_{j,k}", table, dc.r_deg2);
  } else if (name == "C") {
    claims.add("R_{2,1}R_{1,2} = z1 + z2^2", dc.q.at(0, 1) == u_var() + v_var(2), composition_str(dc, 0, 1));
    claims.add("A^D is of type C_3", dc.cartan == Matrix{{2, -1, 0}, {-2, 2, -1}, {0, -1, 2}});
  } else if (name == "B1") {
    claims.add("R_{2,1}R_{1,2} = z1^2 - z2", dc.q.at(0, 1) == u_var(2) - v_var(), composition_str(dc, 0, 1));
    claims.add("A^D = [[2,-2],[-1,2]]", dc.cartan == Matrix{{2, -2}, {-1, 2}});
  } else if (name == "B2") {
    bool pattern = true;
    json shown = json::object();
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        if (j == k) continue;
        const Poly& q = dc.q.at(j, k);
        bool adjacent = std::abs(j - k) == 1;
        pattern = pattern && (adjacent ? (q == u_var() - v_var() || q == v_var() - u_var()) : q == Poly(1));
        shown["(" + std::to_string(j + 1) + "," + std::to_string(k + 1) + ")"] = composition_str(dc, j, k);
      }
    claims.add("compositions are z_j - z_k for adjacent pairs and 1 otherwise", pattern, shown);
    claims.add("A^D is of type A_3", dc.cartan == Matrix{{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}});
  }
}

void functor_claims(const std::string& name, const DeltaBimodule& delta, std::uint64_t seed, Claims& claims) {
  const AlgebraPtr& rd = delta.algebra();
  const AlgebraPtr& amb = delta.datum().ambient;
  auto share = [](GradedModule m) { return std::make_shared<GradedModule>(std::move(m)); };
  if (name == "D") {
    GradedModule l13 = one_dim_module(rd, {0, 2});
    claims.add("L^D(1,3) is the head of L^D(1) o L^D(3)",
               is_isomorphic(l13, simple_head(share(simple_module(rd, 0)), share(simple_module(rd, 2))), seed));
    GradedModule f13 = apply_functor(delta, l13).module();
    GradedModule l123 = simple_head(share(one_dim_module(amb, {0, 1})), share(simple_module(amb, 2)));
    json qc = qchar_strings(f13);
    claims.add("F(L^D(1,3)) = L(1,2,3), dim 1, qchar {(1,2,3): 1}",
               f13.dim() == 1 && qc == json{{"(1,2,3)", "1"}} && is_isomorphic(f13, l123, seed), qc);
    GradedModule f132 = apply_functor(delta, one_dim_module(rd, {0, 2, 1})).module();
    claims.add("F(L^D(1,3,2)) = 0", f132.dim() == 0, f132.dim());
  } else if (name == "B1") {
    GradedModule f1 = apply_functor(delta, simple_module(rd, 0)).module();
    claims.add("F(L^D(1)) = L(1,2)", is_isomorphic(f1, one_dim_module(amb, {0, 1}), seed), qchar_strings(f1));
  }
  for (int j = 0; j < delta.datum().size(); ++j) {
    GradedModule f = apply_functor(delta, simple_module(rd, j)).module();
    claims.add("F(L^D(" + std::to_string(j + 1) + ")) = M_" + std::to_string(j + 1) + " / z M_" + std::to_string(j + 1),
               is_isomorphic(f, specialize_zero(*delta.datum().modules[j]), seed));
  }
}

}  // namespace

ExampleOutcome run_example(const std::string& name, int ell, const std::set<std::string>& checks, std::uint64_t seed,
                           int max_height) {
  ExampleOutcome out;
  DualityDatum d = duality_datum(name, ell);
  json doc{{"format", 1}, {"example", name}, {"ell", ell}};
  Claims claims;
  out.summary.push_back("example " + name + ", ell = " + std::to_string(ell));
  bool at_claim_ell = ell == claim_ell(name);
  if (checks.count("axioms")) {
    json axioms = json::array();
    for (const auto& c : check_axioms(d)) {
      axioms.push_back({{"axiom", c.axiom}, {"ok", c.report.ok()}, {"issues", c.report.issues}});
      claims.add("axiom " + c.axiom, c.report.ok());
    }
    doc["axioms"] = axioms;
  }
  DeltaBimodule delta(d);
  const DerivedCartan& dc = delta.derived();
  if (checks.count("cartan")) {
    json q = json::object();
    for (int j = 0; j < d.size(); ++j)
      for (int k = 0; k < d.size(); ++k)
        if (j != k) q["(" + d.labels[j] + "," + d.labels[k] + ")"] = composition_str(dc, j, k);
    doc["cartan"] = {{"matrix", dc.cartan}, {"finite", dc.finite}, {"compositions", q}, {"r_deg2", dc.r_deg2},
                     {"skew", dc.skew.values}};
    std::string rows;
    for (const auto& r : dc.cartan) {
      rows += " [";
      for (std::size_t i = 0; i < r.size(); ++i) rows += (i ? " " : "") + std::to_string(r[i]);
      rows += "]";
    }
    out.summary.push_back("A^D =" + rows);
    if (at_claim_ell) cartan_claims(name, dc, claims);
  }
  if (checks.count("functor") && at_claim_ell) functor_claims(name, delta, seed, claims);
  if (checks.count("simples")) {
    json rows = json::array();
    bool all = true;
    for (const GradedModule& s : simple_modules_up_to_height(delta.algebra(), max_height)) {
      GradedModule f = apply_functor(delta, s).module();
      bool good = f.dim() == 0 || is_simple(f);
      all = all && good;
      rows.push_back({{"simple", qchar_strings(s)}, {"image_dim", f.dim()}, {"simple_or_zero", good}});
    }
    doc["simples"] = rows;
    claims.add("F of every simple of height <= " + std::to_string(max_height) + " is simple or zero", all);
  }
  if (!at_claim_ell) out.summary.push_back("  (example-specific claims are stated at ell = " + std::to_string(claim_ell(name)) + ")");
  doc["claims"] = claims.list;
  doc["ok"] = claims.ok;
  out.ok = claims.ok;
  out.json = doc.dump();
  out.summary.insert(out.summary.end(), claims.summary.begin(), claims.summary.end());
  return out;
}
