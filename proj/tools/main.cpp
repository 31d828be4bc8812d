#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "examples.hpp"
#include "klr/catalog.hpp"
#include "klr/io.hpp"
#include "klr/rmatrix.hpp"
#include "klr/submodule.hpp"

using nlohmann::json;
using namespace klr;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitInput = 2;

struct Options {
  std::string field = "rational";
  int trunc = 2;
  std::uint64_t seed = 1;
  std::string out;
  std::string module, module2, datum, gamma;
  std::string example;
  int ell = 4;
  std::string check = "all";
  int max_height = 3;
};

std::string read_file(const std::string& path, const std::string& what) {
  std::ifstream in(path);
  if (!in) throw InputError(what + ": cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json report_json(const Report& r) { return {{"ok", r.ok()}, {"issues", r.issues}}; }

// Final document, summary and exit status of one command.
struct Result {
  json doc;
  bool ok = true;
  bool bare = false;  // emit doc as is, without "format"/"ok"
  std::vector<std::string> summary;
};

GradedModule load_module(const std::string& path, const std::string& flag, AlgebraPtr alg = nullptr) {
  if (path.empty()) throw InputError(flag + ": required");
  return module_from_json(read_file(path, flag), std::move(alg));
}

DualityDatum load_datum(const std::string& path) {
  if (path.empty()) throw InputError("--datum: required");
  return datum_from_json(read_file(path, "--datum"));
}

std::vector<int> parse_gamma(const std::string& text, int rank) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(part, &used);
      if (used != part.size() || v < 0) throw std::invalid_argument(part);
      out.push_back(v);
    } catch (const std::exception&) {
      throw InputError("--gamma: bad entry '" + part + "'");
    }
  }
  if (static_cast<int>(out.size()) != rank) throw InputError("--gamma: expected " + std::to_string(rank) + " entries");
  return out;
}

std::string module_line(const GradedModule& m) {
  return "dim " + std::to_string(m.dim()) + ", height " + std::to_string(m.height()) +
         (m.is_finite() ? "" : ", rank over " + std::to_string(m.vars().size()) + " ring variable(s)");
}

Result cmd_check_relations(const Options& o) {
  GradedModule m = load_module(o.module, "--module");
  Report rel = check_relations(m);
  Report hom = check_homogeneity(m);
  Result r;
  r.doc = {{"relations", report_json(rel)}, {"homogeneity", report_json(hom)}};
  r.ok = rel.ok() && hom.ok();
  r.summary = {module_line(m), std::string("relations ") + (rel.ok() ? "hold" : "FAIL: " + rel.issues.front()),
               std::string("homogeneity ") + (hom.ok() ? "holds" : "FAIL: " + hom.issues.front())};
  return r;
}

Result cmd_qchar(const Options& o) {
  GradedModule m = load_module(o.module, "--module");
  if (!m.is_finite()) throw InputError("--module: q-characters need a finite-dimensional module");
  Result r;
  r.doc = qchar_strings(m);
  r.bare = true;
  for (const auto& [w, s] : r.doc.items()) r.summary.push_back(w + ": " + s.get<std::string>());
  return r;
}

Result cmd_convolve(const Options& o) {
  GradedModule a = load_module(o.module, "--module");
  GradedModule b = load_module(o.module2, "--module2", a.algebra());
  GradedModule c = convolve(a, b);
  Result r;
  r.doc = json::parse(module_to_json(c));
  r.summary = {module_line(c)};
  return r;
}

Result cmd_rmatrix(const Options& o) {
  auto a = std::make_shared<GradedModule>(load_module(o.module, "--module"));
  auto b = std::make_shared<GradedModule>(load_module(o.module2, "--module2", a->algebra()));
  Result r;
  if (a->vars().size() == 1 && b->vars().size() == 1) {
    NormalizedRMatrix n = rmatrix_pair(a, b);
    NormalizedRMatrix back = rmatrix_pair(b, a);
    auto comp = composition_polynomial(back.hom, n.hom);
    auto deg = n.hom.degree();
    r.doc = {{"kind", "normalized"},
             {"degree2", deg ? json(*deg) : json(nullptr)},
             {"removed", n.removed.str({"zM", "zN"})},
             {"scale", n.scale.str()},
             {"composition", comp ? json(comp->str({"zM", "zN"})) : json(nullptr)}};
    json entries = json::array();
    for (int c = 0; c < n.hom.matrix.cols(); ++c)
      for (const auto& [row, p] : n.hom.matrix.column(c)) entries.push_back(json::array({row, c, p.str({"zM", "zN"})}));
    r.doc["matrix"] = entries;
    r.summary = {"normalized R-matrix, doubled degree " + (deg ? std::to_string(*deg) : std::string("inhomogeneous")),
                 "R_{N,M} R_{M,N} = " + (comp ? comp->str({"zM", "zN"}) : std::string("not scalar"))};
    r.ok = !n.hom.is_zero();
  } else if (a->is_finite() && b->is_finite()) {
    GradedHom h = r_matrix(a, b);
    GradedModule head = simple_head(a, b);
    bool simple = is_simple(head);
    auto deg = h.degree();
    r.doc = {{"kind", "specialized"},
             {"degree2", deg ? json(*deg) : json(nullptr)},
             {"nonzero", !h.is_zero()},
             {"image", json::parse(module_to_json(head))},
             {"image_simple", simple}};
    r.summary = {"r_{M,N}: doubled degree " + (deg ? std::to_string(*deg) : std::string("inhomogeneous")),
                 "image " + module_line(head) + (simple ? ", simple" : ", NOT simple")};
    r.ok = !h.is_zero() && simple;
  } else {
    throw InputError("--module/--module2: both must be finite or both affinizations with one ring variable");
  }
  return r;
}

Result cmd_check_affinization(const Options& o) {
  GradedModule m = load_module(o.module, "--module");
  AffinizationReport a = check_affinization(m);
  json central = json::array();
  for (std::size_t i = 0; i < a.central.size(); ++i)
    central.push_back({{"color", m.algebra()->datum().labels[a.support[i]]},
                       {"power", a.central[i].first},
                       {"coefficient", a.central[i].second.str()}});
  Result r;
  r.doc = {{"valid", a.valid}, {"strong", a.strong}, {"even", a.even}, {"central", central},
           {"report", report_json(a.issues)}};
  r.ok = a.valid;
  r.summary = {module_line(m), std::string(a.valid ? "valid" : "NOT valid") + " affinization" +
                                   (a.valid ? std::string(a.strong ? ", strong" : ", not strong") +
                                                  (a.even ? ", even" : ", odd")
                                            : "")};
  for (const auto& issue : a.issues.issues) r.summary.push_back("  " + issue);
  return r;
}

Result cmd_check_datum(const Options& o) {
  DualityDatum d = load_datum(o.datum);
  Result r;
  json list = json::array();
  for (const auto& c : check_axioms(d)) {
    list.push_back({{"axiom", c.axiom}, {"ok", c.report.ok()}, {"issues", c.report.issues}});
    r.ok = r.ok && c.report.ok();
    r.summary.push_back(c.axiom + (c.report.ok() ? ": ok" : ": FAIL " + c.report.issues.front()));
  }
  r.doc = {{"axioms", list}, {"ok", r.ok}};
  return r;
}

Result cmd_derive_cartan(const Options& o) {
  DualityDatum d = load_datum(o.datum);
  DerivedCartan dc = derive_cartan(d);
  Result r;
  json q = json::object();
  for (int j = 0; j < d.size(); ++j)
    for (int k = 0; k < d.size(); ++k)
      if (j != k) q["(" + d.labels[j] + "," + d.labels[k] + ")"] = dc.q.at(j, k).str({"u", "v"});
  r.doc = {{"cartan", dc.cartan},  {"form", dc.form.form}, {"finite", dc.finite},
           {"skew", dc.skew.values}, {"qpoly", q},         {"algebra", json::parse(algebra_to_json(*dc.algebra))}};
  for (const auto& row : dc.cartan) {
    std::string line;
    for (int v : row) line += (line.empty() ? "" : " ") + std::to_string(v);
    r.summary.push_back(line);
  }
  r.summary.push_back(dc.finite ? "finite type" : "not of finite type");
  return r;
}

Result cmd_build_delta(const Options& o) {
  DeltaBimodule delta(load_datum(o.datum));
  std::vector<int> gamma = parse_gamma(o.gamma, delta.datum().size());
  Result r;
  json comps = json::object();
  for (const Word& mu : words_of_weight(gamma))
    comps[delta.algebra()->datum().word_str(mu)] = delta.component(mu).dim();
  Report rep = check_delta(delta, gamma);
  r.doc = {{"components", comps}, {"relations", report_json(rep)}};
  r.ok = rep.ok();
  r.summary = {std::to_string(comps.size()) + " components",
               rep.ok() ? std::string("right action relations hold") : "FAIL: " + rep.issues.front()};
  return r;
}

Result cmd_apply_functor(const Options& o) {
  DeltaBimodule delta(load_datum(o.datum));
  GradedModule l = load_module(o.module, "--module", delta.algebra());
  Result r;
  if (!l.is_finite()) {
    if (l.vars().size() != 1) throw InputError("--module: expected a finite module or an affinization");
    AffinizationImage img = functor_on_affinization(delta, l, o.trunc);
    r.doc = {{"dims", img.dims}, {"report", report_json(img.report)}};
    if (img.top) r.doc["module"] = json::parse(module_to_json(*img.top));
    r.ok = img.report.ok();
    std::string dims;
    for (int v : img.dims) dims += (dims.empty() ? "" : ", ") + std::to_string(v);
    r.summary = {"dim F(N / z^t N), t = 1.." + std::to_string(o.trunc) + ": " + dims};
    for (const auto& issue : img.report.issues) r.summary.push_back("  " + issue);
    return r;
  }
  GradedModule f = apply_functor(delta, l).module();
  r.doc = json::parse(module_to_json(f));
  r.summary = {"F(L): " + module_line(f)};
  if (f.dim() > 0)
    for (const auto& [w, s] : qchar_strings(f)) r.summary.push_back("  " + w + ": " + s);
  return r;
}

std::set<std::string> parse_checks(const std::string& text) {
  static const std::set<std::string> known{"axioms", "cartan", "functor", "simples"};
  if (text == "all") return {"axioms", "cartan", "functor"};
  std::set<std::string> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (!known.count(part)) throw InputError("--check: unknown check '" + part + "'");
    out.insert(part);
  }
  return out;
}

Result cmd_run_example(const Options& o) {
  if (o.ell > 5) throw InputError("--ell: examples are capped at ell <= 5");
  std::set<std::string> checks = parse_checks(o.check);
  ExampleOutcome e;
  try {
    e = run_example(o.example, o.ell, checks, o.seed, o.max_height);
  } catch (const std::invalid_argument& err) {
    throw InputError(std::string("example: ") + err.what());
  }
  Result r;
  r.doc = json::parse(e.json);
  r.ok = e.ok;
  r.summary = e.summary;
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graded modules over quiver Hecke algebras: R-matrices, duality data and the duality functor"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--field", o.field, "Coefficient field: rational or fp:<p>");
  app.add_option("--trunc", o.trunc, "Truncation order for affinization images")->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "Seed for randomized isomorphism search");
  app.add_option("--out", o.out, "Write the JSON report here instead of stdout");

  using Command = Result (*)(const Options&);
  Command chosen = nullptr;
  auto verb = [&](const char* name, const char* help, Command fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->callback([&chosen, fn] { chosen = fn; });
    return sub;
  };
  verb("check-relations", "Check the defining relations on a module", cmd_check_relations)
      ->add_option("--module", o.module, "Module JSON")->required();
  verb("qchar", "Graded character of a finite module", cmd_qchar)
      ->add_option("--module", o.module, "Module JSON")->required();
  auto* conv = verb("convolve", "Convolution product M o N", cmd_convolve);
  conv->add_option("--module", o.module, "Left factor")->required();
  conv->add_option("--module2", o.module2, "Right factor")->required();
  auto* rmat = verb("rmatrix", "Normalized R-matrix (affinizations) or r_{M,N} (finite modules)", cmd_rmatrix);
  rmat->add_option("--module", o.module, "M")->required();
  rmat->add_option("--module2", o.module2, "N")->required();
  verb("check-affinization", "Validate an affinization", cmd_check_affinization)
      ->add_option("--module", o.module, "Module JSON with one ring variable")->required();
  verb("check-datum", "Check the duality datum axioms", cmd_check_datum)
      ->add_option("--datum", o.datum, "Datum JSON")->required();
  verb("derive-cartan", "Cartan datum induced by a duality datum", cmd_derive_cartan)
      ->add_option("--datum", o.datum, "Datum JSON")->required();
  auto* delta = verb("build-delta", "Build the bimodule Delta(gamma) and check its right action", cmd_build_delta);
  delta->add_option("--datum", o.datum, "Datum JSON")->required();
  delta->add_option("--gamma", o.gamma, "Weight as comma-separated multiplicities")->required();
  auto* apply = verb("apply-functor", "Apply the duality functor to a module", cmd_apply_functor);
  apply->add_option("--datum", o.datum, "Datum JSON")->required();
  apply->add_option("--module", o.module, "Module over the datum's algebra")->required();
  auto* ex = verb("run-example", "Run a worked example (D, C, B1, B2)", cmd_run_example);
  ex->add_option("name", o.example, "Example name")->required();
  ex->add_option("--ell", o.ell, "Rank of the ambient type")->check(CLI::Range(2, 5));
  ex->add_option("--check", o.check, "all, or a comma list of axioms,cartan,functor,simples");
  ex->add_option("--max-height", o.max_height, "Height bound for the simples check")->check(CLI::Range(1, 4));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    FieldScope field(parse_field(o.field));
    Result r = chosen(o);
    if (!r.bare) {
      r.doc["format"] = 1;
      r.doc["ok"] = r.ok;
    }
    std::string text = r.doc.dump(2) + "\n";
    if (o.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream file(o.out);
      if (!file) throw InputError("--out: cannot write '" + o.out + "'");
      file << text;
    }
    for (const auto& line : r.summary) std::cerr << line << "\n";
    return r.ok ? kExitOk : kExitInvalid;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  }
}
