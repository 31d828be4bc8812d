#include "klr/io.hpp"

#include <json.hpp>

#include <sstream>

#include "klr/catalog.hpp"
#include "klr/convolution.hpp"

namespace klr {

using nlohmann::json;

namespace {

constexpr int kFormat = 1;

[[noreturn]] void bad(const std::string& path, const std::string& what) { throw InputError(path + ": " + what); }

const json& field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) bad(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) bad(path, "missing field \"" + key + "\"");
  return *it;
}

int as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) bad(path, "expected an integer");
  return v.get<int>();
}

std::string as_string(const json& v, const std::string& path) {
  if (!v.is_string()) bad(path, "expected a string");
  return v.get<std::string>();
}

const json& as_array(const json& v, const std::string& path) {
  if (!v.is_array()) bad(path, "expected an array");
  return v;
}

std::string idx(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void check_format(const json& doc, const std::string& path) {
  auto it = doc.find("format");
  if (it == doc.end()) bad(path, "missing field \"format\"");
  if (!it->is_number_integer() || it->get<int>() != kFormat) bad(path + ".format", "unsupported format (expected 1)");
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("document: ") + e.what());
  }
}

Scalar scalar_from(const json& v, const std::string& path) {
  if (v.is_number_integer()) return Scalar(v.get<long>());
  if (!v.is_string()) bad(path, "expected a rational \"p/q\"");
  try {
    return Scalar::parse(v.get<std::string>());
  } catch (const std::exception& e) {
    bad(path, e.what());
  }
}

json poly_to(const Poly& p) {
  if (p.is_constant()) return p.constant_term().str();
  json obj = json::object();
  for (const auto& [mono, c] : p.terms()) {
    std::string key;
    if (mono.empty()) key = "0";
    for (std::size_t k = 0; k < mono.size(); ++k) key += (k ? "," : "") + std::to_string(mono[k]);
    obj[key] = c.str();
  }
  return obj;
}

Poly poly_from(const json& v, const std::string& path) {
  if (!v.is_object()) return Poly(scalar_from(v, path));
  Poly p;
  for (const auto& [key, coeff] : v.items()) {
    Monomial mono;
    std::stringstream ss(key);
    std::string part;
    while (std::getline(ss, part, ',')) {
      try {
        std::size_t used = 0;
        int e = std::stoi(part, &used);
        if (used != part.size() || e < 0) throw std::invalid_argument(part);
        mono.push_back(e);
      } catch (const std::exception&) {
        bad(path + "." + key, "bad exponent vector");
      }
    }
    monomial_trim(mono);
    p.add_term(mono, scalar_from(coeff, path + "." + key));
  }
  return p;
}

json matrix_to(const PolyMatrix& m) {
  json out = json::array();
  for (int c = 0; c < m.cols(); ++c)
    for (const auto& [r, p] : m.column(c)) out.push_back(json::array({r, c, poly_to(p)}));
  return out;
}

PolyMatrix matrix_from(const json& v, int rows, int cols, const std::string& path) {
  PolyMatrix m(rows, cols);
  std::size_t i = 0;
  for (const auto& t : as_array(v, path)) {
    std::string p = idx(path, i++);
    if (!t.is_array() || t.size() != 3) bad(p, "expected [row, col, entry]");
    int r = as_int(t[0], p + "[0]");
    int c = as_int(t[1], p + "[1]");
    if (r < 0 || r >= rows || c < 0 || c >= cols) bad(p, "index out of range");
    m.add(r, c, poly_from(t[2], p + "[2]"));
  }
  return m;
}

std::string label_of(const json& v, const std::string& path) {
  if (v.is_number_integer()) return std::to_string(v.get<long>());
  return as_string(v, path);
}

int label_index(const CartanDatum& datum, const json& v, const std::string& path) {
  std::string label = label_of(v, path);
  for (int i = 0; i < datum.rank(); ++i)
    if (datum.labels[i] == label) return i;
  bad(path, "unknown label \"" + label + "\"");
}

json algebra_doc(const KlrAlgebra& alg) {
  const CartanDatum& d = alg.datum();
  json doc;
  doc["format"] = kFormat;
  doc["index_set"] = d.labels;
  doc["form"] = d.form;
  json qs = json::array();
  for (int i = 0; i < d.rank(); ++i)
    for (int j = 0; j < d.rank(); ++j) {
      if (i == j) continue;
      json terms = json::array();
      for (const auto& [mono, c] : alg.q().at(i, j).terms())
        terms.push_back({{"p", monomial_exponent(mono, 0)}, {"q", monomial_exponent(mono, 1)}, {"coeff", c.str()}});
      qs.push_back({{"i", d.labels[i]}, {"j", d.labels[j]}, {"terms", terms}});
    }
  doc["qpoly"] = qs;
  if (!alg.skew().is_zero()) doc["skew"] = alg.skew().values;
  return doc;
}

AlgebraPtr algebra_from_doc(const json& doc, const std::string& path) {
  check_format(doc, path);
  CartanDatum datum;
  std::size_t k = 0;
  for (const auto& l : as_array(field(doc, "index_set", path), path + ".index_set"))
    datum.labels.push_back(label_of(l, idx(path + ".index_set", k++)));
  int n = datum.rank();
  if (n == 0) bad(path + ".index_set", "empty index set");
  const json& form = as_array(field(doc, "form", path), path + ".form");
  if (static_cast<int>(form.size()) != n) bad(path + ".form", "expected " + std::to_string(n) + " rows");
  for (int i = 0; i < n; ++i) {
    std::string rp = idx(path + ".form", i);
    const json& row = as_array(form[i], rp);
    if (static_cast<int>(row.size()) != n) bad(rp, "expected " + std::to_string(n) + " entries");
    std::vector<int> r;
    for (int j = 0; j < n; ++j) r.push_back(as_int(row[j], idx(rp, j)));
    datum.form.push_back(r);
  }
  std::vector<std::vector<std::optional<Poly>>> given(n, std::vector<std::optional<Poly>>(n));
  if (doc.contains("qpoly")) {
    std::size_t e = 0;
    for (const auto& entry : as_array(doc["qpoly"], path + ".qpoly")) {
      std::string ep = idx(path + ".qpoly", e++);
      int i = label_index(datum, field(entry, "i", ep), ep + ".i");
      int j = label_index(datum, field(entry, "j", ep), ep + ".j");
      Poly q;
      std::size_t t = 0;
      for (const auto& term : as_array(field(entry, "terms", ep), ep + ".terms")) {
        std::string tp = idx(ep + ".terms", t++);
        int p = as_int(field(term, "p", tp), tp + ".p");
        int qq = as_int(field(term, "q", tp), tp + ".q");
        if (p < 0 || qq < 0) bad(tp, "negative exponent");
        Monomial mono{p, qq};
        monomial_trim(mono);
        q.add_term(mono, scalar_from(field(term, "coeff", tp), tp + ".coeff"));
      }
      given[i][j] = q;
    }
  }
  QPolys qs;
  qs.table.assign(n, std::vector<Poly>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (given[i][j])
        qs.table[i][j] = *given[i][j];
      else if (given[j][i])
        qs.table[i][j] = given[j][i]->swap_vars(0, 1);
      else if (datum.form[i][j] == 0)
        qs.table[i][j] = Poly(1);
      else
        bad(path + ".qpoly", "no Q-polynomial for (" + datum.labels[i] + "," + datum.labels[j] + ")");
    }
  SkewForm skew;
  if (doc.contains("skew")) {
    const json& s = as_array(doc["skew"], path + ".skew");
    if (static_cast<int>(s.size()) != n) bad(path + ".skew", "expected " + std::to_string(n) + " rows");
    for (int i = 0; i < n; ++i) {
      std::string rp = idx(path + ".skew", i);
      const json& row = as_array(s[i], rp);
      if (static_cast<int>(row.size()) != n) bad(rp, "expected " + std::to_string(n) + " entries");
      std::vector<int> r;
      for (int j = 0; j < n; ++j) r.push_back(as_int(row[j], idx(rp, j)));
      skew.values.push_back(r);
    }
  }
  try {
    return std::make_shared<const KlrAlgebra>(datum, qs, skew);
  } catch (const std::invalid_argument& e) {
    bad(path, e.what());
  }
}

json module_doc(const GradedModule& m, bool with_algebra) {
  const CartanDatum& d = m.algebra()->datum();
  json doc;
  doc["format"] = kFormat;
  if (with_algebra) doc["algebra"] = algebra_doc(*m.algebra());
  json beta = json::object();
  std::vector<int> w = m.weight();
  for (int i = 0; i < static_cast<int>(w.size()); ++i)
    if (w[i] > 0) beta[d.labels[i]] = w[i];
  doc["beta"] = beta;
  doc["height"] = m.height();
  json basis = json::array();
  for (const auto& b : m.basis()) {
    json word = json::array();
    for (int c : b.word) word.push_back(d.labels[c]);
    basis.push_back({{"word", word}, {"deg2", b.deg2}});
  }
  doc["basis"] = basis;
  json xs = json::array(), taus = json::array();
  for (const auto& x : m.x()) xs.push_back(matrix_to(x));
  for (const auto& t : m.tau()) taus.push_back(matrix_to(t));
  doc["x"] = xs;
  doc["tau"] = taus;
  json vars = json::array();
  for (const auto& v : m.vars()) vars.push_back({{"name", v.name}, {"deg2", v.deg2}});
  doc["ring"] = {{"vars", vars}};
  return doc;
}

GradedModule module_from_doc(const json& doc, AlgebraPtr alg, const std::string& path) {
  check_format(doc, path);
  if (doc.contains("algebra")) {
    AlgebraPtr own = algebra_from_doc(doc["algebra"], path + ".algebra");
    if (alg && !alg->same_parameters(*own)) bad(path + ".algebra", "does not match the expected algebra");
    if (!alg) alg = own;
  }
  if (!alg) bad(path, "missing field \"algebra\"");
  const CartanDatum& d = alg->datum();
  std::vector<BasisVector> basis;
  std::size_t k = 0;
  int height = -1;
  for (const auto& b : as_array(field(doc, "basis", path), path + ".basis")) {
    std::string bp = idx(path + ".basis", k++);
    BasisVector v;
    std::size_t c = 0;
    for (const auto& l : as_array(field(b, "word", bp), bp + ".word")) v.word.push_back(label_index(d, l, idx(bp + ".word", c++)));
    v.deg2 = as_int(field(b, "deg2", bp), bp + ".deg2");
    if (height >= 0 && static_cast<int>(v.word.size()) != height) bad(bp + ".word", "words of different lengths");
    height = static_cast<int>(v.word.size());
    basis.push_back(std::move(v));
  }
  if (doc.contains("height")) {
    int h = as_int(doc["height"], path + ".height");
    if (height >= 0 && h != height) bad(path + ".height", "does not match the basis words");
    height = h;
  }
  if (height < 0) bad(path, "cannot determine the height of an empty module (give \"height\")");
  if (doc.contains("beta")) {
    const json& beta = field(doc, "beta", path);
    if (!beta.is_object()) bad(path + ".beta", "expected an object");
    std::vector<int> want(d.rank(), 0);
    for (const auto& [label, mult] : beta.items())
      want[label_index(d, json(label), path + ".beta")] = as_int(mult, path + ".beta." + label);
    for (const auto& b : basis) {
      std::vector<int> have(d.rank(), 0);
      for (int c : b.word) ++have[c];
      if (have != want) bad(path + ".beta", "does not match the basis words");
    }
  }
  std::vector<RingVariable> vars;
  if (doc.contains("ring")) {
    const json& ring = doc["ring"];
    if (ring.contains("vars")) {
      std::size_t i = 0;
      for (const auto& v : as_array(ring["vars"], path + ".ring.vars")) {
        std::string vp = idx(path + ".ring.vars", i++);
        vars.push_back({as_string(field(v, "name", vp), vp + ".name"), as_int(field(v, "deg2", vp), vp + ".deg2")});
      }
    }
  }
  int dim = static_cast<int>(basis.size());
  auto read_list = [&](const char* key, int count) {
    std::vector<PolyMatrix> out;
    std::string lp = path + "." + key;
    if (!doc.contains(key)) {
      for (int i = 0; i < count; ++i) out.emplace_back(dim, dim);
      return out;
    }
    const json& list = as_array(doc[key], lp);
    if (static_cast<int>(list.size()) != count) bad(lp, "expected " + std::to_string(count) + " matrices");
    for (int i = 0; i < count; ++i) out.push_back(matrix_from(list[i], dim, dim, idx(lp, i)));
    return out;
  };
  std::vector<PolyMatrix> x = read_list("x", height);
  std::vector<PolyMatrix> tau = read_list("tau", std::max(0, height - 1));
  try {
    return GradedModule(alg, height, vars, basis, x, tau);
  } catch (const std::invalid_argument& e) {
    bad(path, e.what());
  }
}

}  // namespace

std::string algebra_to_json(const KlrAlgebra& alg) { return algebra_doc(alg).dump(); }

AlgebraPtr algebra_from_json(const std::string& text) { return algebra_from_doc(parse_text(text), "algebra"); }

std::string module_to_json(const GradedModule& m, bool with_algebra) { return module_doc(m, with_algebra).dump(); }

GradedModule module_from_json(const std::string& text, AlgebraPtr alg) {
  return module_from_doc(parse_text(text), std::move(alg), "module");
}

std::string datum_to_json(const DualityDatum& d) {
  json doc;
  doc["format"] = kFormat;
  doc["name"] = d.name;
  doc["ambient"] = algebra_doc(*d.ambient);
  doc["labels"] = d.labels;
  json mods = json::array();
  for (const auto& m : d.modules) mods.push_back(module_doc(*m, false));
  doc["modules"] = mods;
  json rs = json::array();
  for (int j = 0; j < d.size(); ++j)
    for (int k = 0; k < d.size(); ++k)
      rs.push_back({{"j", j}, {"k", k}, {"matrix", matrix_to(d.R[j][k].matrix)}, {"var_map", d.R[j][k].var_map}});
  doc["R"] = rs;
  return doc.dump();
}

DualityDatum datum_from_json(const std::string& text) {
  json doc = parse_text(text);
  const std::string path = "datum";
  check_format(doc, path);
  if (doc.contains("catalog")) {
    std::string name = as_string(doc["catalog"], path + ".catalog");
    int ell = as_int(field(doc, "ell", path), path + ".ell");
    if (ell > 5) bad(path + ".ell", "catalog data are capped at ell <= 5");
    try {
      return duality_datum(name, ell);
    } catch (const std::invalid_argument& e) {
      bad(path + ".catalog", e.what());
    }
  }
  AlgebraPtr ambient = algebra_from_doc(field(doc, "ambient", path), path + ".ambient");
  std::vector<std::string> labels;
  std::size_t k = 0;
  for (const auto& l : as_array(field(doc, "labels", path), path + ".labels"))
    labels.push_back(label_of(l, idx(path + ".labels", k++)));
  std::vector<ModulePtr> modules;
  k = 0;
  for (const auto& m : as_array(field(doc, "modules", path), path + ".modules")) {
    std::string mp = idx(path + ".modules", k++);
    modules.push_back(std::make_shared<GradedModule>(module_from_doc(m, ambient, mp)));
  }
  if (modules.size() != labels.size()) bad(path + ".labels", "one label per module expected");
  std::string name = doc.contains("name") ? as_string(doc["name"], path + ".name") : "";
  try {
    if (!doc.contains("R")) return datum_from_affinizations(ambient, labels, modules, name);
    int n = static_cast<int>(modules.size());
    std::vector<std::vector<std::optional<GradedHom>>> given(n, std::vector<std::optional<GradedHom>>(n));
    k = 0;
    for (const auto& e : as_array(doc["R"], path + ".R")) {
      std::string ep = idx(path + ".R", k++);
      int j = as_int(field(e, "j", ep), ep + ".j");
      int kk = as_int(field(e, "k", ep), ep + ".k");
      if (j < 0 || j >= n || kk < 0 || kk >= n) bad(ep, "index out of range");
      GradedHom h;
      h.source = Convolution({modules[j], modules[kk]}).module_ptr();
      h.target = Convolution({modules[kk], modules[j]}).module_ptr();
      h.matrix = matrix_from(field(e, "matrix", ep), h.target->dim(), h.source->dim(), ep + ".matrix");
      std::size_t v = 0;
      for (const auto& t : as_array(field(e, "var_map", ep), ep + ".var_map")) h.var_map.push_back(as_int(t, idx(ep + ".var_map", v++)));
      if (h.var_map.size() != h.source->vars().size()) bad(ep + ".var_map", "one entry per source variable expected");
      given[j][kk] = std::move(h);
    }
    std::vector<std::vector<GradedHom>> R(n);
    for (int j = 0; j < n; ++j)
      for (int kk = 0; kk < n; ++kk) {
        if (!given[j][kk]) bad(path + ".R", "missing R(" + std::to_string(j) + "," + std::to_string(kk) + ")");
        R[j].push_back(*given[j][kk]);
      }
    return datum_from_rmatrices(ambient, labels, modules, std::move(R), name);
  } catch (const std::invalid_argument& e) {
    bad(path, e.what());
  }
}

std::string pretty_json(const std::string& text) { return parse_text(text).dump(2); }

}  // namespace klr
