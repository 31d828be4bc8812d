#include <stdexcept>

#include "klr/catalog.hpp"

namespace klr {

namespace {

ModulePtr share(GradedModule m) { return std::make_shared<GradedModule>(std::move(m)); }

}  // namespace

std::vector<std::string> duality_datum_names() { return {"D", "C", "B1", "B2"}; }

DualityDatum duality_datum(const std::string& name, int ell) {
  bool type_b = name == "B1" || name == "B2";
  if (name != "D" && name != "C" && !type_b) throw std::invalid_argument("unknown duality datum '" + name + "'");
  if (ell < (type_b ? 3 : 2)) throw std::invalid_argument("ell is too small for datum " + name);
  AlgebraPtr ambient = type_b ? ambient_B(ell) : ambient_A(ell);
  int size = type_b ? ell - 1 : ell;
  std::vector<ModulePtr> modules;
  std::vector<std::string> labels;
  for (int j = 0; j < size; ++j) {
    std::string var = "z" + std::to_string(j + 1);
    labels.push_back(std::to_string(j + 1));
    if (j == 0) {
      GradedModule first = name == "D"    ? affinization_L12(ambient)
                           : name == "C"  ? build_K(ambient, 0, 2)
                           : name == "B1" ? affinization_B1(ambient)
                                          : module_B2(ambient);
      modules.push_back(share(rename_vars(first, {{var, first.vars().at(0).deg2}})));
    } else {
      int color = type_b ? j + 1 : j;
      modules.push_back(share(symmetric_affinization(simple_module(ambient, color), var)));
    }
  }
  std::vector<std::vector<GradedHom>> R(size);
  for (int j = 0; j < size; ++j)
    for (int k = 0; k < size; ++k) {
      if (j == k) {
        R[j].push_back(rmatrix_pair(modules[j], modules[j]).hom);
        continue;
      }
      GradedHom raw = rmatrix_raw(modules[j], modules[k]);
      if (name == "D" && j == 1 && k == 0) {
        // target M_1 o M_2: variable 0 is z_1, variable 1 is z_2
        Poly diff = Poly::variable(0) - Poly::variable(1);
        raw.matrix = raw.matrix.map_entries([&diff](const Poly& p) {
          auto q = p.divide_exact(diff);
          if (!q) throw std::logic_error("R_{2,1} is not divisible by z_1 - z_2");
          return *q;
        });
      }
      R[j].push_back(std::move(raw));
    }
  return datum_from_rmatrices(ambient, labels, modules, std::move(R), name);
}

}  // namespace klr
