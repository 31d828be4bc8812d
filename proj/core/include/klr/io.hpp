#pragma once

#include <stdexcept>
#include <string>

#include "klr/duality.hpp"
#include "klr/module.hpp"

namespace klr {

// Malformed input document; the message names the offending path
// (e.g. "module.x[0][3]: expected [row, col, value]").
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// All documents carry "format": 1. Scalars are strings "p/q" (plain
// integers are accepted on input). Polynomial entries are either a scalar or
// an object {"e_0,e_1,...": coeff} keyed by exponent vectors.
//
// Algebra: {"format", "index_set": [labels], "form": [[...]],
//           "qpoly": [{"i", "j", "terms": [{"p", "q", "coeff"}]}], "skew"?}
// A missing Q_{i,j} is taken from Q_{j,i}(v,u), or 1 when (a_i,a_j) = 0.
std::string algebra_to_json(const KlrAlgebra& alg);
AlgebraPtr algebra_from_json(const std::string& text);

// Module: {"format", "algebra", "beta": {label: mult}, "height",
//          "basis": [{"word": [labels], "deg2"}], "x": [[[row, col, entry]...] per k],
//          "tau": [...], "ring": {"vars": [{"name", "deg2"}]}}
// "algebra" may be omitted when the caller supplies the algebra.
std::string module_to_json(const GradedModule& m, bool with_algebra = true);
GradedModule module_from_json(const std::string& text, AlgebraPtr alg = nullptr);

// Datum: {"format", "catalog": name, "ell"} for a worked example, or
// {"format", "name", "ambient", "labels", "modules", "R"?} with
// "R": [{"j", "k", "matrix": [[row, col, entry]...], "var_map": [...]}].
// Without "R" the normalized R-matrices of the modules are used.
std::string datum_to_json(const DualityDatum& d);
DualityDatum datum_from_json(const std::string& text);

// Pretty-printed JSON text of a document (2-space indent).
std::string pretty_json(const std::string& text);

}  // namespace klr
