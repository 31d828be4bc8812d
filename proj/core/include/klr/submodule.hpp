#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "klr/hom.hpp"
#include "klr/linalg.hpp"
#include "klr/module.hpp"

namespace klr {

// Scalar generator action of a finite module (or of its dual, where every
// generator acts by its transpose). Basis vectors are grouped into
// homogeneous components: same word and same degree.
class FiniteAction {
 public:
  explicit FiniteAction(const GradedModule& m, bool dual = false);

  int dim() const { return dim_; }
  int generator_count() const { return static_cast<int>(gens_.size()); }
  SVec apply(int g, const SVec& v) const;
  int component(int index) const { return (*component_)[index]; }
  // Component lookup that stays valid after this object is gone.
  std::function<int(int)> component_fn() const;
  int component_count() const { return static_cast<int>(members_.size()); }
  const std::vector<int>& members(int c) const { return members_[c]; }

 private:
  int dim_ = 0;
  std::vector<std::vector<SVec>> gens_;  // gens_[g][j] = image of e_j
  std::shared_ptr<std::vector<int>> component_ = std::make_shared<std::vector<int>>();
  std::vector<std::vector<int>> members_;
};

// Graded subspace: one semi-echelon basis per homogeneous component.
class GradedSubspace {
 public:
  GradedSubspace(int dim, std::function<int(int)> component);

  int dim() const { return rank_; }
  int ambient_dim() const { return dim_; }
  // Splits v into homogeneous parts and inserts each; returns the new rows.
  std::vector<SVec> insert(const SVec& v);
  SVec reduce(const SVec& v) const;
  bool contains(const SVec& v) const;
  // Coordinates with respect to rows(), or nullopt when v is not contained.
  std::optional<SVec> coordinates(const SVec& v) const;
  std::vector<SVec> rows() const;
  // Indices that are not pivots, in increasing order (a quotient basis).
  std::vector<int> non_pivots() const;

 private:
  int comp_of(int index) const;
  int dim_;
  int rank_ = 0;
  std::function<int(int)> component_;
  std::map<int, Echelon> parts_;
};

// Smallest graded submodule containing the seeds.
GradedSubspace spin(const FiniteAction& action, const std::vector<SVec>& seeds);

// Module structure on a graded submodule (basis = rows of the subspace).
struct Submodule {
  GradedModule module;
  std::vector<SVec> inclusion;  // image of each basis vector in the ambient module
};
Submodule make_submodule(const GradedModule& m, const GradedSubspace& sub);

struct Quotient {
  GradedModule module;
  std::vector<int> kept;  // ambient index of each quotient basis vector
  GradedSubspace relations;
  // Coordinates of the image of an ambient vector.
  SVec project(const SVec& v) const;
};
Quotient make_quotient(const GradedModule& m, const GradedSubspace& sub);

// Exact test for absolute simplicity of a finite graded module. A component
// C of smallest dimension is chosen; M is absolutely simple iff a vector of C
// generates M, a dual vector of C generates the dual, and the degree-zero
// corner algebra acts on C as the full matrix algebra. When M is not simple a
// proper nonzero graded submodule is returned as witness.
struct SimplicityResult {
  bool simple = false;
  std::optional<GradedSubspace> witness;
  std::string reason;
};
SimplicityResult test_simple(const GradedModule& m);
bool is_simple(const GradedModule& m);

// Graded composition factors (with multiplicity, in the order found).
std::vector<GradedModule> composition_factors(const GradedModule& m);

// Basis of degree-`deg2` homomorphisms between finite modules, as scalar
// matrices (column j = image of basis vector j).
std::vector<std::vector<SVec>> hom_space(const GradedModule& source, const GradedModule& target, int deg2);
// Graded isomorphism test (degree-0 bijective hom).
bool is_isomorphic(const GradedModule& a, const GradedModule& b, std::uint64_t seed = 1);

GradedHom scalar_hom(ModulePtr source, ModulePtr target, const std::vector<SVec>& columns);

}  // namespace klr
