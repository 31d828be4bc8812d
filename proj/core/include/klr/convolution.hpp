#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "klr/module.hpp"
#include "klr/perm.hpp"
#include "klr/rewrite.hpp"

namespace klr {

using ModulePtr = std::shared_ptr<const GradedModule>;

// Convolution product M_1 o M_2 o ... o M_k. Basis: tau_w (x) b_1 (x) ... (x) b_k
// with w running over minimal coset representatives (ordered by length then
// lexicographic word) and b_i over the factor bases. The coefficient ring is
// the tensor product of the factor rings; variable names colliding between
// factors get a slot suffix.
//
// The handle is cheap to copy. Generator matrices of module() are built on
// first access; single algebra elements can be applied without them.
class Convolution {
 public:
  using Element = KlrNormalizer::Element;
  // Left multiplication by an algebra element, expressed on normal forms.
  using ElementOp = std::function<Element(KlrNormalizer&, const Element&)>;

  explicit Convolution(std::vector<ModulePtr> factors);

  const GradedModule& module() const;
  ModulePtr module_ptr() const;
  const std::vector<ModulePtr>& factors() const;
  int factor_count() const;
  const std::vector<int>& blocks() const;
  const std::vector<CosetRep>& reps() const;
  const std::vector<BasisVector>& basis() const;
  const std::vector<RingVariable>& vars() const;
  const AlgebraPtr& algebra() const;
  int dim() const;
  int height() const;
  int rep_index(const Perm& w) const;
  // First ring variable of factor i inside the convolution's ring.
  int var_offset(int i) const;
  int tuple_count() const;

  int index(int rep, const std::vector<int>& tuple) const;
  std::pair<int, std::vector<int>> decode(int index) const;
  // 1 (x) v_1 (x) ... (x) v_k with v_i in factor rings (variables shifted here).
  PolyVec pure_tensor(const std::vector<PolyVec>& parts) const;

  PolyVec apply(const ElementOp& op, const PolyVec& v) const;
  // tau_{w_1} ... tau_{w_m} v (rightmost letter acts first).
  PolyVec apply_word(const ReducedWord& word, const PolyVec& v) const;
  PolyVec apply_x(int k, const PolyVec& v) const;
  PolyVec apply_tau(int l, const PolyVec& v) const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

// Applies tau_{w_1} ... tau_{w_m} (rightmost first) using the module's matrices.
PolyVec apply_tau_word(const GradedModule& m, const ReducedWord& word, const PolyVec& v);

// Convenience wrappers.
GradedModule convolve(const GradedModule& a, const GradedModule& b);
GradedModule convolve_all(const std::vector<ModulePtr>& factors);
// The height-0 unit module (one basis vector, empty word).
GradedModule unit_module(AlgebraPtr alg);

}  // namespace klr
