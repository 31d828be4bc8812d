#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "klr/convolution.hpp"
#include "klr/module.hpp"

namespace klr {

// Homomorphism between modules over polynomial rings. Column j of `matrix`
// is the image of source basis vector j, with entries in the target ring.
// Ring variables are carried along `var_map` (source variable v becomes
// target variable var_map[v]), so h(f b) = f' h(b) with f' = f renamed.
// A Demazure pair (a, b) adds the correction h(f b) = f' h(b) - d_{ab}(f) b,
// where d_{ab} is the divided difference in target variables a, b; this needs
// source and target to share their basis (used for r = (R - id)/(z_a - z_b)).
struct GradedHom {
  ModulePtr source;
  ModulePtr target;
  PolyMatrix matrix;
  std::vector<int> var_map;
  std::optional<std::pair<int, int>> demazure;

  bool is_zero() const { return matrix.is_zero(); }
  // Doubled degree, or nullopt when entries are not consistently homogeneous.
  std::optional<int> degree() const;
};

// Identity var map for two modules over the same ring.
std::vector<int> identity_var_map(int count);

PolyVec hom_apply(const GradedHom& h, const PolyVec& v);
GradedHom hom_identity(const ModulePtr& m);
// h2 after h1; neither may carry a Demazure correction.
GradedHom hom_compose(const GradedHom& h2, const GradedHom& h1);
GradedHom hom_scale(const GradedHom& h, const Poly& factor);

// R-linearity (commutes with every generator on test vectors f b, f running
// over monomials of degree <= 2 in the source variables) and homogeneity.
Report check_hom(const GradedHom& h);

// Substitutes 0 for every variable on both sides (finite modules result).
GradedHom specialize_hom(const GradedHom& h, const ModulePtr& source0, const ModulePtr& target0);

// Homomorphism acting in slots (slot, slot+1) of a convolution. `small` maps
// M_a o M_b to M_b o M_a (sources and targets built as two-factor
// convolutions of exactly those factors); the result acts on
// M_1 o ... o M_a o M_b o ... o M_k with image in the convolution with the
// two factors swapped (or on the same convolution when the hom is an
// endomorphism).
class SlotHom {
 public:
  SlotHom(Convolution source, Convolution target, int slot, GradedHom small);

  const Convolution& source() const { return source_; }
  const Convolution& target() const { return target_; }
  int slot() const { return slot_; }

  PolyVec apply(const PolyVec& v) const;
  // Image of one source basis vector (coefficient 1).
  PolyVec image(int index) const;
  // Source variable -> target variable.
  const std::vector<int>& var_map() const { return var_map_; }
  // Divided-difference correction in target variables, if any.
  const std::optional<std::pair<int, int>>& demazure() const { return demazure_; }

 private:
  PolyVec pure_image(const std::vector<int>& tuple) const;

  Convolution source_;
  Convolution target_;
  int slot_;
  GradedHom small_;
  std::vector<int> var_map_;
  std::vector<int> small_to_big_;  // small target variable -> big target variable
  std::optional<std::pair<int, int>> demazure_;  // in big target variables
  // Images of basis vectors, shared by copies.
  struct Cache {
    std::mutex mutex;
    std::unordered_map<int, PolyVec> images;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

}  // namespace klr
