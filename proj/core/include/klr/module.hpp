#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "klr/cartan.hpp"
#include "klr/linalg.hpp"
#include "klr/matrix.hpp"

namespace klr {

// Central polynomial variable of a module's coefficient ring.
struct RingVariable {
  std::string name;
  int deg2 = 0;  // doubled degree, must be positive
};

struct BasisVector {
  Word word;
  int deg2 = 0;
};

// Graded module over R(beta), free of finite rank over a polynomial ring
// k[z_1..z_r] of central variables (r = 0 gives a finite-dimensional module).
// Column j of each generator matrix is the image of basis vector j, with
// entries in k[z]. Generators act k[z]-linearly.
class GradedModule {
 public:
  GradedModule() = default;
  GradedModule(AlgebraPtr alg, int height, std::vector<RingVariable> vars, std::vector<BasisVector> basis,
               std::vector<PolyMatrix> x, std::vector<PolyMatrix> tau);
  // Module with zero generator actions (checked separately by check_relations).
  static GradedModule with_zero_action(AlgebraPtr alg, int height, std::vector<RingVariable> vars,
                                       std::vector<BasisVector> basis);
  static GradedModule zero(AlgebraPtr alg, int height);
  // Generator matrices produced on first access by `build` (x then tau).
  using ActionBuilder = std::function<void(std::vector<PolyMatrix>& x, std::vector<PolyMatrix>& tau)>;
  static GradedModule lazy(AlgebraPtr alg, int height, std::vector<RingVariable> vars, std::vector<BasisVector> basis,
                           ActionBuilder build);

  const AlgebraPtr& algebra() const { return alg_; }
  int height() const { return height_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  bool is_finite() const { return vars_.empty(); }
  const std::vector<RingVariable>& vars() const { return vars_; }
  const std::vector<BasisVector>& basis() const { return basis_; }
  const std::vector<PolyMatrix>& x() const { return actions().x; }
  const std::vector<PolyMatrix>& tau() const { return actions().tau; }
  const PolyMatrix& x(int k) const { return actions().x.at(k); }
  const PolyMatrix& tau(int l) const { return actions().tau.at(l); }
  std::vector<long> var_degrees() const;

  // Multiplicity of each color in beta (taken from the basis words).
  std::vector<int> weight() const;

  // Generator list in a fixed order: x_0..x_{n-1}, tau_0..tau_{n-2}.
  int generator_count() const { return 2 * height_ - (height_ > 0 ? 1 : 0); }
  const PolyMatrix& generator(int g) const;
  // Doubled degree of generator g applied to a vector with word nu.
  int generator_deg2(int g, const Word& nu) const;
  Word generator_target_word(int g, const Word& nu) const;
  std::string generator_name(int g) const;

  void set_x(int k, PolyMatrix m);
  void set_tau(int l, PolyMatrix m);

 private:
  // Shared between copies; immutable once built.
  struct Actions {
    std::once_flag once;
    ActionBuilder build;
    std::vector<PolyMatrix> x;
    std::vector<PolyMatrix> tau;
  };
  const Actions& actions() const;
  void validate_actions() const;

  AlgebraPtr alg_;
  int height_ = 0;
  std::vector<RingVariable> vars_;
  std::vector<BasisVector> basis_;
  std::shared_ptr<Actions> actions_ = std::make_shared<Actions>();
};

Report check_relations(const GradedModule& m);
Report check_homogeneity(const GradedModule& m);

// Applies a polynomial in x_0..x_{n-1} (variable k is x_k) to a vector that
// lives in a single idempotent component.
PolyVec apply_x_poly(const GradedModule& m, const Poly& p, const PolyVec& v);

// q-character: word -> (doubled exponent -> multiplicity). Finite modules only.
using QCharacter = std::map<Word, std::map<int, long>>;
QCharacter q_character(const GradedModule& m);
std::string laurent_str(const std::map<int, long>& coeffs);
std::map<std::string, std::string> qchar_strings(const GradedModule& m);
// Ungraded character: word -> dimension.
std::map<Word, long> ungraded_character(const GradedModule& m);

GradedModule shift(const GradedModule& m, int deg2);
GradedModule direct_sum(const GradedModule& a, const GradedModule& b);
// Quotient by z_v^{orders[v]} for every variable; the result is finite.
GradedModule flatten(const GradedModule& m, const std::vector<int>& orders);
GradedModule specialize_zero(const GradedModule& m);
// Replace the variable list, keeping matrices (used to rename).
GradedModule rename_vars(const GradedModule& m, std::vector<RingVariable> vars);

// Matrix of a_{i} = sum_nu (prod_{nu_a = i} x_a) e(nu).
PolyMatrix central_poly_action(const GradedModule& m, int color);

// Parity S(nu) plus degree parity selects the summand.
struct ParitySplit {
  std::vector<int> even_indices;
  std::vector<int> odd_indices;
};
ParitySplit parity_split(const GradedModule& m);
GradedModule restrict_to(const GradedModule& m, const std::vector<int>& indices);

// Regrading to R_c: deg2 += sum_{a<b} c(nu_a, nu_b).
GradedModule twist_grading(const GradedModule& m, const SkewForm& c);

// Scalar columns of a generator matrix of a finite module.
std::vector<SVec> scalar_columns(const PolyMatrix& m);
SVec to_svec(const PolyVec& v);
PolyVec to_polyvec(const SVec& v);

}  // namespace klr
