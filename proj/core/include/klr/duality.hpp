#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "klr/hom.hpp"
#include "klr/rmatrix.hpp"
#include "klr/submodule.hpp"

namespace klr {

// A family of affinizations M_j (one ring variable z_j each) over a common
// ambient algebra, with R_{j,k}: M_j o M_k -> M_k o M_j and r_j on M_j o M_j.
struct DualityDatum {
  std::string name;
  AlgebraPtr ambient;
  std::vector<std::string> labels;
  std::vector<ModulePtr> modules;
  std::vector<std::vector<GradedHom>> R;  // R[j][k]
  std::vector<GradedHom> r;               // r[j]

  int size() const { return static_cast<int>(modules.size()); }
  // Weight of M_j in the ambient root lattice.
  std::vector<int> beta(int j) const;
  // Image of sum_j gamma_j alpha_j.
  std::vector<int> phi(const std::vector<int>& gamma) const;
};

// R_{j,k} := normalized R-matrices of the given affinizations (R_{j,j}
// specializes to the identity), r_j from R_{j,j}.
DualityDatum datum_from_affinizations(AlgebraPtr ambient, std::vector<std::string> labels,
                                      std::vector<ModulePtr> modules, std::string name = "");
// Datum with prescribed R_{j,k}; r_j is computed from R_{j,j}.
DualityDatum datum_from_rmatrices(AlgebraPtr ambient, std::vector<std::string> labels, std::vector<ModulePtr> modules,
                                  std::vector<std::vector<GradedHom>> R, std::string name = "");

// Cartan datum induced by a duality datum: (a_j, a_j) = deg z_j,
// (a_j, a_k) = -(deg R_{j,k} + deg R_{k,j})/2, Q_{j,k} read off from
// R_{k,j} R_{j,k}, and the grading twist c(j,k) = (deg R_{j,k} - deg R_{k,j})/2.
struct DerivedCartan {
  CartanDatum form;
  std::vector<std::vector<int>> cartan;
  bool finite = false;
  QPolys q;
  SkewForm skew;
  std::vector<std::vector<int>> r_deg2;  // doubled degree of R_{j,k}
  AlgebraPtr algebra;                    // twisted quiver Hecke algebra of the datum
};
// Throws std::invalid_argument when a degree or composition is malformed.
DerivedCartan derive_cartan(const DualityDatum& d);

struct AxiomCheck {
  std::string axiom;  // "F(a)" .. "F(e)"
  Report report;
};
std::vector<AxiomCheck> check_axioms(const DualityDatum& d);
bool axioms_ok(const std::vector<AxiomCheck>& checks);

// Words with the given color multiplicities, lexicographically ordered.
std::vector<Word> words_of_weight(const std::vector<int>& gamma);

// The bimodule Delta(gamma) = sum_mu M_{mu_1} o ... o M_{mu_m}. The right
// action of x_k is multiplication by the ring variable of slot k; tau_l on
// the mu-component is R_{mu_l,mu_{l+1}} in slots (l, l+1), or r_{mu_l} when
// the two colors agree. Components and crossings are built on demand.
class DeltaBimodule {
 public:
  explicit DeltaBimodule(DualityDatum d);

  const DualityDatum& datum() const { return datum_; }
  const DerivedCartan& derived() const { return derived_; }
  const AlgebraPtr& algebra() const { return derived_.algebra; }

  const Convolution& component(const Word& mu) const;
  // Right action of tau_l: Delta_mu -> Delta_{s_l mu}.
  const SlotHom& crossing(const Word& mu, int l) const;
  PolyVec right_tau(const Word& mu, int l, const PolyVec& v) const;
  PolyVec right_x(const Word& mu, int k, const PolyVec& v) const;
  // Doubled degree of e(mu) tau_l.
  int tau_deg2(const Word& mu, int l) const;

 private:
  DualityDatum datum_;
  DerivedCartan derived_;
  mutable std::map<Word, Convolution> components_;
  mutable std::map<std::pair<Word, int>, SlotHom> crossings_;
};

// Right-action relations (with x and tau acting as above), commutation with
// the left action and the degree table, on test vectors f b with b a basis
// vector and f in {1, z_1, ..., z_m}.
Report check_delta(const DeltaBimodule& delta, const std::vector<int>& gamma);

// F(L) = Delta(gamma) (x)_{R^D(gamma)} L for a finite module L over the
// datum's algebra. Computed exactly as the quotient of
// V = sum_nu span(basis of Delta_nu) (x) e(nu)L by the tau relations.
struct FunctorImage {
  Quotient quotient;  // quotient.module is F(L)
  int tensor_dim = 0;
  // For each index of V: support word, Delta basis vector and L basis vector.
  std::vector<int> word_of;
  std::vector<int> delta_index;
  std::vector<int> l_index;
  std::vector<Word> words;
  std::map<int, int> l_position;  // L basis index -> position within its word
  std::map<Word, int> offset;
  std::map<Word, int> word_size;  // dim e(nu)L
  std::map<Word, int> delta_size;  // dim Delta_nu

  const GradedModule& module() const { return quotient.module; }
  int index(const Word& nu, int b, int m) const;
};
FunctorImage apply_functor(const DeltaBimodule& delta, const GradedModule& l);
// F(f) for a degree-preserving map f: L -> L' (scalar columns).
std::vector<SVec> functor_map(const DeltaBimodule& delta, const FunctorImage& source, const FunctorImage& target,
                              const std::vector<SVec>& f);

// F(L o L') against F(L) o F(L').
Report tensor_compatibility_check(const DeltaBimodule& delta, const GradedModule& l, const GradedModule& lp);

// 0 -> A -> B -> C -> 0 given by scalar maps; checks the input is exact and
// that its image under F is.
struct ShortExactSequence {
  GradedModule a, b, c;
  std::vector<SVec> inclusion;   // A -> B
  std::vector<SVec> projection;  // B -> C
};
Report exactness_check(const DeltaBimodule& delta, const ShortExactSequence& seq);

// F applied to N / z^t N for t = 1..levels. Checks that F(N/zN) is simple,
// that dim F(N/z^t N) = t dim F(N/zN), and, when `expected` is given, that
// F(N/z^t N) is isomorphic to expected / z^t for t = levels - 1, levels and
// that `expected` passes check_affinization.
struct AffinizationImage {
  Report report;
  std::vector<int> dims;
  std::optional<GradedModule> top;  // F(N / z^levels N)
};
AffinizationImage functor_on_affinization(const DeltaBimodule& delta, const GradedModule& affinization, int levels,
                                          const GradedModule* expected = nullptr);

// Simple modules of the datum's algebra with height 1..max_height, up to
// grading shift: composition factors of L(j_1) o ... o L(j_m).
std::vector<GradedModule> simple_modules_up_to_height(const AlgebraPtr& alg, int max_height);

}  // namespace klr
