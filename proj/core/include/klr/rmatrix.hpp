#pragma once

#include <optional>
#include <string>
#include <vector>

#include "klr/hom.hpp"
#include "klr/submodule.hpp"

namespace klr {

// Intertwiner phi_k (0-based k) applied through the module's matrices.
PolyVec phi_apply(const GradedModule& m, int k, const PolyVec& v);
// phi_{w_1} ... phi_{w_t} v, rightmost letter first.
PolyVec phi_word_apply(const GradedModule& m, const ReducedWord& word, const PolyVec& v);
// Square identity, product formula for phi_{w^-1} phi_w, independence of the
// reduced word and phi_w x_k = x_{w(k)} phi_w, for every permutation.
Report check_intertwiners(const GradedModule& m);

// R_{M,N}: M o N -> N o M extending u (x) v -> phi_{w[n,m]}(v (x) u).
GradedHom rmatrix_raw(const ModulePtr& m, const ModulePtr& n);

// Minimum valuation in one target variable over all entries (h nonzero).
int z_valuation(const GradedHom& h, int var);

struct NormalizedRMatrix {
  GradedHom hom;       // = scale * raw / removed
  Poly removed;        // monic content divided out
  Scalar scale;
};
// Divides out the monic content. An endomorphism (same factor twice) is
// scaled so that its zero specialization is the identity; otherwise the first
// nonzero entry of the zero specialization (column-major) becomes 1.
NormalizedRMatrix normalize_rmatrix(const GradedHom& raw, bool endomorphism);
// R for two affinizations, normalized as above.
NormalizedRMatrix rmatrix_pair(const ModulePtr& m, const ModulePtr& n);
// Zero specialization as a map between the finite convolutions.
GradedHom specialize_r(const GradedHom& normalized);
// r_{M,N} for finite modules, through symmetric affinizations of both.
GradedHom r_matrix(const ModulePtr& m, const ModulePtr& n);

// r = (R - id) / (z_1 - z_2) for a normalized endomorphism R of M o M.
GradedHom r_endomorphism(const GradedHom& r_hat);
// f with R_{N,M} R_{M,N} = f id, or nullopt when the composite is not scalar.
std::optional<Poly> composition_polynomial(const GradedHom& r_nm, const GradedHom& r_mn);

// Image of r_{M,N} inside N o M.
GradedModule hconv(const ModulePtr& m, const ModulePtr& n);
GradedModule hconv_from(const GradedHom& r);
// The same simple module graded as the head of M o N (Im r shifted by -deg r).
GradedModule simple_head(const ModulePtr& m, const ModulePtr& n);

struct AffinizationReport {
  bool valid = false;
  bool strong = false;
  bool even = false;
  // a_i = c_i z^{d_i} for each color in the support (d_i = -1 if not of that form)
  std::vector<std::pair<int, Scalar>> central;  // (d_i, c_i) per support color
  std::vector<int> support;
  Report issues;
};
AffinizationReport check_affinization(const GradedModule& m);

// Substitutes z_M = z^{a}, z_N = z^{b} in M o N (a = deg z_M / d, b = deg z_N / d).
GradedModule fuse_affinizations(const ModulePtr& m, const ModulePtr& n, int deg2);

}  // namespace klr
