#pragma once

#include <string>
#include <vector>

#include "klr/cartan.hpp"
#include "klr/duality.hpp"
#include "klr/module.hpp"

namespace klr {

// Type A_ell with Q_{i,i+1}(u,v) = u - v and Q_{i,j} = 1 for |i-j| > 1.
AlgebraPtr ambient_A(int ell);
// Type B_ell, (a_1,a_1) = 2 and the other simple roots of norm 4, with
// Q_{1,2}(u,v) = u^2 - v, Q_{i,i+1}(u,v) = u - v for i > 1, Q = 1 otherwise.
AlgebraPtr ambient_B(int ell);

// One-dimensional module on a single word with every x and tau acting by 0.
// Throws if the relations fail for that word.
GradedModule one_dim_module(AlgebraPtr alg, const Word& word, int deg2 = 0);
// L(i) for a color index.
GradedModule simple_module(AlgebraPtr alg, int color);

// M_z = k[z] (x) M with x_j acting as z + x_j. Needs Q_{i,j} to be a
// polynomial in u - v on the support and equal norms there.
GradedModule symmetric_affinization(const GradedModule& m, const std::string& var = "z");

// K(i^n): the quotient of the nil-Hecke polynomial representation by the
// ideal of e_1..e_{n-1}, with z = e_n. Free over k[z] on the Artin monomials.
// The generator sits in degree -n(n-1)(a_i,a_i)/2 so that K/zK = L(i)^{o n}.
GradedModule build_K(AlgebraPtr alg, int color, int n);

// Example modules over the ambient algebras.
// L(1,2)_z over A_ell: one basis vector on (1,2), x_1 = x_2 = z, tau_1 = 0.
GradedModule affinization_L12(AlgebraPtr type_a);
// L(1,2)_z over B_ell: x_j = z^{(a_j,a_j)/2}, tau_1 = 0.
GradedModule affinization_B1(AlgebraPtr type_b);
// L(1,1,2)_z over B_ell: rank two over k[z] (basis u, v).
GradedModule module_B2(AlgebraPtr type_b);

// The duality data of the worked examples, by name "D", "C", "B1" or "B2".
// D and C live over A_ell (J = 1..ell); B1 and B2 over B_ell (J = 1..ell-1).
// R_{j,k} (j != k) is the raw R-matrix, except R_{2,1} in D, which is divided
// by z_1 - z_2; R_{j,j} is normalized to specialize to the identity.
DualityDatum duality_datum(const std::string& name, int ell);
// Names accepted by duality_datum.
std::vector<std::string> duality_datum_names();

}  // namespace klr
