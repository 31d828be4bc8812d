#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "klr/poly.hpp"

namespace klr {

struct Report {
  std::vector<std::string> issues;
  bool ok() const { return issues.empty(); }
  void fail(std::string msg) { issues.push_back(std::move(msg)); }
  void merge(const Report& other, const std::string& prefix = "");
};

// A word in the index set, stored as indices into the label list.
using Word = std::vector<int>;

struct CartanDatum {
  std::vector<std::string> labels;
  std::vector<std::vector<int>> form;  // (alpha_i, alpha_j)

  int rank() const { return static_cast<int>(labels.size()); }
  int index_of(const std::string& label) const;  // throws on unknown label
  int norm(int i) const { return form[i][i]; }
  // <h_i, alpha_j>; requires exact divisibility.
  int cartan_entry(int i, int j) const;
  std::vector<std::vector<int>> cartan_matrix() const;
  std::string word_str(const Word& w) const;  // "(1,2)"
};

Report validate_cartan(const CartanDatum& datum);

// Exact positive-definiteness of the form (leading principal minors).
bool is_finite_type(const std::vector<std::vector<int>>& symmetric_form);

// Q_{i,j}(u, v) as a polynomial in variables 0 (u) and 1 (v).
struct QPolys {
  std::vector<std::vector<Poly>> table;
  const Poly& at(int i, int j) const { return table[i][j]; }
};

Report validate_qpolys(const QPolys& q, const CartanDatum& datum);

// Q-bar as a polynomial in u (0), v (1), w (2).
Poly qbar_poly(const Poly& q);
Scalar qbar_eval(const QPolys& q, int i, int j, const Scalar& u, const Scalar& v, const Scalar& w);

struct SkewForm {
  std::vector<std::vector<int>> values;
  static SkewForm zero(int rank);
  int at(int i, int j) const { return values.empty() ? 0 : values[i][j]; }
  bool is_zero() const;
};

Report validate_skew(const SkewForm& c, int rank);

// Everything needed to act with R(beta) on modules: Cartan datum, parameter
// polynomials, optional grading twist, precomputed Q-bar.
class KlrAlgebra {
 public:
  KlrAlgebra(CartanDatum datum, QPolys q, SkewForm c = {});

  const CartanDatum& datum() const { return datum_; }
  const QPolys& q() const { return q_; }
  const SkewForm& skew() const { return skew_; }
  const Poly& qbar(int i, int j) const { return qbar_[i][j]; }
  int rank() const { return datum_.rank(); }

  // Doubled degrees of generators.
  int deg2_x(int color) const { return 2 * datum_.form[color][color]; }
  int deg2_tau(int left_color, int right_color) const;
  // Degree of tau_l e(nu) in doubled units.
  int deg2_tau_at(const Word& nu, int l) const { return deg2_tau(nu[l], nu[l + 1]); }
  // 2 H(nu) = sum_{a<b} c(nu_a, nu_b).
  int twist_shift2(const Word& nu) const;

  std::shared_ptr<const KlrAlgebra> with_skew(const SkewForm& c) const;
  bool same_parameters(const KlrAlgebra& other) const;

 private:
  CartanDatum datum_;
  QPolys q_;
  SkewForm skew_;
  std::vector<std::vector<Poly>> qbar_;
};

using AlgebraPtr = std::shared_ptr<const KlrAlgebra>;

// Parity map S(nu) = sum_{a<b, nu_a < nu_b} (alpha_{nu_a}, alpha_{nu_b}) mod 2,
// with the order of the label list.
int parity(const CartanDatum& datum, const Word& nu);

// Degree bookkeeping used by generator_degree: tag is "e", "x" or "tau".
int generator_degree2(const KlrAlgebra& alg, const std::string& tag, const Word& nu, int position);

}  // namespace klr
