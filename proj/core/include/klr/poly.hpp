#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "klr/scalar.hpp"

namespace klr {

// Exponent vector with trailing zeros trimmed, so std::vector's lexicographic
// comparison is the lex monomial order with variable 0 most significant.
using Monomial = std::vector<int>;

Monomial monomial_mul(const Monomial& a, const Monomial& b);
int monomial_exponent(const Monomial& m, int var);
void monomial_trim(Monomial& m);

// Sparse multivariate polynomial over Scalar.
class Poly {
 public:
  using Terms = std::map<Monomial, Scalar>;

  Poly() = default;
  Poly(long c);  // NOLINT(google-explicit-constructor)
  Poly(const Scalar& c);  // NOLINT(google-explicit-constructor)
  static Poly variable(int var, int power = 1);
  static Poly monomial(Monomial m, const Scalar& c = Scalar(1));

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Scalar constant_term() const;
  Scalar coefficient(const Monomial& m) const;
  // One past the largest variable index that occurs.
  int num_vars() const;
  std::size_t size() const { return terms_.size(); }

  // Leading term in lex order. Undefined on zero.
  const Monomial& leading_monomial() const { return terms_.rbegin()->first; }
  const Scalar& leading_coefficient() const { return terms_.rbegin()->second; }

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Scalar& s);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Scalar& s) { return a *= s; }
  friend Poly operator*(const Scalar& s, Poly a) { return a *= s; }
  Poly operator-() const;
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
  friend bool operator<(const Poly& a, const Poly& b);

  void add_term(const Monomial& m, const Scalar& c);

  Poly pow(int e) const;
  // Renames variable v to v + offset.
  Poly shift(int offset) const;
  // Renames variable v to mapping[v]; variables beyond the mapping are kept.
  Poly remap(const std::vector<int>& mapping) const;
  Poly swap_vars(int a, int b) const;
  // Replaces each variable v with images[v] (variables beyond stay fixed).
  Poly compose(const std::vector<Poly>& images) const;
  Poly substitute(int var, const Poly& value) const;
  Poly set_zero(int var) const;
  Scalar evaluate(const std::vector<Scalar>& point) const;

  int degree_in(int var) const;      // -1 for zero
  int valuation_in(int var) const;   // -1 for zero
  int total_degree() const;          // -1 for zero
  // Weighted degree when every term has the same weighted degree, else nullopt.
  std::optional<long> homogeneous_degree(const std::vector<long>& weights) const;
  // Coefficients as a polynomial in `var`, keyed by power; var removed.
  std::map<int, Poly> coefficients_in(int var) const;

  // Exact quotient if divisor divides *this, else nullopt.
  std::optional<Poly> divide_exact(const Poly& divisor) const;
  Poly monic() const;

  std::string str(const std::vector<std::string>& names = {}) const;

 private:
  Terms terms_;
};

Poly gcd(const Poly& a, const Poly& b);
// (f - f with vars a,b swapped) / (x_a - x_b).
Poly divided_difference(const Poly& f, int a, int b);
// Content over the given coefficient list: monic gcd of all entries.
Poly gcd_all(const std::vector<Poly>& polys);

}  // namespace klr
