#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

namespace klr {

// Exact field element. Rational by default; inside a FieldScope with a prime
// modulus every value is kept reduced to a representative in [0, p).
// Values whose reduced numerator and denominator fit in 64 bits are stored
// inline; GMP is used only past that.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v);  // NOLINT(google-explicit-constructor)
  explicit Scalar(const mpq_class& v);

  // Accepts "a", "-a", "a/b".
  static Scalar parse(std::string_view text);

  mpq_class value() const;
  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_one() const { return !big_ && num_ == 1 && den_ == 1; }
  std::string str() const;

  Scalar inverse() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const;

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.equals(b); }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !a.equals(b); }
  // Total order used only for canonical sorting, not a field order.
  friend bool operator<(const Scalar& a, const Scalar& b) { return a.less(b); }

 private:
  bool equals(const Scalar& o) const;
  bool less(const Scalar& o) const;
  void assign(const mpq_class& v);  // canonical v, no modular reduction
  void assign_reduced(mpq_class v);
  void mod_inplace();
  static bool reduced_mod(const Scalar& s, unsigned long p);

  // num_/den_ in lowest terms with den_ > 0 unless big_ is set.
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

// Selects the coefficient field for the current thread. 0 means rationals.
class FieldScope {
 public:
  explicit FieldScope(unsigned long prime);
  ~FieldScope();
  FieldScope(const FieldScope&) = delete;
  FieldScope& operator=(const FieldScope&) = delete;

  static unsigned long modulus();

 private:
  unsigned long previous_;
};

// Parses "rational" or "fp:<p>"; returns 0 for rational. Throws on bad input.
unsigned long parse_field(std::string_view spec);

}  // namespace klr
