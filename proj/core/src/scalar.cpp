#include "klr/scalar.hpp"

#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace klr {

namespace {
__extension__ typedef __int128 Wide;
__extension__ typedef unsigned __int128 UWide;

thread_local unsigned long g_modulus = 0;

// Keeps modular products inside 128 bits.
constexpr unsigned long kMaxModulus = 1UL << 62;

bool is_prime(unsigned long p) {
  if (p < 2) return false;
  for (unsigned long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

UWide magnitude(Wide v) { return v < 0 ? UWide(0) - UWide(v) : UWide(v); }

UWide gcd_wide(UWide a, UWide b) {
  while (b != 0) {
    if ((a >> 64) == 0 && (b >> 64) == 0) return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
    UWide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(Wide v) {
  // the minimum is excluded so that negation and std::gcd stay defined
  return v > std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

mpz_class to_mpz(Wide v) {
  UWide m = magnitude(v);
  mpz_class hi(static_cast<unsigned long>(m >> 64));
  mpz_class out = hi << 64;
  out += static_cast<unsigned long>(m & ~std::uint64_t{0});
  return v < 0 ? mpz_class(-out) : out;
}

// a^{-1} mod p for 0 < a < p.
std::int64_t inverse_mod(std::int64_t a, std::int64_t p) {
  std::int64_t old_r = a, r = p, old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  return old_s < 0 ? old_s + p : old_s;
}
}  // namespace

FieldScope::FieldScope(unsigned long prime) : previous_(g_modulus) {
  if (prime != 0 && !is_prime(prime)) throw std::invalid_argument("field modulus is not prime");
  if (prime >= kMaxModulus) throw std::invalid_argument("field modulus too large");
  g_modulus = prime;
}

FieldScope::~FieldScope() { g_modulus = previous_; }

unsigned long FieldScope::modulus() { return g_modulus; }

unsigned long parse_field(std::string_view spec) {
  if (spec == "rational" || spec == "Q") return 0;
  if (spec.substr(0, 3) == "fp:") {
    std::string digits(spec.substr(3));
    if (digits.empty()) throw std::invalid_argument("missing prime after fp:");
    if (digits.size() > 18) throw std::invalid_argument("field modulus too large");
    for (char c : digits)
      if (c < '0' || c > '9') throw std::invalid_argument("bad prime in field spec");
    unsigned long p = std::stoul(digits);
    if (!is_prime(p)) throw std::invalid_argument("field modulus is not prime");
    if (p >= kMaxModulus) throw std::invalid_argument("field modulus too large");
    return p;
  }
  throw std::invalid_argument("field must be 'rational' or 'fp:<p>'");
}

namespace {

// Stores num/den (den != 0) in lowest terms, inline when it fits.
struct Normalized {
  Wide num, den;
};
Normalized normalize(Wide num, Wide den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  UWide g = gcd_wide(magnitude(num), UWide(den));
  if (g > 1) {
    num /= Wide(g);
    den /= Wide(g);
  }
  return {num, den};
}

}  // namespace

bool Scalar::reduced_mod(const Scalar& s, unsigned long p) {
  return !s.big_ && s.den_ == 1 && s.num_ >= 0 && static_cast<unsigned long>(s.num_) < p;
}

Scalar::Scalar(long v) : num_(v) {
  if (v == std::numeric_limits<long>::min()) assign(mpq_class(v));
  mod_inplace();
}

Scalar::Scalar(const mpq_class& v) {
  mpq_class c(v);
  c.canonicalize();
  assign_reduced(std::move(c));
}

mpq_class Scalar::value() const {
  if (big_) return *big_;
  return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

void Scalar::assign(const mpq_class& v) {
  if (v.get_num().fits_slong_p() && v.get_den().fits_slong_p() &&
      v.get_num() != std::numeric_limits<long>::min()) {
    num_ = v.get_num().get_si();
    den_ = v.get_den().get_si();
    big_.reset();
  } else {
    num_ = 0;
    den_ = 1;
    big_ = std::make_shared<const mpq_class>(v);
  }
}

void Scalar::assign_reduced(mpq_class v) {
  unsigned long p = g_modulus;
  if (p == 0) {
    assign(v);
    return;
  }
  mpz_class pz(p);
  mpz_class num = v.get_num() % pz;
  if (num < 0) num += pz;
  mpz_class den = v.get_den() % pz;
  if (den == 0) throw std::domain_error("denominator divisible by field characteristic");
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t());
  mpz_class r = (num * inv) % pz;
  big_.reset();
  num_ = r.get_si();
  den_ = 1;
}

// In modular mode inline values always have den_ == 1 and 0 <= num_ < p.
void Scalar::mod_inplace() {
  unsigned long p = g_modulus;
  if (p == 0) return;
  if (big_) {
    assign_reduced(*big_);
    return;
  }
  auto pm = static_cast<std::int64_t>(p);
  std::int64_t n = num_ % pm;
  if (n < 0) n += pm;
  if (den_ != 1) {
    std::int64_t d = den_ % pm;
    if (d == 0) throw std::domain_error("denominator divisible by field characteristic");
    n = static_cast<std::int64_t>(Wide(n) * inverse_mod(d, pm) % pm);
  }
  num_ = n;
  den_ = 1;
}

Scalar Scalar::parse(std::string_view text) {
  std::string s(text);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) throw std::invalid_argument("empty scalar literal");
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad scalar literal '" + s + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  return Scalar(q);
}

std::string Scalar::str() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

bool Scalar::equals(const Scalar& o) const {
  if (!big_ && !o.big_) return num_ == o.num_ && den_ == o.den_;
  if (big_ && o.big_) return *big_ == *o.big_;
  return false;  // canonical storage: a big value never fits inline
}

bool Scalar::less(const Scalar& o) const {
  if (!big_ && !o.big_) return Wide(num_) * o.den_ < Wide(o.num_) * den_;
  return value() < o.value();
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero");
  Scalar out;
  unsigned long p = g_modulus;
  if (p != 0 && !big_ && reduced_mod(*this, p)) {
    out.num_ = inverse_mod(num_, static_cast<std::int64_t>(p));
    return out;
  }
  if (p == 0 && !big_) {
    Normalized r = normalize(den_, num_);
    if (fits(r.num) && fits(r.den)) {
      out.num_ = static_cast<std::int64_t>(r.num);
      out.den_ = static_cast<std::int64_t>(r.den);
      return out;
    }
  }
  out.assign_reduced(mpq_class(1) / value());
  return out;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (!big_ && !o.big_) {
    unsigned long p = g_modulus;
    if (p != 0 && reduced_mod(*this, p) && reduced_mod(o, p)) {
      Wide s = Wide(num_) + o.num_;
      if (s >= Wide(p)) s -= Wide(p);
      num_ = static_cast<std::int64_t>(s);
      return *this;
    }
    if (den_ == 1 && o.den_ == 1) {
      std::int64_t s;
      if (!__builtin_add_overflow(num_, o.num_, &s) && s != std::numeric_limits<std::int64_t>::min()) {
        num_ = s;
        return *this;
      }
    }
    if (p != 0) {
      assign_reduced(value() + o.value());
      return *this;
    }
    // cancel the common part of the denominators first
    std::int64_t g = std::gcd(den_, o.den_);
    Wide num = Wide(num_) * (o.den_ / g) + Wide(o.num_) * (den_ / g);
    Wide den = Wide(den_ / g) * o.den_;
    Normalized r = g == 1 && num != 0 ? Normalized{num, den} : normalize(num, den);
    if (fits(r.num) && fits(r.den)) {
      num_ = static_cast<std::int64_t>(r.num);
      den_ = static_cast<std::int64_t>(r.den);
      return *this;
    }
    mpq_class q(to_mpz(r.num), to_mpz(r.den));
    assign(q);
    return *this;
  }
  assign_reduced(value() + o.value());
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  if (!big_ && !o.big_) {
    unsigned long p = g_modulus;
    if (p != 0 && reduced_mod(*this, p) && reduced_mod(o, p)) {
      num_ = static_cast<std::int64_t>(Wide(num_) * o.num_ % Wide(p));
      return *this;
    }
    if (den_ == 1 && o.den_ == 1) {
      std::int64_t s;
      if (!__builtin_mul_overflow(num_, o.num_, &s) && s != std::numeric_limits<std::int64_t>::min()) {
        num_ = s;
        return *this;
      }
    }
    if (p != 0) {
      assign_reduced(value() * o.value());
      return *this;
    }
    if (num_ == 0 || o.num_ == 0) {
      num_ = 0;
      den_ = 1;
      return *this;
    }
    std::int64_t g1 = std::gcd(num_, o.den_);
    std::int64_t g2 = std::gcd(o.num_, den_);
    Normalized r{Wide(num_ / g1) * (o.num_ / g2), Wide(den_ / g2) * (o.den_ / g1)};
    if (fits(r.num) && fits(r.den)) {
      num_ = static_cast<std::int64_t>(r.num);
      den_ = static_cast<std::int64_t>(r.den);
      return *this;
    }
    assign(mpq_class(to_mpz(r.num), to_mpz(r.den)));
    return *this;
  }
  assign_reduced(value() * o.value());
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  return *this *= o.inverse();
}

Scalar Scalar::operator-() const {
  Scalar out;
  if (big_) {
    out.assign_reduced(-*big_);
    return out;
  }
  unsigned long p = g_modulus;
  if (p != 0 && reduced_mod(*this, p)) {
    out.num_ = num_ == 0 ? 0 : static_cast<std::int64_t>(p) - num_;
    return out;
  }
  out.num_ = -num_;
  out.den_ = den_;
  out.mod_inplace();
  return out;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace klr
