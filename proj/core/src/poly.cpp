#include "klr/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace klr {

void monomial_trim(Monomial& m) {
  while (!m.empty() && m.back() == 0) m.pop_back();
}

Monomial monomial_mul(const Monomial& a, const Monomial& b) {
  Monomial r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

int monomial_exponent(const Monomial& m, int var) {
  return var < static_cast<int>(m.size()) ? m[var] : 0;
}

namespace {

bool divides(const Monomial& a, const Monomial& b) {
  if (a.size() > b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Monomial monomial_div(const Monomial& b, const Monomial& a) {
  Monomial r(b);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] -= a[i];
  monomial_trim(r);
  return r;
}

}  // namespace

Poly::Poly(long c) {
  Scalar s(c);
  if (!s.is_zero()) terms_.emplace(Monomial{}, s);
}

Poly::Poly(const Scalar& c) {
  if (!c.is_zero()) terms_.emplace(Monomial{}, c);
}

Poly Poly::variable(int var, int power) {
  Monomial m(var + 1, 0);
  m[var] = power;
  monomial_trim(m);
  return monomial(std::move(m));
}

Poly Poly::monomial(Monomial m, const Scalar& c) {
  Poly p;
  monomial_trim(m);
  if (!c.is_zero()) p.terms_.emplace(std::move(m), c);
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Scalar Poly::constant_term() const { return coefficient({}); }

Scalar Poly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar(0) : it->second;
}

int Poly::num_vars() const {
  int n = 0;
  for (const auto& [m, c] : terms_) n = std::max(n, static_cast<int>(m.size()));
  return n;
}

void Poly::add_term(const Monomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  if (!m.empty() && m.back() == 0) {
    Monomial trimmed = m;
    monomial_trim(trimmed);
    add_term(trimmed, c);
    return;
  }
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  if (a.is_zero() || b.is_zero()) return r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(monomial_mul(ma, mb), ca * cb);
  return r;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

Poly& Poly::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

Poly Poly::operator-() const {
  Poly r(*this);
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

bool operator<(const Poly& a, const Poly& b) {
  return std::lexicographical_compare(a.terms_.begin(), a.terms_.end(), b.terms_.begin(),
                                      b.terms_.end());
}

Poly Poly::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative power");
  Poly r(1), base(*this);
  while (e > 0) {
    if (e & 1) r *= base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

Poly Poly::shift(int offset) const {
  if (offset == 0) return *this;
  Poly r;
  for (const auto& [m, c] : terms_) {
    if (m.empty()) {
      r.terms_.emplace(m, c);
      continue;
    }
    Monomial n(m.size() + offset, 0);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      int target = static_cast<int>(i) + offset;
      if (target < 0) throw std::invalid_argument("shift moves variable below 0");
      n[target] = m[i];
    }
    monomial_trim(n);
    r.add_term(n, c);
  }
  return r;
}

Poly Poly::remap(const std::vector<int>& mapping) const {
  Poly r;
  for (const auto& [m, c] : terms_) {
    Monomial n;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      int target = i < mapping.size() ? mapping[i] : static_cast<int>(i);
      if (static_cast<int>(n.size()) <= target) n.resize(target + 1, 0);
      n[target] += m[i];
    }
    monomial_trim(n);
    r.add_term(n, c);
  }
  return r;
}

Poly Poly::swap_vars(int a, int b) const {
  int n = std::max({num_vars(), a + 1, b + 1});
  std::vector<int> mapping(n);
  for (int i = 0; i < n; ++i) mapping[i] = i;
  std::swap(mapping[a], mapping[b]);
  return remap(mapping);
}

Poly Poly::compose(const std::vector<Poly>& images) const {
  Poly r;
  std::vector<std::vector<Poly>> powers(images.size());
  for (const auto& [m, c] : terms_) {
    Poly term(c);
    Monomial rest;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (i < images.size()) {
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(Poly(1));
        while (static_cast<int>(cache.size()) <= m[i]) cache.push_back(cache.back() * images[i]);
        term *= cache[m[i]];
      } else {
        if (rest.size() <= i) rest.resize(i + 1, 0);
        rest[i] = m[i];
      }
    }
    if (!rest.empty()) term *= Poly::monomial(rest);
    r += term;
  }
  return r;
}

Poly Poly::substitute(int var, const Poly& value) const {
  std::vector<Poly> images;
  for (int i = 0; i <= var; ++i) images.push_back(i == var ? value : Poly::variable(i));
  return compose(images);
}

Poly Poly::set_zero(int var) const {
  Poly r;
  for (const auto& [m, c] : terms_)
    if (monomial_exponent(m, var) == 0) r.terms_.emplace(m, c);
  return r;
}

Scalar Poly::evaluate(const std::vector<Scalar>& point) const {
  Scalar total(0);
  for (const auto& [m, c] : terms_) {
    Scalar t = c;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (i >= point.size()) throw std::out_of_range("evaluation point too short");
      for (int e = 0; e < m[i]; ++e) t *= point[i];
    }
    total += t;
  }
  return total;
}

int Poly::degree_in(int var) const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, monomial_exponent(m, var));
  return d;
}

int Poly::valuation_in(int var) const {
  if (terms_.empty()) return -1;
  int v = -1;
  for (const auto& [m, c] : terms_) {
    int e = monomial_exponent(m, var);
    if (v < 0 || e < v) v = e;
  }
  return v;
}

int Poly::total_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) {
    int s = 0;
    for (int e : m) s += e;
    d = std::max(d, s);
  }
  return d;
}

std::optional<long> Poly::homogeneous_degree(const std::vector<long>& weights) const {
  std::optional<long> deg;
  for (const auto& [m, c] : terms_) {
    long s = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (i >= weights.size()) return std::nullopt;
      s += weights[i] * m[i];
    }
    if (deg && *deg != s) return std::nullopt;
    deg = s;
  }
  return deg ? deg : std::optional<long>(0);
}

std::map<int, Poly> Poly::coefficients_in(int var) const {
  std::map<int, Poly> out;
  for (const auto& [m, c] : terms_) {
    int e = monomial_exponent(m, var);
    Monomial n(m);
    if (e > 0) {
      n[var] = 0;
      monomial_trim(n);
    }
    out[e].add_term(n, c);
  }
  return out;
}

std::optional<Poly> Poly::divide_exact(const Poly& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("division by zero polynomial");
  if (is_zero()) return Poly();
  const Monomial& lead = divisor.leading_monomial();
  Scalar lead_inv = divisor.leading_coefficient().inverse();
  Poly rem(*this), quotient;
  while (!rem.is_zero()) {
    const Monomial& top = rem.leading_monomial();
    if (!divides(lead, top)) return std::nullopt;
    Monomial q = monomial_div(top, lead);
    Scalar c = rem.leading_coefficient() * lead_inv;
    quotient.add_term(q, c);
    Poly step = Poly::monomial(q, c) * divisor;
    rem -= step;
  }
  return quotient;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return *this * leading_coefficient().inverse();
}

std::string Poly::str(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    std::string coeff = c.str();
    bool negative = coeff[0] == '-';
    if (negative) coeff.erase(0, 1);
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    bool unit = coeff == "1";
    if (!unit || m.empty()) os << coeff;
    bool need_star = !unit;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (need_star) os << "*";
      need_star = true;
      os << (i < names.size() ? names[i] : "v" + std::to_string(i));
      if (m[i] > 1) os << "^" << m[i];
    }
  }
  return os.str();
}

namespace {

// Pseudo-remainder of f by g as polynomials in var.
Poly pseudo_remainder(Poly f, const Poly& g, int var) {
  int dg = g.degree_in(var);
  Poly lc_g = g.coefficients_in(var).rbegin()->second;
  while (!f.is_zero() && f.degree_in(var) >= dg) {
    int df = f.degree_in(var);
    Poly lc_f = f.coefficients_in(var).rbegin()->second;
    f = lc_g * f - lc_f * Poly::variable(var, df - dg) * g;
  }
  return f;
}

Poly content_in(const Poly& f, int var) {
  Poly c;
  for (const auto& [e, coeff] : f.coefficients_in(var)) {
    c = gcd(c, coeff);
    if (c.is_constant() && !c.is_zero()) break;
  }
  return c;
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Poly(1);
  int var = std::max(a.num_vars(), b.num_vars()) - 1;
  Poly ca = content_in(a, var), cb = content_in(b, var);
  Poly cont = gcd(ca, cb);
  Poly pa = *a.divide_exact(ca), pb = *b.divide_exact(cb);
  if (pa.degree_in(var) < pb.degree_in(var)) std::swap(pa, pb);
  while (!pb.is_zero() && pb.degree_in(var) > 0) {
    Poly r = pseudo_remainder(pa, pb, var);
    pa = pb;
    if (r.is_zero()) {
      pb = Poly();
    } else {
      Poly rc = content_in(r, var);
      pb = *r.divide_exact(rc);
    }
  }
  // pb nonzero of degree 0 in var means the primitive parts are coprime.
  if (!pb.is_zero()) return cont.monic();
  Poly pc = content_in(pa, var);
  Poly prim = *pa.divide_exact(pc);
  return (cont * prim).monic();
}

Poly gcd_all(const std::vector<Poly>& polys) {
  Poly g;
  for (const auto& p : polys) {
    g = gcd(g, p);
    if (g.is_constant() && !g.is_zero()) break;
  }
  return g;
}

Poly divided_difference(const Poly& f, int a, int b) {
  Poly num = f - f.swap_vars(a, b);
  Poly den = Poly::variable(a) - Poly::variable(b);
  auto q = num.divide_exact(den);
  if (!q) throw std::logic_error("divided difference is not exact");
  return *q;
}

}  // namespace klr
