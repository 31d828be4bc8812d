#include "klr/cartan.hpp"

#include <sstream>
#include <stdexcept>

#include "klr/linalg.hpp"

namespace klr {

void Report::merge(const Report& other, const std::string& prefix) {
  for (const auto& s : other.issues) issues.push_back(prefix + s);
}

int CartanDatum::index_of(const std::string& label) const {
  for (int i = 0; i < rank(); ++i)
    if (labels[i] == label) return i;
  throw std::invalid_argument("unknown index label '" + label + "'");
}

int CartanDatum::cartan_entry(int i, int j) const {
  int num = 2 * form[i][j];
  if (form[i][i] == 0 || num % form[i][i] != 0)
    throw std::domain_error("2(a_i,a_j)/(a_i,a_i) is not an integer");
  return num / form[i][i];
}

std::vector<std::vector<int>> CartanDatum::cartan_matrix() const {
  std::vector<std::vector<int>> a(rank(), std::vector<int>(rank()));
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j) a[i][j] = cartan_entry(i, j);
  return a;
}

std::string CartanDatum::word_str(const Word& w) const {
  std::string s = "(";
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) s += ",";
    s += labels.at(w[k]);
  }
  return s + ")";
}

Report validate_cartan(const CartanDatum& d) {
  Report r;
  int n = d.rank();
  if (static_cast<int>(d.form.size()) != n) {
    r.fail("form is not square over the index set");
    return r;
  }
  for (const auto& row : d.form)
    if (static_cast<int>(row.size()) != n) {
      r.fail("form is not square over the index set");
      return r;
    }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (d.form[i][j] != d.form[j][i]) r.fail("form not symmetric at (" + d.labels[i] + "," + d.labels[j] + ")");
  for (int i = 0; i < n; ++i)
    if (d.form[i][i] <= 0 || d.form[i][i] % 2 != 0)
      r.fail("condition (1): (a_" + d.labels[i] + ",a_" + d.labels[i] + ") not in 2Z_{>0}");
  for (int i = 0; i < n; ++i) {
    if (d.form[i][i] <= 0) continue;
    for (int j = 0; j < n; ++j) {
      if ((2 * d.form[i][j]) % d.form[i][i] != 0) {
        r.fail("condition (2): <h_" + d.labels[i] + ",a_" + d.labels[j] + "> not an integer");
        continue;
      }
      int a = 2 * d.form[i][j] / d.form[i][i];
      if (i != j && a > 0)
        r.fail("condition (3): positive off-diagonal entry at (" + d.labels[i] + "," + d.labels[j] + ")");
    }
  }
  // Conditions (4) and (5) hold for the realization with weight lattice
  // spanned by simple roots and fundamental weights, which is always available.
  return r;
}

bool is_finite_type(const std::vector<std::vector<int>>& form) {
  int n = static_cast<int>(form.size());
  for (int k = 1; k <= n; ++k) {
    DenseMatrix minor(k, std::vector<Scalar>(k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) minor[i][j] = Scalar(form[i][j]);
    Scalar det = dense_determinant(minor);
    if (!(Scalar(0) < det)) return false;
  }
  return true;
}

Report validate_qpolys(const QPolys& q, const CartanDatum& d) {
  Report r;
  int n = d.rank();
  if (static_cast<int>(q.table.size()) != n) {
    r.fail("Q table size does not match the index set");
    return r;
  }
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(q.table[i].size()) != n) {
      r.fail("Q table size does not match the index set");
      return r;
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Poly& p = q.table[i][j];
      std::string pair = "(" + d.labels[i] + "," + d.labels[j] + ")";
      if (p.num_vars() > 2) r.fail("Q" + pair + " uses more than two variables");
      if (i == j) {
        if (!p.is_zero()) r.fail("Q" + pair + " must vanish on the diagonal");
        continue;
      }
      for (const auto& [m, c] : p.terms()) {
        int pu = monomial_exponent(m, 0), pv = monomial_exponent(m, 1);
        if (2 * d.form[i][j] + pu * d.form[i][i] + pv * d.form[j][j] != 0)
          r.fail("Q" + pair + " term u^" + std::to_string(pu) + " v^" + std::to_string(pv) +
                 " violates the support equation");
      }
      if (p != q.table[j][i].swap_vars(0, 1)) r.fail("Q" + pair + " is not symmetric with Q of the reversed pair");
      if ((2 * d.form[i][j]) % d.form[i][i] == 0) {
        int a = 2 * d.form[i][j] / d.form[i][i];
        Monomial lead{-a};
        monomial_trim(lead);
        if (a <= 0 && p.coefficient(lead).is_zero())
          r.fail("Q" + pair + " leading coefficient t_{-a,0} is not invertible");
      }
    }
  return r;
}

Poly qbar_poly(const Poly& q) {
  // Q(u,v) - Q(w,v) over (u - w), variables u=0, v=1, w=2.
  Poly qw = q.remap({2, 1});
  auto quotient = (q - qw).divide_exact(Poly::variable(0) - Poly::variable(2));
  if (!quotient) throw std::logic_error("Q-bar division is not exact");
  return *quotient;
}

Scalar qbar_eval(const QPolys& q, int i, int j, const Scalar& u, const Scalar& v, const Scalar& w) {
  return qbar_poly(q.at(i, j)).evaluate({u, v, w});
}

SkewForm SkewForm::zero(int rank) {
  return SkewForm{std::vector<std::vector<int>>(rank, std::vector<int>(rank, 0))};
}

bool SkewForm::is_zero() const {
  for (const auto& row : values)
    for (int v : row)
      if (v != 0) return false;
  return true;
}

Report validate_skew(const SkewForm& c, int rank) {
  Report r;
  if (c.values.empty()) return r;
  if (static_cast<int>(c.values.size()) != rank) {
    r.fail("skew form size does not match the index set");
    return r;
  }
  for (int i = 0; i < rank; ++i) {
    if (static_cast<int>(c.values[i].size()) != rank) {
      r.fail("skew form size does not match the index set");
      return r;
    }
    for (int j = 0; j < rank; ++j)
      if (c.values[i][j] != -c.values[j][i]) r.fail("skew form is not skew-symmetric");
  }
  return r;
}

KlrAlgebra::KlrAlgebra(CartanDatum datum, QPolys q, SkewForm c)
    : datum_(std::move(datum)), q_(std::move(q)), skew_(std::move(c)) {
  Report rep = validate_cartan(datum_);
  rep.merge(validate_qpolys(q_, datum_));
  rep.merge(validate_skew(skew_, datum_.rank()));
  if (!rep.ok()) throw std::invalid_argument("invalid algebra data: " + rep.issues.front());
  if (skew_.values.empty()) skew_ = SkewForm::zero(datum_.rank());
  int n = datum_.rank();
  qbar_.assign(n, std::vector<Poly>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) qbar_[i][j] = qbar_poly(q_.at(i, j));
}

int KlrAlgebra::deg2_tau(int a, int b) const {
  return -2 * datum_.form[a][b] - 2 * skew_.at(a, b);
}

int KlrAlgebra::twist_shift2(const Word& nu) const {
  int s = 0;
  for (std::size_t a = 0; a < nu.size(); ++a)
    for (std::size_t b = a + 1; b < nu.size(); ++b) s += skew_.at(nu[a], nu[b]);
  return s;
}

std::shared_ptr<const KlrAlgebra> KlrAlgebra::with_skew(const SkewForm& c) const {
  return std::make_shared<KlrAlgebra>(datum_, q_, c);
}

bool KlrAlgebra::same_parameters(const KlrAlgebra& o) const {
  if (datum_.labels != o.datum_.labels || datum_.form != o.datum_.form) return false;
  for (int i = 0; i < rank(); ++i)
    for (int j = 0; j < rank(); ++j)
      if (q_.at(i, j) != o.q_.at(i, j) || skew_.at(i, j) != o.skew_.at(i, j)) return false;
  return true;
}

int parity(const CartanDatum& d, const Word& nu) {
  int s = 0;
  for (std::size_t a = 0; a < nu.size(); ++a)
    for (std::size_t b = a + 1; b < nu.size(); ++b)
      if (nu[a] < nu[b]) s += d.form[nu[a]][nu[b]];
  return ((s % 2) + 2) % 2;
}

int generator_degree2(const KlrAlgebra& alg, const std::string& tag, const Word& nu, int position) {
  int n = static_cast<int>(nu.size());
  if (tag == "e") return 0;
  if (tag == "x") {
    if (position < 0 || position >= n) throw std::out_of_range("x position out of range");
    return alg.deg2_x(nu[position]);
  }
  if (tag == "tau") {
    if (position < 0 || position + 1 >= n) throw std::out_of_range("tau position out of range");
    return alg.deg2_tau_at(nu, position);
  }
  throw std::invalid_argument("unknown generator tag '" + tag + "'");
}

}  // namespace klr
