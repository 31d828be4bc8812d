#include "klr/matrix.hpp"

#include <stdexcept>

namespace klr {

void axpy(PolyVec& target, const Poly& factor, const PolyVec& source) {
  if (factor.is_zero()) return;
  for (const auto& [i, p] : source) {
    auto it = target.find(i);
    Poly term = factor.is_constant() ? p * factor.constant_term() : factor * p;
    if (it == target.end()) {
      if (!term.is_zero()) target.emplace(i, std::move(term));
    } else {
      it->second += term;
      if (it->second.is_zero()) target.erase(it);
    }
  }
}

PolyVec scale(const PolyVec& v, const Poly& factor) {
  PolyVec out;
  axpy(out, factor, v);
  return out;
}

PolyMatrix PolyMatrix::identity(int n) { return scalar(n, Poly(1)); }

PolyMatrix PolyMatrix::scalar(int n, const Poly& p) {
  PolyMatrix m(n, n);
  if (!p.is_zero())
    for (int i = 0; i < n; ++i) m.cols_[i].emplace(i, p);
  return m;
}

void PolyMatrix::set_column(int j, PolyVec v) {
  for (auto it = v.begin(); it != v.end();) {
    if (it->first < 0 || it->first >= rows_) throw std::out_of_range("column entry outside matrix");
    it = it->second.is_zero() ? v.erase(it) : std::next(it);
  }
  cols_.at(j) = std::move(v);
}

void PolyMatrix::set(int i, int j, const Poly& p) {
  if (i < 0 || i >= rows_) throw std::out_of_range("row index");
  auto& col = cols_.at(j);
  if (p.is_zero())
    col.erase(i);
  else
    col[i] = p;
}

void PolyMatrix::add(int i, int j, const Poly& p) {
  if (i < 0 || i >= rows_) throw std::out_of_range("row index");
  auto& col = cols_.at(j);
  auto it = col.find(i);
  if (it == col.end()) {
    if (!p.is_zero()) col.emplace(i, p);
  } else {
    it->second += p;
    if (it->second.is_zero()) col.erase(it);
  }
}

Poly PolyMatrix::get(int i, int j) const {
  const auto& col = cols_.at(j);
  auto it = col.find(i);
  return it == col.end() ? Poly() : it->second;
}

bool PolyMatrix::is_zero() const {
  for (const auto& c : cols_)
    if (!c.empty()) return false;
  return true;
}

std::size_t PolyMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : cols_) n += c.size();
  return n;
}

PolyVec PolyMatrix::apply(const PolyVec& v) const {
  PolyVec out;
  for (const auto& [j, p] : v) axpy(out, p, cols_.at(j));
  return out;
}

PolyMatrix PolyMatrix::map_entries(const std::function<Poly(const Poly&)>& f) const {
  PolyMatrix m(rows_, cols());
  for (int j = 0; j < cols(); ++j)
    for (const auto& [i, p] : cols_[j]) {
      Poly q = f(p);
      if (!q.is_zero()) m.cols_[j].emplace(i, std::move(q));
    }
  return m;
}

PolyMatrix PolyMatrix::transpose() const {
  PolyMatrix m(cols(), rows_);
  for (int j = 0; j < cols(); ++j)
    for (const auto& [i, p] : cols_[j]) m.cols_[i].emplace(j, p);
  return m;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols() != b.rows_) throw std::invalid_argument("matrix size mismatch in product");
  PolyMatrix m(a.rows_, b.cols());
  for (int j = 0; j < b.cols(); ++j) m.cols_[j] = a.apply(b.cols_[j]);
  return m;
}

PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols() != b.cols()) throw std::invalid_argument("matrix size mismatch");
  PolyMatrix m(a);
  for (int j = 0; j < b.cols(); ++j) axpy(m.cols_[j], Poly(1), b.cols_[j]);
  return m;
}

PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols() != b.cols()) throw std::invalid_argument("matrix size mismatch");
  PolyMatrix m(a);
  for (int j = 0; j < b.cols(); ++j) axpy(m.cols_[j], Poly(-1), b.cols_[j]);
  return m;
}

PolyMatrix operator*(const Poly& p, const PolyMatrix& m) {
  PolyMatrix r(m.rows_, m.cols());
  for (int j = 0; j < m.cols(); ++j) r.cols_[j] = scale(m.cols_[j], p);
  return r;
}

bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_;
}

}  // namespace klr
