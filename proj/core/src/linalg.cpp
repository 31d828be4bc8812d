#include "klr/linalg.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace klr {

SVec svec_from_map(const std::map<int, Scalar>& m) {
  SVec v;
  v.reserve(m.size());
  for (const auto& [i, c] : m)
    if (!c.is_zero()) v.emplace_back(i, c);
  return v;
}

SVec svec_add(const SVec& a, const Scalar& factor, const SVec& b) {
  if (factor.is_zero()) return a;
  SVec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, factor * b[j].second);
      ++j;
    } else {
      Scalar s = a[i].second + factor * b[j].second;
      if (!s.is_zero()) out.emplace_back(a[i].first, s);
      ++i;
      ++j;
    }
  }
  return out;
}

SVec svec_scale(const SVec& a, const Scalar& factor) {
  if (factor.is_zero()) return {};
  SVec out(a);
  for (auto& [i, c] : out) c *= factor;
  return out;
}

Scalar svec_get(const SVec& a, int index) {
  auto it = std::lower_bound(a.begin(), a.end(), index,
                             [](const auto& e, int k) { return e.first < k; });
  return (it != a.end() && it->first == index) ? it->second : Scalar(0);
}

std::vector<int> Echelon::pivots() const {
  std::vector<int> p;
  for (const auto& r : rows_) p.push_back(r.front().first);
  std::sort(p.begin(), p.end());
  return p;
}

std::vector<int> Echelon::non_pivots() const {
  std::vector<int> out;
  for (int c = 0; c < dim_; ++c)
    if (!is_pivot(c)) out.push_back(c);
  return out;
}

SVec Echelon::reduce(const SVec& v, std::vector<std::pair<int, Scalar>>* coords) const {
  if (rows_.empty() || v.empty()) return v;
  // Dense scratch indexed by column, plus a min-heap of touched columns; rows
  // only reach past their pivot, so columns are settled in increasing order.
  thread_local std::vector<Scalar> work;
  thread_local std::vector<char> queued;
  std::priority_queue<int, std::vector<int>, std::greater<>> pending;
  auto touch = [&](int column) {
    if (static_cast<std::size_t>(column) >= work.size()) {
      work.resize(column + 1);
      queued.resize(column + 1, 0);
    }
    if (!queued[column]) {
      queued[column] = 1;
      pending.push(column);
    }
  };
  for (const auto& [i, c] : v) {
    touch(i);
    work[i] += c;
  }
  SVec out;
  while (!pending.empty()) {
    int column = pending.top();
    pending.pop();
    queued[column] = 0;
    Scalar c = std::move(work[column]);
    work[column] = Scalar();
    if (c.is_zero()) continue;
    auto piv = pivot_row_.find(column);
    if (piv == pivot_row_.end()) {
      out.emplace_back(column, std::move(c));
      continue;
    }
    const SVec& row = rows_[piv->second];
    for (std::size_t k = 1; k < row.size(); ++k) {
      touch(row[k].first);
      work[row[k].first] -= c * row[k].second;
    }
    if (coords) coords->emplace_back(piv->second, std::move(c));
  }
  return out;
}

int Echelon::insert(const SVec& v) {
  SVec r = reduce(v);
  if (r.empty()) return -1;
  Scalar inv = r.front().second.inverse();
  for (auto& [i, c] : r) c *= inv;
  int idx = static_cast<int>(rows_.size());
  pivot_row_.emplace(r.front().first, idx);
  rows_.push_back(std::move(r));
  return idx;
}

std::vector<SVec> kernel_of_columns(const std::vector<SVec>& columns) {
  Echelon ech;
  std::vector<SVec> expr;  // each echelon row as a combination of columns
  std::vector<SVec> kernel;
  for (int k = 0; k < static_cast<int>(columns.size()); ++k) {
    std::vector<std::pair<int, Scalar>> coords;
    SVec residual = ech.reduce(columns[k], &coords);
    SVec combo{{k, Scalar(1)}};
    for (const auto& [row, c] : coords) combo = svec_add(combo, -c, expr[row]);
    if (residual.empty()) {
      kernel.push_back(std::move(combo));
    } else {
      Scalar inv = residual.front().second.inverse();
      int idx = ech.insert(residual);
      (void)idx;
      expr.push_back(svec_scale(combo, inv));
    }
  }
  return kernel;
}

int rank_of(const std::vector<SVec>& vectors) {
  Echelon ech;
  for (const auto& v : vectors) ech.insert(v);
  return ech.rank();
}

int dense_rank(DenseMatrix m) {
  int rows = static_cast<int>(m.size());
  if (rows == 0) return 0;
  int cols = static_cast<int>(m[0].size());
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int p = -1;
    for (int r = rank; r < rows; ++r)
      if (!m[r][c].is_zero()) {
        p = r;
        break;
      }
    if (p < 0) continue;
    std::swap(m[p], m[rank]);
    Scalar inv = m[rank][c].inverse();
    for (int r = rank + 1; r < rows; ++r) {
      if (m[r][c].is_zero()) continue;
      Scalar f = m[r][c] * inv;
      for (int k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

Scalar dense_determinant(DenseMatrix m) {
  int n = static_cast<int>(m.size());
  Scalar det(1);
  for (int c = 0; c < n; ++c) {
    if (static_cast<int>(m[c].size()) != n) throw std::invalid_argument("determinant of non-square matrix");
    int p = -1;
    for (int r = c; r < n; ++r)
      if (!m[r][c].is_zero()) {
        p = r;
        break;
      }
    if (p < 0) return Scalar(0);
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    Scalar inv = m[c][c].inverse();
    for (int r = c + 1; r < n; ++r) {
      if (m[r][c].is_zero()) continue;
      Scalar f = m[r][c] * inv;
      for (int k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

}  // namespace klr
