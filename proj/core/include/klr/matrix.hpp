#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "klr/poly.hpp"

namespace klr {

// Sparse vector with polynomial entries, keyed by basis index.
using PolyVec = std::map<int, Poly>;

void axpy(PolyVec& target, const Poly& factor, const PolyVec& source);
PolyVec scale(const PolyVec& v, const Poly& factor);

// Sparse matrix with polynomial entries. Column j holds the image of basis
// vector j, so applying the matrix is a column combination.
class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(int rows, int cols) : rows_(rows), cols_(cols) {}
  static PolyMatrix identity(int n);
  static PolyMatrix scalar(int n, const Poly& p);

  int rows() const { return rows_; }
  int cols() const { return static_cast<int>(cols_.size()); }

  const PolyVec& column(int j) const { return cols_[j]; }
  void set_column(int j, PolyVec v);
  void set(int i, int j, const Poly& p);
  void add(int i, int j, const Poly& p);
  Poly get(int i, int j) const;
  bool is_zero() const;
  std::size_t nonzeros() const;

  PolyVec apply(const PolyVec& v) const;
  PolyMatrix map_entries(const std::function<Poly(const Poly&)>& f) const;
  PolyMatrix transpose() const;

  friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b);
  friend PolyMatrix operator*(const Poly& p, const PolyMatrix& m);
  friend bool operator==(const PolyMatrix& a, const PolyMatrix& b);
  friend bool operator!=(const PolyMatrix& a, const PolyMatrix& b) { return !(a == b); }

 private:
  int rows_ = 0;
  std::vector<PolyVec> cols_;

 public:
  PolyMatrix(int rows, std::vector<PolyVec> cols) : rows_(rows), cols_(std::move(cols)) {}
};

}  // namespace klr
