#pragma once

#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "klr/scalar.hpp"

namespace klr {

// Sparse scalar vector, sorted by index, no zero entries.
using SVec = std::vector<std::pair<int, Scalar>>;

SVec svec_from_map(const std::map<int, Scalar>& m);
SVec svec_add(const SVec& a, const Scalar& factor, const SVec& b);  // a + factor*b
SVec svec_scale(const SVec& a, const Scalar& factor);
Scalar svec_get(const SVec& a, int index);

// Semi-echelon basis of a growing subspace. Each stored row has a distinct
// pivot (its first index) with coefficient 1; stored rows are the basis.
class Echelon {
 public:
  explicit Echelon(int dimension = 0) : dim_(dimension) {}

  int dimension() const { return dim_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  const std::vector<SVec>& rows() const { return rows_; }
  bool is_pivot(int column) const { return pivot_row_.count(column) > 0; }
  std::vector<int> pivots() const;
  std::vector<int> non_pivots() const;

  // Residual of v modulo the span; it vanishes on every pivot column.
  // When coords is given, v = residual + sum coords[k] * rows()[k].
  SVec reduce(const SVec& v, std::vector<std::pair<int, Scalar>>* coords = nullptr) const;
  bool contains(const SVec& v) const { return reduce(v).empty(); }
  // Adds v to the span; returns the index of the new row or -1 if dependent.
  int insert(const SVec& v);

 private:
  int dim_;
  std::vector<SVec> rows_;
  std::unordered_map<int, int> pivot_row_;
};

// Basis of {x : sum_k x_k * columns[k] = 0}, columns given as sparse vectors.
std::vector<SVec> kernel_of_columns(const std::vector<SVec>& columns);
int rank_of(const std::vector<SVec>& vectors);

// Dense helpers for small square matrices.
using DenseMatrix = std::vector<std::vector<Scalar>>;
int dense_rank(DenseMatrix m);
Scalar dense_determinant(DenseMatrix m);

}  // namespace klr
