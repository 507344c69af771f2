#pragma once

#include "sspec/exactpoly.hpp"

#include <tuple>
#include <vector>

namespace sspec::exactpoly {

/// Square integer matrix in CSR form, columns sorted within each row.
/// Realized group-ring operators are sums of a few permutation matrices, so
/// everything downstream iterates nonzeros instead of dense storage;
/// densification happens only inside the eigensolver and determinant paths.
struct SparseIntMat {
  long n = 0;
  std::vector<long> row_ptr;  // size n+1
  std::vector<long> col;
  std::vector<Int> val;

  static SparseIntMat zero(long n);
  static SparseIntMat identity(long n);
  static SparseIntMat from_triplets(long n, std::vector<std::tuple<long, long, Int>> t);

  long nnz() const { return static_cast<long>(col.size()); }
  Int at(long i, long j) const;
  std::vector<Int> dense() const;         // row-major n*n
  std::vector<double> dense_double() const;
  bool is_symmetric() const;
  SparseIntMat transpose() const;
  SparseIntMat multiply(const SparseIntMat& o) const;
  SparseIntMat add_scaled(const SparseIntMat& o, const Int& s) const;  // this + s*o
  double inf_norm() const;  // max row sum of |entries|
};

/// det(t*I - M), monic and exact: division-free Berkowitz recursion with
/// sparse leading-submatrix products.
IntPoly charpoly(const SparseIntMat& m);

/// Exact determinant by fraction-free (Bareiss) elimination; dense input
/// row-major.
Int bareiss_determinant(std::vector<Int> a, long n);

/// Exact rank over Q via fraction-free elimination with full pivoting.
long bareiss_rank(std::vector<Int> a, long rows, long cols);

}  // namespace sspec::exactpoly
