#pragma once

#include <cstddef>
#include <vector>

#include "tactmesh/simd.hpp"

namespace tact {

struct Triplet {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

// CSR with canonical storage: column-sorted rows, duplicate (row, col)
// entries summed at construction. Values are f64; the templated multiplies
// cast per stored entry so f32 tensors can use the same operator.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(int rows, int cols, std::vector<Triplet> triplets);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t nnz() const { return values_.size(); }

  const std::vector<int>& row_offsets() const { return row_offsets_; }
  const std::vector<int>& col_indices() const { return col_indices_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  double at(int r, int c) const;  // 0 when absent

  // y = A x
  void matvec(const double* x, double* y) const;

  // Y[rows,f] = A * X[cols,f], dense row-major blocks.
  template <typename T>
  void mul_dense(const T* x, int f, T* y) const {
    for (int i = 0; i < rows_; ++i) {
      T* yrow = y + std::size_t(i) * f;
      for (int j = 0; j < f; ++j) yrow[j] = T(0);
      for (int p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p)
        simd::axpy(T(values_[p]), x + std::size_t(col_indices_[p]) * f, yrow,
                   std::size_t(f));
    }
  }

  // Y[cols,f] += A^T * X[rows,f]; used by the pooling/Chebyshev backward
  // passes so no explicit transpose is stored.
  template <typename T>
  void mul_dense_transposed_add(const T* x, int f, T* y) const {
    for (int i = 0; i < rows_; ++i) {
      const T* xrow = x + std::size_t(i) * f;
      for (int p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p)
        simd::axpy(T(values_[p]), xrow, y + std::size_t(col_indices_[p]) * f,
                   std::size_t(f));
    }
  }

  SparseMatrix transposed() const;
  bool is_symmetric(double tol) const;
  double max_abs() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> row_offsets_{0};
  std::vector<int> col_indices_;
  std::vector<double> values_;
};

}  // namespace tact
