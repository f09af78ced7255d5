#include "tactmesh/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "tactmesh/common.hpp"

namespace tact {

SparseMatrix::SparseMatrix(int rows, int cols, std::vector<Triplet> triplets)
    : rows_(rows), cols_(cols) {
  require(rows >= 0 && cols >= 0, ErrorCode::contract,
          "sparse matrix dimensions must be non-negative");
  for (const auto& t : triplets)
    require(t.row >= 0 && t.row < rows && t.col >= 0 && t.col < cols,
            ErrorCode::contract, "sparse triplet out of bounds");
  std::sort(triplets.begin(), triplets.end(),
            [](const Triplet& a, const Triplet& b) {
              return a.row != b.row ? a.row < b.row : a.col < b.col;
            });
  row_offsets_.assign(std::size_t(rows) + 1, 0);
  col_indices_.reserve(triplets.size());
  values_.reserve(triplets.size());
  std::size_t i = 0;
  while (i < triplets.size()) {
    const int r = triplets[i].row;
    const int c = triplets[i].col;
    double v = 0.0;
    while (i < triplets.size() && triplets[i].row == r && triplets[i].col == c)
      v += triplets[i++].value;
    col_indices_.push_back(c);
    values_.push_back(v);
    row_offsets_[std::size_t(r) + 1] = int(values_.size());
  }
  for (int r = 0; r < rows; ++r)
    row_offsets_[std::size_t(r) + 1] =
        std::max(row_offsets_[std::size_t(r) + 1], row_offsets_[std::size_t(r)]);
}

double SparseMatrix::at(int r, int c) const {
  const auto begin = col_indices_.begin() + row_offsets_[std::size_t(r)];
  const auto end = col_indices_.begin() + row_offsets_[std::size_t(r) + 1];
  const auto it = std::lower_bound(begin, end, c);
  if (it == end || *it != c) return 0.0;
  return values_[std::size_t(it - col_indices_.begin())];
}

void SparseMatrix::matvec(const double* x, double* y) const {
  for (int i = 0; i < rows_; ++i) {
    double acc = 0.0;
    for (int p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p)
      acc += values_[p] * x[col_indices_[p]];
    y[i] = acc;
  }
}

SparseMatrix SparseMatrix::transposed() const {
  std::vector<Triplet> t;
  t.reserve(values_.size());
  for (int i = 0; i < rows_; ++i)
    for (int p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p)
      t.push_back({col_indices_[p], i, values_[p]});
  return SparseMatrix(cols_, rows_, std::move(t));
}

bool SparseMatrix::is_symmetric(double tol) const {
  if (rows_ != cols_) return false;
  const SparseMatrix t = transposed();
  if (t.nnz() != nnz()) return false;
  for (int i = 0; i < rows_; ++i) {
    if (t.row_offsets_[i] != row_offsets_[i]) return false;
    for (int p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p) {
      if (t.col_indices_[p] != col_indices_[p]) return false;
      if (std::abs(t.values_[p] - values_[p]) > tol) return false;
    }
  }
  return true;
}

double SparseMatrix::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace tact
