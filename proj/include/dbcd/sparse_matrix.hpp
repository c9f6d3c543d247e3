// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace dbcd {

struct Triplet {
  int row = 0;
  int col = 0;
  double value = 0.0;
};

// Sparse matrix stored in both compressed-column and compressed-row form,
// built once from triplets. Column access serves per-coordinate work on
// least-squares instances; row access serves per-example work on the SVM
// dual. No explicit zeros, no duplicate positions.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(int rows, int cols, std::vector<Triplet> entries);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::int64_t nonzeros() const { return static_cast<std::int64_t>(csc_values_.size()); }

  std::span<const int> column_rows(int j) const {
    return {csc_rows_.data() + csc_ptr_[static_cast<std::size_t>(j)],
            csc_rows_.data() + csc_ptr_[static_cast<std::size_t>(j) + 1]};
  }
  std::span<const double> column_values(int j) const {
    return {csc_values_.data() + csc_ptr_[static_cast<std::size_t>(j)],
            csc_values_.data() + csc_ptr_[static_cast<std::size_t>(j) + 1]};
  }
  std::span<const int> row_cols(int i) const {
    return {csr_cols_.data() + csr_ptr_[static_cast<std::size_t>(i)],
            csr_cols_.data() + csr_ptr_[static_cast<std::size_t>(i) + 1]};
  }
  std::span<const double> row_values(int i) const {
    return {csr_values_.data() + csr_ptr_[static_cast<std::size_t>(i)],
            csr_values_.data() + csr_ptr_[static_cast<std::size_t>(i) + 1]};
  }

  double column_norm_squared(int j) const;
  double row_norm_squared(int i) const;

  double column_dot(int j, std::span<const double> v) const;  // A_{:j}^T v
  double row_dot(int i, std::span<const double> v) const;     // A_{i:} v

  void add_scaled_column(int j, double alpha, std::span<double> out) const;
  void add_scaled_row(int i, double alpha, std::span<double> out) const;

  // A x with per-row compensated accumulation.
  std::vector<double> multiply(std::span<const double> x) const;
  // A^T v with per-column compensated accumulation.
  std::vector<double> multiply_transpose(std::span<const double> v) const;

  // Row-major sorted triplets (canonical order).
  std::vector<Triplet> to_triplets() const;

  // True when the column-major and row-major stores describe the same
  // entries (exercised by tests; both are built from one triplet list).
  bool forms_consistent() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::size_t> csc_ptr_;
  std::vector<int> csc_rows_;
  std::vector<double> csc_values_;
  std::vector<std::size_t> csr_ptr_;
  std::vector<int> csr_cols_;
  std::vector<double> csr_values_;
};

}  // namespace dbcd
