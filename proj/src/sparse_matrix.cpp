// SPDX-License-Identifier: Apache-2.0

#include "dbcd/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dbcd/errors.hpp"
#include "dbcd/numerics.hpp"

namespace dbcd {

SparseMatrix::SparseMatrix(int rows, int cols, std::vector<Triplet> entries)
    : rows_(rows), cols_(cols) {
  if (rows <= 0 || cols <= 0)
    throw ParameterError("SparseMatrix: dimensions must be positive");
  for (const auto& t : entries) {
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
      throw ParameterError("SparseMatrix: entry (" + std::to_string(t.row) +
                           ", " + std::to_string(t.col) + ") out of range");
    if (t.value == 0.0)
      throw ParameterError("SparseMatrix: explicit zeros are not stored");
  }

  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  for (std::size_t i = 1; i < entries.size(); ++i)
    if (entries[i].row == entries[i - 1].row && entries[i].col == entries[i - 1].col)
      throw ParameterError("SparseMatrix: duplicate entry at (" +
                           std::to_string(entries[i].row) + ", " +
                           std::to_string(entries[i].col) + ")");

  // CSR straight from the row-major order
  csr_ptr_.assign(static_cast<std::size_t>(rows) + 1, 0);
  csr_cols_.reserve(entries.size());
  csr_values_.reserve(entries.size());
  for (const auto& t : entries) {
    ++csr_ptr_[static_cast<std::size_t>(t.row) + 1];
    csr_cols_.push_back(t.col);
    csr_values_.push_back(t.value);
  }
  for (std::size_t i = 1; i < csr_ptr_.size(); ++i) csr_ptr_[i] += csr_ptr_[i - 1];

  // CSC via counting sort on columns (keeps rows ascending inside columns)
  csc_ptr_.assign(static_cast<std::size_t>(cols) + 1, 0);
  for (const auto& t : entries) ++csc_ptr_[static_cast<std::size_t>(t.col) + 1];
  for (std::size_t i = 1; i < csc_ptr_.size(); ++i) csc_ptr_[i] += csc_ptr_[i - 1];
  csc_rows_.resize(entries.size());
  csc_values_.resize(entries.size());
  std::vector<std::size_t> next(csc_ptr_.begin(), csc_ptr_.end() - 1);
  for (const auto& t : entries) {
    const std::size_t slot = next[static_cast<std::size_t>(t.col)]++;
    csc_rows_[slot] = t.row;
    csc_values_[slot] = t.value;
  }
}

double SparseMatrix::column_norm_squared(int j) const {
  double sum = 0.0;
  for (double v : column_values(j)) sum += v * v;
  return sum;
}

double SparseMatrix::row_norm_squared(int i) const {
  double sum = 0.0;
  for (double v : row_values(i)) sum += v * v;
  return sum;
}

double SparseMatrix::column_dot(int j, std::span<const double> v) const {
  const auto rows = column_rows(j);
  const auto vals = column_values(j);
  double sum = 0.0;
  for (std::size_t k = 0; k < rows.size(); ++k)
    sum += vals[k] * v[static_cast<std::size_t>(rows[k])];
  return sum;
}

double SparseMatrix::row_dot(int i, std::span<const double> v) const {
  const auto cols = row_cols(i);
  const auto vals = row_values(i);
  double sum = 0.0;
  for (std::size_t k = 0; k < cols.size(); ++k)
    sum += vals[k] * v[static_cast<std::size_t>(cols[k])];
  return sum;
}

void SparseMatrix::add_scaled_column(int j, double alpha, std::span<double> out) const {
  const auto rows = column_rows(j);
  const auto vals = column_values(j);
  for (std::size_t k = 0; k < rows.size(); ++k)
    out[static_cast<std::size_t>(rows[k])] += alpha * vals[k];
}

void SparseMatrix::add_scaled_row(int i, double alpha, std::span<double> out) const {
  const auto cols = row_cols(i);
  const auto vals = row_values(i);
  for (std::size_t k = 0; k < cols.size(); ++k)
    out[static_cast<std::size_t>(cols[k])] += alpha * vals[k];
}

std::vector<double> SparseMatrix::multiply(std::span<const double> x) const {
  std::vector<double> out(static_cast<std::size_t>(rows_));
  for (int i = 0; i < rows_; ++i) {
    CompensatedSum acc;
    const auto cols = row_cols(i);
    const auto vals = row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k)
      acc.add(vals[k] * x[static_cast<std::size_t>(cols[k])]);
    out[static_cast<std::size_t>(i)] = acc.value();
  }
  return out;
}

std::vector<double> SparseMatrix::multiply_transpose(std::span<const double> v) const {
  std::vector<double> out(static_cast<std::size_t>(cols_));
  for (int j = 0; j < cols_; ++j) {
    CompensatedSum acc;
    const auto rows = column_rows(j);
    const auto vals = column_values(j);
    for (std::size_t k = 0; k < rows.size(); ++k)
      acc.add(vals[k] * v[static_cast<std::size_t>(rows[k])]);
    out[static_cast<std::size_t>(j)] = acc.value();
  }
  return out;
}

std::vector<Triplet> SparseMatrix::to_triplets() const {
  std::vector<Triplet> out;
  out.reserve(csr_values_.size());
  for (int i = 0; i < rows_; ++i) {
    const auto cols = row_cols(i);
    const auto vals = row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k)
      out.push_back({i, cols[k], vals[k]});
  }
  return out;
}

bool SparseMatrix::forms_consistent() const {
  if (csc_values_.size() != csr_values_.size()) return false;
  std::vector<Triplet> from_csc;
  from_csc.reserve(csc_values_.size());
  for (int j = 0; j < cols_; ++j) {
    const auto rows = column_rows(j);
    const auto vals = column_values(j);
    for (std::size_t k = 0; k < rows.size(); ++k)
      from_csc.push_back({rows[k], j, vals[k]});
  }
  std::sort(from_csc.begin(), from_csc.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  const auto from_csr = to_triplets();
  for (std::size_t k = 0; k < from_csr.size(); ++k) {
    if (from_csc[k].row != from_csr[k].row || from_csc[k].col != from_csr[k].col ||
        from_csc[k].value != from_csr[k].value)
      return false;
  }
  return true;
}

}  // namespace dbcd
