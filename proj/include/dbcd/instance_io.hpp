// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dbcd/problems.hpp"

namespace dbcd {

// On-disk problem description (DBCD-SPARSE v1):
//   DBCD-SPARSE v1 <m> <N> <nnz> <kind>
//   <row> <col> <value>     x nnz  (0-based, 17 significant digits)
//   <y value>               x m
//   lambda=<value>
//   labels=<l1> <l2> ...    (svm only; entries +1/-1)
//   globalrows=<count>      (optional; coupling rows of block-angular forms)
// Writing is canonical (row-major entries, %.17g), so write-read-write is
// byte-identical.
struct ProblemInstance {
  ProblemKind kind = ProblemKind::lasso;
  int rows = 0;
  int cols = 0;
  std::vector<Triplet> entries;
  std::vector<double> y;  // rhs (lasso) or labels as reals (svm)
  double lambda = 0.0;
  std::optional<int> global_rows;  // block-angular coupling band height

  LassoProblem lasso() const;
  SvmDualProblem svm() const;

  // Wire length of one residual message: coupling rows when known, the full
  // residual dimension otherwise.
  std::int64_t message_entries() const;
};

ProblemInstance load_instance(const std::string& path);
void save_instance(const ProblemInstance& instance, const std::string& path);

// x* sidecar (one "<index> <value>" line per nonzero).
void save_sidecar(const std::vector<double>& x_star, const std::string& path);
std::vector<double> load_sidecar(const std::string& path, int dimension);

}  // namespace dbcd
