// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "dbcd/instance_io.hpp"

namespace dbcd {

// Synthetic least-squares family with block-angular structure: C diagonal
// local blocks (localRows x localCols each) over a shared coupling band of
// globalRows rows spanning all columns. Off-diagonal local blocks are
// structurally zero. A sparse planted solution fixes y = A x* + noise, so
// the optimum is approximately known.
struct BlockAngularSpec {
  int nodes = 2;            // C
  int local_rows = 20;
  int local_cols = 10;
  int global_rows = 5;
  int local_nnz_per_row = 3;
  int global_nnz_per_row = 8;
  int xstar_nonzeros = 4;
  double noise_sigma = 0.0;
  double lambda = 0.1;
  std::uint64_t seed = 0;

  int total_rows() const { return nodes * local_rows + global_rows; }
  int total_cols() const { return nodes * local_cols; }
};

struct GeneratedInstance {
  ProblemInstance instance;
  std::vector<double> x_star;
};

// Values uniform on [-1, 1]; noise Gaussian with the requested sigma;
// deterministic for a given seed.
GeneratedInstance generate_block_angular(const BlockAngularSpec& spec);

// Writes the instance to `path` and the planted x* to `path`.xstar.
void generate_to_files(const BlockAngularSpec& spec, const std::string& path);

// Separable two-feature classification set for the SVM dual: positive
// examples near (+2,+2), negatives near (-2,-2), labels +/-1.
ProblemInstance generate_separable_svm(int examples, double lambda,
                                       std::uint64_t seed);

}  // namespace dbcd
