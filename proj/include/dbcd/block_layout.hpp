// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

namespace dbcd {

// Per-block positive weights; together with a BlockLayout they define the
// weighted norm ||x||_w^2 = sum_i w_i ||x^(i)||_2^2.
using WeightVector = std::vector<double>;

// Decomposition of R^N into n blocks of sizes N_1,...,N_n. Block i occupies
// coordinates [offset(i), offset(i+1)); every coordinate belongs to exactly
// one block.
class BlockLayout {
 public:
  BlockLayout() = default;

  // Throws ParameterError unless all sizes are positive.
  static BlockLayout from_sizes(std::vector<int> sizes);

  // n blocks, each of the given size (size 1 by default).
  static BlockLayout uniform(int blocks, int block_size = 1);

  int blocks() const { return static_cast<int>(sizes_.size()); }
  int dim() const { return total_; }
  int size(int block) const { return sizes_[static_cast<std::size_t>(block)]; }
  int offset(int block) const { return offsets_[static_cast<std::size_t>(block)]; }

  std::span<const double> block(std::span<const double> x, int i) const {
    return x.subspan(static_cast<std::size_t>(offset(i)),
                     static_cast<std::size_t>(size(i)));
  }
  std::span<double> block(std::span<double> x, int i) const {
    return x.subspan(static_cast<std::size_t>(offset(i)),
                     static_cast<std::size_t>(size(i)));
  }

 private:
  std::vector<int> sizes_;
  std::vector<int> offsets_;  // length n+1, strictly increasing, ends at N
  int total_ = 0;
};

// x restricted to the given blocks, zero elsewhere. An empty set yields the
// zero vector.
std::vector<double> project_onto_sampling(std::span<const double> x,
                                          std::span<const int> blocks,
                                          const BlockLayout& layout);

// sum_i w_i ||x^(i)||_2^2 with Euclidean block norms.
double weighted_norm_squared(std::span<const double> x, const WeightVector& w,
                             const BlockLayout& layout);

}  // namespace dbcd
