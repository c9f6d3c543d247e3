// SPDX-License-Identifier: Apache-2.0

#include "dbcd/block_layout.hpp"

#include "dbcd/errors.hpp"

namespace dbcd {

BlockLayout BlockLayout::from_sizes(std::vector<int> sizes) {
  if (sizes.empty())
    throw ParameterError("BlockLayout: need at least one block");
  BlockLayout layout;
  layout.offsets_.reserve(sizes.size() + 1);
  layout.offsets_.push_back(0);
  for (int s : sizes) {
    if (s <= 0) throw ParameterError("BlockLayout: block sizes must be positive");
    layout.offsets_.push_back(layout.offsets_.back() + s);
  }
  layout.total_ = layout.offsets_.back();
  layout.sizes_ = std::move(sizes);
  return layout;
}

BlockLayout BlockLayout::uniform(int blocks, int block_size) {
  return from_sizes(std::vector<int>(static_cast<std::size_t>(blocks), block_size));
}

std::vector<double> project_onto_sampling(std::span<const double> x,
                                          std::span<const int> blocks,
                                          const BlockLayout& layout) {
  if (static_cast<int>(x.size()) != layout.dim())
    throw ParameterError("project_onto_sampling: vector/layout size mismatch");
  std::vector<double> out(x.size(), 0.0);
  for (int i : blocks) {
    if (i < 0 || i >= layout.blocks())
      throw ParameterError("project_onto_sampling: block index out of range");
    const int lo = layout.offset(i);
    const int hi = lo + layout.size(i);
    for (int j = lo; j < hi; ++j) out[static_cast<std::size_t>(j)] = x[static_cast<std::size_t>(j)];
  }
  return out;
}

double weighted_norm_squared(std::span<const double> x, const WeightVector& w,
                             const BlockLayout& layout) {
  if (static_cast<int>(x.size()) != layout.dim())
    throw ParameterError("weighted_norm_squared: vector/layout size mismatch");
  if (static_cast<int>(w.size()) != layout.blocks())
    throw ParameterError("weighted_norm_squared: weight/layout size mismatch");
  double total = 0.0;
  for (int i = 0; i < layout.blocks(); ++i) {
    double block_sq = 0.0;
    for (double v : layout.block(x, i)) block_sq += v * v;
    total += w[static_cast<std::size_t>(i)] * block_sq;
  }
  return total;
}

}  // namespace dbcd
