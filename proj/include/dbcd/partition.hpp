// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "dbcd/block_layout.hpp"

namespace dbcd {

enum class PartitionScheme { contiguous, strided };

// Balanced split of the blocks {0,...,n-1} across C nodes: groups are
// pairwise disjoint, cover all blocks, and each has size exactly s = n/C.
struct Partition {
  int nodes = 1;                         // C
  int group_size = 0;                    // s
  std::vector<std::vector<int>> groups;  // ascending block ids per node

  int blocks() const { return nodes * group_size; }
  // Node owning a given block.
  int owner(int block) const;
};

// contiguous: node c owns blocks [c*s, (c+1)*s). strided: block i goes to
// node i mod C. Throws PartitionError unless C divides the block count.
Partition make_balanced_partition(const BlockLayout& layout, int nodes,
                                  PartitionScheme scheme = PartitionScheme::contiguous);
Partition make_balanced_partition(int blocks, int nodes,
                                  PartitionScheme scheme = PartitionScheme::contiguous);

}  // namespace dbcd
