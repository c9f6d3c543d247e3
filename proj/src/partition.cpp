// SPDX-License-Identifier: Apache-2.0

#include "dbcd/partition.hpp"

#include <string>

#include "dbcd/errors.hpp"

namespace dbcd {

int Partition::owner(int block) const {
  for (int c = 0; c < nodes; ++c) {
    const auto& g = groups[static_cast<std::size_t>(c)];
    for (int b : g)
      if (b == block) return c;
  }
  throw ParameterError("Partition::owner: block " + std::to_string(block) +
                       " out of range");
}

Partition make_balanced_partition(int blocks, int nodes, PartitionScheme scheme) {
  if (nodes <= 0) throw PartitionError("partition: node count must be positive");
  if (blocks <= 0) throw PartitionError("partition: block count must be positive");
  if (blocks % nodes != 0)
    throw PartitionError("partition: " + std::to_string(nodes) +
                         " nodes do not divide " + std::to_string(blocks) +
                         " blocks");
  Partition part;
  part.nodes = nodes;
  part.group_size = blocks / nodes;
  part.groups.assign(static_cast<std::size_t>(nodes), {});
  for (auto& g : part.groups) g.reserve(static_cast<std::size_t>(part.group_size));
  if (scheme == PartitionScheme::contiguous) {
    for (int c = 0; c < nodes; ++c)
      for (int i = 0; i < part.group_size; ++i)
        part.groups[static_cast<std::size_t>(c)].push_back(c * part.group_size + i);
  } else {
    for (int i = 0; i < blocks; ++i)
      part.groups[static_cast<std::size_t>(i % nodes)].push_back(i);
  }
  return part;
}

Partition make_balanced_partition(const BlockLayout& layout, int nodes,
                                  PartitionScheme scheme) {
  return make_balanced_partition(layout.blocks(), nodes, scheme);
}

}  // namespace dbcd
