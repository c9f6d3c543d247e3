// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "dbcd/partition.hpp"
#include "dbcd/rng.hpp"

namespace dbcd {

// One draw of a (C,tau)-distributed sampling: each node's subset Z^(c) is a
// uniform tau-subset of its own group, independent across nodes and draws.
// The union always has exactly C*tau blocks.
struct DistributedSampling {
  int tau = 0;
  std::vector<std::vector<int>> per_node;  // Z^(c), each sorted ascending

  std::vector<int> all() const {
    std::vector<int> out;
    out.reserve(per_node.size() * static_cast<std::size_t>(tau));
    for (const auto& z : per_node) out.insert(out.end(), z.begin(), z.end());
    return out;
  }
};

// Draws Z^(c) for every node using that node's dedicated stream (partial
// Fisher-Yates over a copy of the group). Throws ParameterError unless
// 1 <= tau <= s.
DistributedSampling sample_distributed(const Partition& partition, int tau,
                                       NodeRngs& rngs);

}  // namespace dbcd
