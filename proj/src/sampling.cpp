// SPDX-License-Identifier: Apache-2.0

#include "dbcd/sampling.hpp"

#include <algorithm>
#include <string>

#include "dbcd/errors.hpp"

namespace dbcd {

DistributedSampling sample_distributed(const Partition& partition, int tau,
                                       NodeRngs& rngs) {
  const int s = partition.group_size;
  if (tau < 1 || tau > s)
    throw ParameterError("sample_distributed: tau=" + std::to_string(tau) +
                         " outside [1, " + std::to_string(s) + "]");
  if (rngs.nodes() < partition.nodes)
    throw ParameterError("sample_distributed: fewer streams than nodes");

  DistributedSampling draw;
  draw.tau = tau;
  draw.per_node.resize(static_cast<std::size_t>(partition.nodes));
  for (int c = 0; c < partition.nodes; ++c) {
    std::vector<int> pool = partition.groups[static_cast<std::size_t>(c)];
    Rng& rng = rngs.node(c);
    for (int j = 0; j < tau; ++j) {
      const auto pick = j + static_cast<int>(rng.below(static_cast<std::uint64_t>(s - j)));
      std::swap(pool[static_cast<std::size_t>(j)], pool[static_cast<std::size_t>(pick)]);
    }
    auto& z = draw.per_node[static_cast<std::size_t>(c)];
    z.assign(pool.begin(), pool.begin() + tau);
    std::sort(z.begin(), z.end());
  }
  return draw;
}

}  // namespace dbcd
