// SPDX-License-Identifier: Apache-2.0

#include "dbcd/separability.hpp"

#include <algorithm>

#include "dbcd/errors.hpp"

namespace dbcd {

SeparabilityStructure SeparabilityStructure::from_groups(
    std::vector<std::vector<int>> groups) {
  if (groups.empty())
    throw ParameterError("SeparabilityStructure: need at least one group");
  SeparabilityStructure s;
  for (auto& g : groups) {
    if (g.empty())
      throw ParameterError("SeparabilityStructure: groups must be nonempty");
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    s.omega = std::max(s.omega, static_cast<int>(g.size()));
  }
  s.groups = std::move(groups);
  return s;
}

SeparabilityStructure SeparabilityStructure::fully_separable(int blocks) {
  std::vector<std::vector<int>> groups(static_cast<std::size_t>(blocks));
  for (int i = 0; i < blocks; ++i) groups[static_cast<std::size_t>(i)] = {i};
  return from_groups(std::move(groups));
}

int compute_xi(const SeparabilityStructure& structure, const Partition& partition) {
  // block -> owning node lookup, then one histogram pass per group
  std::vector<int> owner(static_cast<std::size_t>(partition.blocks()), -1);
  for (int c = 0; c < partition.nodes; ++c)
    for (int b : partition.groups[static_cast<std::size_t>(c)])
      owner[static_cast<std::size_t>(b)] = c;

  int xi = 0;
  std::vector<int> count(static_cast<std::size_t>(partition.nodes));
  for (const auto& j : structure.groups) {
    std::fill(count.begin(), count.end(), 0);
    for (int b : j) {
      if (b < 0 || b >= partition.blocks())
        throw ParameterError("compute_xi: group references a block outside the partition");
      ++count[static_cast<std::size_t>(owner[static_cast<std::size_t>(b)])];
    }
    for (int c : count) xi = std::max(xi, c);
  }
  return xi;
}

}  // namespace dbcd
