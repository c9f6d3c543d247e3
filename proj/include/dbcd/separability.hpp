// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "dbcd/partition.hpp"

namespace dbcd {

// The collection of coupling groups J: the smooth objective decomposes as a
// sum of pieces, each touching only the blocks in one group. omega is the
// degree of separability, max |J|.
struct SeparabilityStructure {
  std::vector<std::vector<int>> groups;  // each nonempty, ascending block ids
  int omega = 0;

  // Validates and computes omega. Throws ParameterError for empty groups.
  static SeparabilityStructure from_groups(std::vector<std::vector<int>> groups);

  // J = {{0},{1},...,{n-1}}; omega = 1.
  static SeparabilityStructure fully_separable(int blocks);
};

// xi = max over nodes c and groups J of |P^(c) intersect J|. Satisfies
// ceil(omega/C) <= xi <= omega.
int compute_xi(const SeparabilityStructure& structure, const Partition& partition);

}  // namespace dbcd
