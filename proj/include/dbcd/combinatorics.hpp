// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace dbcd {

// log of the binomial coefficient C(n, k); -inf outside the support.
double log_choose(std::int64_t n, std::int64_t k);

// Exact C(n, k); throws BudgetError on 64-bit overflow.
std::uint64_t choose_exact(int n, int k);

// Calls `fn` once per k-subset of {0,...,m-1}, in lexicographic order.
void for_each_combination(int m, int k,
                          const std::function<void(const std::vector<int>&)>& fn);

}  // namespace dbcd
