// SPDX-License-Identifier: Apache-2.0

#include "dbcd/combinatorics.hpp"

#include <cmath>
#include <limits>

#include "dbcd/errors.hpp"

namespace dbcd {

double log_choose(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n || n < 0) return -std::numeric_limits<double>::infinity();
  if (k == 0 || k == n) return 0.0;
  const long double lg = std::lgamma(static_cast<long double>(n + 1)) -
                         std::lgamma(static_cast<long double>(k + 1)) -
                         std::lgamma(static_cast<long double>(n - k + 1));
  return static_cast<double>(lg);
}

std::uint64_t choose_exact(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    const std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
    // result * num / i is always integral at this point
    if (result > std::numeric_limits<std::uint64_t>::max() / num)
      throw BudgetError("choose_exact: binomial coefficient overflows 64 bits");
    result = result * num / static_cast<std::uint64_t>(i);
  }
  return result;
}

void for_each_combination(
    int m, int k, const std::function<void(const std::vector<int>&)>& fn) {
  if (k < 0 || k > m) return;
  std::vector<int> pick(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) pick[static_cast<std::size_t>(i)] = i;
  while (true) {
    fn(pick);
    // advance to the next combination in lexicographic order
    int i = k - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == m - k + i) --i;
    if (i < 0) return;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace dbcd
