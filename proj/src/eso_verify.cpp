// SPDX-License-Identifier: Apache-2.0

#include "dbcd/eso_verify.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dbcd/combinatorics.hpp"
#include "dbcd/errors.hpp"
#include "dbcd/numerics.hpp"
#include "dbcd/sampling.hpp"

namespace dbcd {

std::uint64_t for_each_distributed_sampling(
    const Partition& partition, int tau,
    const std::function<void(const std::vector<int>&)>& fn) {
  const int s = partition.group_size;
  if (tau < 1 || tau > s)
    throw ParameterError("for_each_distributed_sampling: tau outside [1, s]");

  const std::uint64_t per_node = choose_exact(s, tau);
  std::uint64_t total = 1;
  for (int c = 0; c < partition.nodes; ++c) {
    if (per_node != 0 && total > kEnumerationBudget / per_node + 1)
      throw BudgetError("sampling enumeration exceeds outcome budget");
    total *= per_node;
  }
  if (total > kEnumerationBudget)
    throw BudgetError("sampling enumeration exceeds outcome budget: " +
                      std::to_string(total));

  // Precompute each node's tau-subsets once, then walk the product.
  std::vector<std::vector<std::vector<int>>> subsets(
      static_cast<std::size_t>(partition.nodes));
  for (int c = 0; c < partition.nodes; ++c) {
    const auto& group = partition.groups[static_cast<std::size_t>(c)];
    for_each_combination(s, tau, [&](const std::vector<int>& pick) {
      std::vector<int> blocks;
      blocks.reserve(pick.size());
      for (int p : pick) blocks.push_back(group[static_cast<std::size_t>(p)]);
      subsets[static_cast<std::size_t>(c)].push_back(std::move(blocks));
    });
  }

  std::vector<std::size_t> cursor(static_cast<std::size_t>(partition.nodes), 0);
  std::vector<int> selection(static_cast<std::size_t>(partition.nodes) *
                             static_cast<std::size_t>(tau));
  std::uint64_t visited = 0;
  while (true) {
    auto out = selection.begin();
    for (int c = 0; c < partition.nodes; ++c) {
      const auto& z = subsets[static_cast<std::size_t>(c)][cursor[static_cast<std::size_t>(c)]];
      out = std::copy(z.begin(), z.end(), out);
    }
    fn(selection);
    ++visited;
    int c = partition.nodes - 1;
    while (c >= 0 && ++cursor[static_cast<std::size_t>(c)] ==
                         subsets[static_cast<std::size_t>(c)].size()) {
      cursor[static_cast<std::size_t>(c)] = 0;
      --c;
    }
    if (c < 0) break;
  }
  return visited;
}

SamplingIdentityCheck verify_sampling_identity(
    const Partition& partition, std::span<const int> group, int tau,
    const std::function<double(int, int)>& kappa) {
  // |P^(c) ∩ J| must equal the same xi on every node
  std::vector<char> in_group(static_cast<std::size_t>(partition.blocks()), 0);
  for (int b : group) in_group[static_cast<std::size_t>(b)] = 1;
  int xi = -1;
  for (const auto& g : partition.groups) {
    int count = 0;
    for (int b : g) count += in_group[static_cast<std::size_t>(b)];
    if (xi < 0) xi = count;
    if (count != xi)
      throw ParameterError("verify_sampling_identity: group must meet every node in xi blocks");
  }
  if (xi < 1)
    throw ParameterError("verify_sampling_identity: group must intersect every node");

  CompensatedSum lhs_sum;
  CompensatedSum rhs_sum;
  const double scale = 1.0 / (static_cast<double>(partition.nodes) * xi);
  const std::uint64_t outcomes = for_each_distributed_sampling(
      partition, tau, [&](const std::vector<int>& selected) {
        int theta = 0;
        for (int b : selected) theta += in_group[static_cast<std::size_t>(b)];
        double selected_sum = 0.0;
        for (int b : selected)
          if (in_group[static_cast<std::size_t>(b)]) selected_sum += kappa(theta, b);
        double group_sum = 0.0;
        for (int b : group) group_sum += kappa(theta, b);
        lhs_sum.add(selected_sum);
        rhs_sum.add(theta * scale * group_sum);
      });

  SamplingIdentityCheck check;
  check.outcomes = outcomes;
  check.lhs = lhs_sum.value() / static_cast<double>(outcomes);
  check.rhs = rhs_sum.value() / static_cast<double>(outcomes);
  return check;
}

double enumerate_expected_theta_squared(int xi, int tau, int s, int nodes) {
  if (xi < 1 || xi > s)
    throw ParameterError("enumerate_expected_theta_squared: xi outside [1, s]");
  const auto partition = make_balanced_partition(nodes * s, nodes);
  // J takes the first xi blocks of every node's group
  std::vector<char> in_group(static_cast<std::size_t>(nodes * s), 0);
  for (int c = 0; c < nodes; ++c)
    for (int j = 0; j < xi; ++j)
      in_group[static_cast<std::size_t>(
          partition.groups[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)])] = 1;

  CompensatedSum acc;
  const std::uint64_t outcomes = for_each_distributed_sampling(
      partition, tau, [&](const std::vector<int>& selected) {
        int theta = 0;
        for (int b : selected) theta += in_group[static_cast<std::size_t>(b)];
        acc.add(static_cast<double>(theta) * theta);
      });
  return acc.value() / static_cast<double>(outcomes);
}

EsoReport verify_eso(const SeparableQuadratic& f, const Partition& partition,
                     int tau, std::span<const double> x,
                     std::span<const double> h,
                     std::optional<std::int64_t> trials, std::uint64_t seed) {
  const int n = partition.blocks();
  if (f.dimension() != n)
    throw ParameterError("verify_eso: objective dimension must match partition");
  if (static_cast<int>(x.size()) != n || static_cast<int>(h.size()) != n)
    throw ParameterError("verify_eso: x and h must have one entry per block");

  const auto layout = BlockLayout::uniform(n);
  const auto lipschitz = f.block_lipschitz();
  const auto params =
      EsoParameters::compute(f.structure(), partition, tau, lipschitz);

  EsoReport report;
  report.beta = params.beta;

  // Right-hand side: f(x) + E|Z|/n ( <grad, h> + beta/2 ||h||_w^2 )
  const double fx = f.value(x);
  const auto grad = f.gradient(x);
  const double linear = compensated_dot(grad, h);
  const double quad = weighted_norm_squared(h, params.w, layout);
  const double fraction =
      static_cast<double>(partition.nodes) * tau / static_cast<double>(n);
  report.rhs = fx + fraction * (linear + 0.5 * params.beta * quad);

  std::vector<double> shifted(x.begin(), x.end());
  const auto evaluate_outcome = [&](const std::vector<int>& selected) {
    for (int b : selected)
      shifted[static_cast<std::size_t>(b)] += h[static_cast<std::size_t>(b)];
    const double v = f.value(shifted);
    for (int b : selected)
      shifted[static_cast<std::size_t>(b)] = x[static_cast<std::size_t>(b)];
    return v;
  };

  if (!trials.has_value()) {
    CompensatedSum acc;
    report.outcomes = for_each_distributed_sampling(
        partition, tau,
        [&](const std::vector<int>& selected) { acc.add(evaluate_outcome(selected)); });
    report.lhs = acc.value() / static_cast<double>(report.outcomes);
    report.exhaustive = true;
    report.std_error = 0.0;
    report.tolerance = 1e-9 * (1.0 + std::abs(report.rhs));
  } else {
    if (*trials < 2)
      throw ParameterError("verify_eso: Monte-Carlo mode needs at least 2 trials");
    NodeRngs rngs(seed, partition.nodes);
    CompensatedSum acc;
    CompensatedSum acc_sq;
    for (std::int64_t t = 0; t < *trials; ++t) {
      const auto draw = sample_distributed(partition, tau, rngs);
      const double v = evaluate_outcome(draw.all());
      acc.add(v);
      acc_sq.add(v * v);
    }
    const double count = static_cast<double>(*trials);
    report.outcomes = static_cast<std::uint64_t>(*trials);
    report.lhs = acc.value() / count;
    const double variance =
        std::max(0.0, (acc_sq.value() - count * report.lhs * report.lhs) / (count - 1.0));
    report.std_error = std::sqrt(variance / count);
    report.exhaustive = false;
    report.tolerance = std::max(1e-9, 3.0 * report.std_error);
  }

  report.holds = report.lhs <= report.rhs + report.tolerance;
  return report;
}

}  // namespace dbcd
