// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "dbcd/eso.hpp"
#include "dbcd/quadratic.hpp"
#include "dbcd/rng.hpp"

namespace dbcd {

// Largest number of enumerated sampling outcomes accepted by the exhaustive
// verifiers: binom(s,tau)^C must stay at or below this.
inline constexpr std::uint64_t kEnumerationBudget = 1'000'000;

// Walks every outcome of the (C,tau)-distributed sampling for `partition`
// (Cartesian product of each node's tau-subsets) and calls `fn` with the
// union of the selected blocks, sorted per node then concatenated. Returns
// the outcome count. Throws BudgetError past kEnumerationBudget.
std::uint64_t for_each_distributed_sampling(
    const Partition& partition, int tau,
    const std::function<void(const std::vector<int>&)>& fn);

struct SamplingIdentityCheck {
  double lhs = 0.0;  // E[ sum_{i in Zhat ∩ J} kappa(|Zhat ∩ J|, i) ]
  double rhs = 0.0;  // E[ |Zhat ∩ J|/(C xi) * sum_{i in J} kappa(|Zhat ∩ J|, i) ]
  std::uint64_t outcomes = 0;
};

// Exact (enumerated) check of the sampling identity behind the ESO proof,
// for a group J meeting every node's partition in the same number xi of
// blocks. kappa may depend on |Zhat ∩ J| and the block id only. Throws
// ParameterError if the intersections are unequal.
SamplingIdentityCheck verify_sampling_identity(
    const Partition& partition, std::span<const int> group, int tau,
    const std::function<double(int, int)>& kappa);

// E[theta^2] by exhaustive enumeration for a canonical configuration with
// |P^(c) ∩ J| = xi on every node.
double enumerate_expected_theta_squared(int xi, int tau, int s, int nodes);

struct EsoReport {
  double lhs = 0.0;        // mean of f(x + h_[Z]) over sampling outcomes
  double rhs = 0.0;        // f(x) + E|Z|/n (<grad f(x), h> + beta/2 ||h||_w^2)
  double beta = 1.0;
  double tolerance = 0.0;
  double std_error = 0.0;  // 0 in exhaustive mode
  std::uint64_t outcomes = 0;
  bool exhaustive = true;
  bool holds = false;      // lhs <= rhs + tolerance
};

// Checks the ESO inequality for one (x, h) pair against the closed-form
// (beta, w) with w = exact block curvatures of f. `trials` empty means
// exhaustive enumeration (subject to kEnumerationBudget); otherwise a
// Monte-Carlo mean over that many draws, with tolerance max(1e-9, 3 SE).
EsoReport verify_eso(const SeparableQuadratic& f, const Partition& partition,
                     int tau, std::span<const double> x,
                     std::span<const double> h,
                     std::optional<std::int64_t> trials = std::nullopt,
                     std::uint64_t seed = 0);

}  // namespace dbcd
