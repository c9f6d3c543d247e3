// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "dbcd/block_layout.hpp"
#include "dbcd/numerics.hpp"
#include "dbcd/partition.hpp"
#include "dbcd/separability.hpp"

namespace dbcd {

// Step-size multiplier for a (C,tau)-distributed sampling:
//   beta = 1 + (xi-1)(tau-1)/max{1, s-1} + (C-1) * xi*tau/s.
// Domain: 1 <= tau <= s, 1 <= xi <= s, C >= 1.
double compute_beta(int xi, int tau, int s, int nodes);

// E[theta^2] where theta = |Zhat intersect J| for a group J meeting every
// node's partition in exactly xi blocks:
//   C*(xi*tau/s)*(1 + (xi-1)(tau-1)/max{1,s-1}) + C(C-1)(xi*tau/s)^2.
double expected_theta_squared(int xi, int tau, int s, int nodes);

// Per-node law of theta: hypergeometric,
//   P(theta = k) = C(xi,k) C(s-xi,tau-k) / C(s,tau),  k in {0,...,min(xi,tau)}.
std::vector<double> theta_pmf_per_node(int xi, int tau, int s);

// Right-hand side of the sublinear-rate bound:
//   n/(n + C*tau*k) * (beta/2 * ||x0-x*||_w^2 + F(x0)-F*).
double sublinear_rate_bound(std::int64_t k, std::int64_t blocks, int nodes,
                            int tau, double beta, double initial_distance,
                            double initial_gap);

// Inputs to the linear-rate iteration count: strong-convexity moduli of the
// smooth and separable parts, target accuracy, confidence, and the starting
// point's gap and weighted distance.
struct ConvergenceBudget {
  double mu_f = 0.0;
  double mu_omega = 0.0;
  double epsilon = 0.0;
  double rho = 0.0;  // in (0,1)
  double initial_gap = 0.0;
  double initial_distance = 0.0;
};

// ceil( n/(C*tau) * (beta+mu_Omega)/(mu_f+mu_Omega) * log(gap/(eps*rho)) ).
// Throws StrongConvexityError when mu_f + mu_Omega = 0 and ParameterError
// when epsilon >= initial_gap or rho is outside (0,1).
std::int64_t linear_rate_iterations(const ConvergenceBudget& budget,
                                    std::int64_t blocks, int nodes, int tau,
                                    double beta);

// C*tau/beta: the factor by which the iteration bound improves over one
// block per iteration.
double speedup_factor(int xi, int tau, int s, int nodes);

// 1/(C*tau) + eta*(1 - 1/(C*tau)), an upper bound on beta/(C*tau) in terms
// of the partitioned-data density eta = xi/s (valid for s >= 2).
double eta_bound(double eta, int nodes, int tau);

// Speed-up curve value C*tau / (1 + eta*(C*tau - 1)) used for sweeps where
// only eta and the update count are fixed.
double speedup_from_eta(double eta, double c_tau);

struct DistributionCost {
  double beta2;  // single-node beta at the same total update count C*tau
  double lower;  // lower bound on beta_distributed / beta2 (xi = omega/C)
  double upper;  // upper bound (xi = omega)
};

// Bounds on the iteration-count ratio paid for distributing: requires
// s = n/C >= 2, 1 <= omega <= n, tau <= s.
DistributionCost cost_of_distribution_bounds(std::int64_t blocks, int omega,
                                             int nodes, int tau);

// tau* = sqrt(s / (r12 * xi * C)), the real-valued minimizer of
// (s/(xi*C) + tau)(r12 + 1/tau); callers round and clamp to [1, s].
double optimal_tau(int s, int xi, int nodes, double r12);

// Virtual-time model: per-block update cost, residual-exchange cost, and
// point-to-point message cost.
struct CostModel {
  double t1 = 1.0;    // one block update
  double t2 = 1.0;    // one residual exchange
  double tp2p = 1.0;  // one point-to-point message

  double r12() const { return t1 / t2; }
  // reduce-all modeled as ceil(log2 C) point-to-point rounds
  double reduce_all_time(int nodes) const { return ceil_log2(nodes) * tp2p; }
};

// The ESO certificate for one concrete instance/partition/tau: beta, the
// Lipschitz weights, and every scalar feeding the complexity bounds.
struct EsoParameters {
  double beta = 1.0;
  WeightVector w;
  int nodes = 1;
  int tau = 1;
  int s = 1;
  int xi = 1;
  int omega = 1;
  double eta = 0.0;  // xi/s

  static EsoParameters compute(const SeparabilityStructure& structure,
                               const Partition& partition, int tau,
                               WeightVector lipschitz);
};

}  // namespace dbcd
