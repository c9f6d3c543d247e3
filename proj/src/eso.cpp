// SPDX-License-Identifier: Apache-2.0

#include "dbcd/eso.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dbcd/combinatorics.hpp"
#include "dbcd/errors.hpp"

namespace dbcd {

namespace {

void check_sampling_params(int xi, int tau, int s, int nodes) {
  if (s < 1) throw ParameterError("eso: group size s must be >= 1");
  if (tau < 1 || tau > s)
    throw ParameterError("eso: tau=" + std::to_string(tau) + " outside [1, " +
                         std::to_string(s) + "]");
  if (xi < 1 || xi > s)
    throw ParameterError("eso: xi=" + std::to_string(xi) + " outside [1, " +
                         std::to_string(s) + "]");
  if (nodes < 1) throw ParameterError("eso: node count must be >= 1");
}

}  // namespace

double compute_beta(int xi, int tau, int s, int nodes) {
  check_sampling_params(xi, tau, s, nodes);
  const double sd = s;
  return 1.0 +
         static_cast<double>(xi - 1) * static_cast<double>(tau - 1) /
             std::max(1, s - 1) +
         static_cast<double>(nodes - 1) * static_cast<double>(xi) *
             static_cast<double>(tau) / sd;
}

double expected_theta_squared(int xi, int tau, int s, int nodes) {
  check_sampling_params(xi, tau, s, nodes);
  const double mean_per_node = static_cast<double>(xi) * tau / s;
  const double second_per_node =
      mean_per_node * (1.0 + static_cast<double>(xi - 1) *
                                 static_cast<double>(tau - 1) /
                                 std::max(1, s - 1));
  return nodes * second_per_node +
         static_cast<double>(nodes) * (nodes - 1) * mean_per_node * mean_per_node;
}

std::vector<double> theta_pmf_per_node(int xi, int tau, int s) {
  check_sampling_params(xi, tau, s, 1);
  const double denom = log_choose(s, tau);
  std::vector<double> pmf(static_cast<std::size_t>(std::min(xi, tau)) + 1, 0.0);
  for (int k = 0; k <= std::min(xi, tau); ++k) {
    if (tau - k > s - xi) continue;  // outside the support
    pmf[static_cast<std::size_t>(k)] =
        std::exp(log_choose(xi, k) + log_choose(s - xi, tau - k) - denom);
  }
  return pmf;
}

double sublinear_rate_bound(std::int64_t k, std::int64_t blocks, int nodes,
                            int tau, double beta, double initial_distance,
                            double initial_gap) {
  if (k < 0 || blocks <= 0 || nodes < 1 || tau < 1)
    throw ParameterError("sublinear_rate_bound: counts out of range");
  if (beta < 0 || initial_distance < 0)
    throw ParameterError("sublinear_rate_bound: negative inputs");
  const double prefactor =
      static_cast<double>(blocks) /
      (static_cast<double>(blocks) +
       static_cast<double>(nodes) * static_cast<double>(tau) * static_cast<double>(k));
  return prefactor * (0.5 * beta * initial_distance + initial_gap);
}

std::int64_t linear_rate_iterations(const ConvergenceBudget& budget,
                                    std::int64_t blocks, int nodes, int tau,
                                    double beta) {
  if (budget.mu_f + budget.mu_omega <= 0.0)
    throw StrongConvexityError("linear_rate_iterations: mu_f + mu_Omega must be positive");
  if (budget.rho <= 0.0 || budget.rho >= 1.0)
    throw ParameterError("linear_rate_iterations: rho must lie in (0,1)");
  if (budget.epsilon <= 0.0)
    throw ParameterError("linear_rate_iterations: epsilon must be positive");
  if (budget.epsilon >= budget.initial_gap)
    throw ParameterError("linear_rate_iterations: epsilon must be below the initial gap");
  const double updates = static_cast<double>(nodes) * tau;
  const double factor = (beta + budget.mu_omega) / (budget.mu_f + budget.mu_omega);
  const double log_term =
      std::log(budget.initial_gap / (budget.epsilon * budget.rho));
  const double value =
      static_cast<double>(blocks) / updates * factor * std::max(0.0, log_term);
  return static_cast<std::int64_t>(std::ceil(value));
}

double speedup_factor(int xi, int tau, int s, int nodes) {
  return static_cast<double>(nodes) * tau / compute_beta(xi, tau, s, nodes);
}

double eta_bound(double eta, int nodes, int tau) {
  if (nodes < 1 || tau < 1)
    throw ParameterError("eta_bound: counts out of range");
  if (eta < 0.0) throw ParameterError("eta_bound: eta must be nonnegative");
  const double inv = 1.0 / (static_cast<double>(nodes) * tau);
  return inv + eta * (1.0 - inv);
}

double speedup_from_eta(double eta, double c_tau) {
  if (c_tau < 1.0) throw ParameterError("speedup_from_eta: C*tau must be >= 1");
  if (eta < 0.0) throw ParameterError("speedup_from_eta: eta must be nonnegative");
  return c_tau / (1.0 + eta * (c_tau - 1.0));
}

DistributionCost cost_of_distribution_bounds(std::int64_t blocks, int omega,
                                             int nodes, int tau) {
  if (nodes < 1 || blocks <= 0 || blocks % nodes != 0)
    throw ParameterError("cost_of_distribution_bounds: C must divide n");
  const std::int64_t s = blocks / nodes;
  if (s < 2) throw ParameterError("cost_of_distribution_bounds: needs s = n/C >= 2");
  if (omega < 1 || omega > blocks)
    throw ParameterError("cost_of_distribution_bounds: omega outside [1, n]");
  if (tau < 1 || tau > s)
    throw ParameterError("cost_of_distribution_bounds: tau outside [1, s]");

  const double n = static_cast<double>(blocks);
  const double w = omega;
  const double c = nodes;
  const double t = tau;

  DistributionCost out;
  out.beta2 = 1.0 + (w - 1.0) * (c * t - 1.0) / (n - 1.0);
  // xi = omega/C (most spread-out partition of every group)
  const double lb_num = 1.0 + (w - c) * (t - 1.0) / (n - c) + (c - 1.0) * w * t / n;
  // xi = omega (some node owns a whole group)
  const double ub_num =
      1.0 + (w - 1.0) * (c * t - c) / (n - c) + (c - 1.0) * w * c * t / n;
  out.lower = lb_num / out.beta2;
  out.upper = ub_num / out.beta2;
  return out;
}

double optimal_tau(int s, int xi, int nodes, double r12) {
  if (s < 1 || xi < 1 || nodes < 1 || r12 <= 0.0)
    throw ParameterError("optimal_tau: inputs must be positive");
  return std::sqrt(static_cast<double>(s) /
                   (r12 * static_cast<double>(xi) * static_cast<double>(nodes)));
}

EsoParameters EsoParameters::compute(const SeparabilityStructure& structure,
                                     const Partition& partition, int tau,
                                     WeightVector lipschitz) {
  if (static_cast<int>(lipschitz.size()) != partition.blocks())
    throw ParameterError("EsoParameters: weight vector length mismatch");
  EsoParameters p;
  p.nodes = partition.nodes;
  p.s = partition.group_size;
  p.tau = tau;
  p.omega = structure.omega;
  p.xi = compute_xi(structure, partition);
  p.eta = static_cast<double>(p.xi) / p.s;
  p.beta = compute_beta(p.xi, tau, p.s, p.nodes);
  p.w = std::move(lipschitz);
  return p;
}

}  // namespace dbcd
