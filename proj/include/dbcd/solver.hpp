// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dbcd/cluster.hpp"
#include "dbcd/eso.hpp"
#include "dbcd/errors.hpp"
#include "dbcd/numerics.hpp"
#include "dbcd/problems.hpp"
#include "dbcd/sampling.hpp"

namespace dbcd {

enum class StopReason { target_accuracy, stagnation, iteration_budget };

const char* stop_reason_name(StopReason reason);

struct SolverConfig {
  int nodes = 1;  // C
  int tau = 1;
  Strategy strategy = Strategy::ra;
  int torus_width = 1;  // AST only
  Overlap overlap = Overlap::ps;
  PartitionScheme scheme = PartitionScheme::contiguous;
  // Step multiplier; values <= 0 request the closed-form beta computed from
  // the instance's own coupling structure and partition.
  double beta = 0.0;
  // Replace the exact xi with the eta-bound surrogate 1 + eta*(C*tau - 1).
  bool eta_surrogate = false;
  std::int64_t max_iterations = 1000;
  double epsilon = 1e-9;
  std::uint64_t seed = 0;
  // Iterations between from-scratch residual audits (metrics are always
  // computed from the audited residual).
  std::int64_t audit_period = 100;
  int workers = 1;  // physical threads per node's update batch
  CostModel cost;
  std::optional<double> f_star;  // known optimum, enables the gap metric/stop
  // Residual entries per message on the modeled wire; -1 ships the full
  // residual (block-angular instances pass their coupling-row count).
  std::int64_t message_entries = -1;
  std::ostream* trace = nullptr;  // per-iteration per-node trace CSV
};

struct IterationRecord {
  std::int64_t k = 0;
  double objective = 0.0;
  double metric = 0.0;  // lasso: F - F* (NaN when unknown); svm: duality gap
  double virtual_time = 0.0;
  double wall_seconds = 0.0;
  std::int64_t bytes = 0;
};

struct RunReport {
  ProblemKind kind = ProblemKind::lasso;
  std::vector<IterationRecord> records;  // k = 0 plus every audit
  std::vector<double> x;
  StopReason stop = StopReason::iteration_budget;
  std::string stop_detail;
  // The convergence theory covers the synchronous exchange; ring/torus runs
  // are flagged as outside the analyzed regime.
  std::string regime;
  std::int64_t iterations = 0;
  double beta = 1.0;
  int xi = 1;
  int omega = 1;
  double final_objective = 0.0;
  double final_metric = 0.0;
  std::int64_t audits = 0;
  std::int64_t audit_repairs = 0;
  double max_drift = 0.0;
};

struct StopDecision {
  bool stop = false;
  StopReason reason = StopReason::iteration_budget;
};

// Loop guard evaluated at audit points. SVM stops once the duality gap
// reaches epsilon; least squares stops on F - F* <= epsilon when F* is
// known, otherwise on stagnation between consecutive audited objectives.
StopDecision stop_check(ProblemKind kind, double metric, double objective,
                        std::optional<double> previous_objective, double epsilon);

namespace detail {

// Relative drift allowed between the incremental residual and a from-scratch
// recomputation before the audit repairs the copies; drift past the hard
// bound aborts the run.
inline constexpr double kAuditTolerance = 1e-8;
inline constexpr double kAuditHardBound = 1e-3;

inline double block_step(const LassoProblem& p, int i, double x_i,
                         const std::vector<double>& g, double beta, double lips) {
  const double grad = p.A.column_dot(i, g);
  return soft_threshold_update(grad, beta * lips, x_i, p.lambda);
}

inline double block_step(const SvmDualProblem& p, int i, double x_i,
                         const std::vector<double>& g, double beta, double) {
  const double inner = p.labels[static_cast<std::size_t>(i)] * p.A.row_dot(i, g);
  return clip_update(x_i, inner, p.A.row_norm_squared(i), p.lambda,
                     p.num_blocks(), beta);
}

inline double metric_value(const LassoProblem&, std::span<const double>,
                           const Residual&, double objective,
                           const std::optional<double>& f_star) {
  return f_star ? objective - *f_star : std::nan("");
}

inline double metric_value(const SvmDualProblem& p, std::span<const double> x,
                           const Residual& truth, double,
                           const std::optional<double>&) {
  return duality_gap(p, x, truth);
}

inline constexpr ProblemKind kind_of(const LassoProblem&) { return ProblemKind::lasso; }
inline constexpr ProblemKind kind_of(const SvmDualProblem&) { return ProblemKind::svm_dual; }

// Index-parallel loop whose output is positional, so results do not depend
// on the worker count. Worker exceptions are rethrown on the caller.
void parallel_for(int workers, std::size_t count,
                  const std::function<void(std::size_t)>& fn);

}  // namespace detail

// One run of the distributed block coordinate descent loop: per iteration,
// every node draws a tau-subset of its own blocks, computes closed-form
// block steps against its current residual copy, applies them to its owned
// coordinates, and ships its residual delta through the configured
// communication strategy. Deterministic given (seed, config), independent
// of the worker count.
template <typename Problem>
RunReport solve(const Problem& problem, const SolverConfig& config) {
  const int n = problem.num_blocks();
  const auto partition = make_balanced_partition(n, config.nodes, config.scheme);
  const auto lipschitz = lipschitz_constants(problem);

  RunReport report;
  report.kind = detail::kind_of(problem);
  {
    const auto structure = coupling_structure(problem);
    const auto params = EsoParameters::compute(structure, partition, config.tau,
                                               lipschitz);
    report.xi = params.xi;
    report.omega = params.omega;
    if (config.beta > 0.0) {
      report.beta = config.beta;
    } else if (config.eta_surrogate) {
      report.beta = static_cast<double>(config.nodes) * config.tau *
                    eta_bound(params.eta, config.nodes, config.tau);
    } else {
      report.beta = params.beta;
    }
  }
  if (report.beta < 1.0)
    throw ParameterError("solve: beta must be at least 1");
  if (config.epsilon <= 0.0)
    throw ParameterError("solve: target accuracy must be positive");
  if (config.audit_period < 1)
    throw ParameterError("solve: audit period must be at least 1");

  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  Residual truth = recompute_residual(problem, x);

  Cluster cluster(Topology(config.strategy, config.nodes, config.torus_width),
                  config.overlap, config.cost, config.tau, truth.g,
                  config.message_entries);
  NodeRngs rngs(config.seed, config.nodes);

  const auto started = std::chrono::steady_clock::now();
  const auto wall = [&]() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
        .count();
  };

  std::optional<double> previous_objective;
  const auto audit = [&](std::int64_t done) -> StopDecision {
    truth = recompute_residual(problem, x);
    ++report.audits;
    if (config.strategy == Strategy::ra) {
      // all copies are bitwise equal under reduce-all; audit copy 0
      const auto& incremental = cluster.residual(0);
      double drift = 0.0;
      for (std::size_t j = 0; j < truth.g.size(); ++j)
        drift = std::max(drift, std::abs(incremental[j] - truth.g[j]));
      const double scale = 1.0 + inf_norm(truth.g);
      report.max_drift = std::max(report.max_drift, drift / scale);
      if (drift > detail::kAuditHardBound * scale)
        throw InvariantError("solve: residual drift " + std::to_string(drift) +
                             " at iteration " + std::to_string(done));
      if (drift > detail::kAuditTolerance * scale) {
        ++report.audit_repairs;
        cluster.overwrite_residuals(truth.g);
      }
    }
    const double objective = objective_value(problem, x, truth);
    if (!std::isfinite(objective))
      throw DivergenceError("solve: objective non-finite at iteration " +
                            std::to_string(done));
    const double metric =
        detail::metric_value(problem, x, truth, objective, config.f_star);
    report.records.push_back({done, objective, metric, cluster.virtual_time(),
                              wall(), cluster.bytes_sent()});
    const auto decision = stop_check(report.kind, metric, objective,
                                     previous_objective, config.epsilon);
    previous_objective = objective;
    return decision;
  };

  const auto initial = audit(0);

  std::vector<std::vector<BlockStep>> steps(static_cast<std::size_t>(config.nodes));
  std::vector<std::vector<double>> deltas(static_cast<std::size_t>(config.nodes));

  std::int64_t k = 0;
  if (initial.stop) report.stop = initial.reason;
  for (; !initial.stop && k < config.max_iterations; ++k) {
    const auto draw = sample_distributed(partition, config.tau, rngs);
    for (int c = 0; c < config.nodes; ++c) {
      const auto& selected = draw.per_node[static_cast<std::size_t>(c)];
      auto& node_steps = steps[static_cast<std::size_t>(c)];
      node_steps.assign(selected.size(), {});
      const auto& g = cluster.residual(c);
      detail::parallel_for(config.workers, selected.size(), [&](std::size_t idx) {
        const int i = selected[idx];
        const double lips = lipschitz[static_cast<std::size_t>(i)];
        double h = 0.0;
        if (lips > 0.0)
          h = detail::block_step(problem, i, x[static_cast<std::size_t>(i)], g,
                                 report.beta, lips);
        node_steps[idx] = {i, h};
      });
      for (const auto& s : node_steps)
        x[static_cast<std::size_t>(s.block)] += s.step;
      deltas[static_cast<std::size_t>(c)] =
          delta_g(problem, std::span<const BlockStep>(node_steps));
    }
    cluster.step(deltas);

    if (config.trace) {
      const Residual now = recompute_residual(problem, x);
      const double objective = objective_value(problem, x, now);
      config.trace->precision(17);
      for (int c = 0; c < config.nodes; ++c) {
        double err = 0.0;
        const auto& g = cluster.residual(c);
        for (std::size_t j = 0; j < now.g.size(); ++j)
          err = std::max(err, std::abs(g[j] - now.g[j]));
        (*config.trace) << k + 1 << ',' << c << ',' << objective << ',' << err
                        << ',' << cluster.virtual_time() << ','
                        << cluster.bytes_sent() << '\n';
      }
    }

    const bool last = k + 1 == config.max_iterations;
    if ((k + 1) % config.audit_period == 0 || last) {
      const auto decision = audit(k + 1);
      if (decision.stop) {
        report.stop = decision.reason;
        ++k;
        break;
      }
      if (last) report.stop = StopReason::iteration_budget;
    }
  }

  report.iterations = std::min<std::int64_t>(k, config.max_iterations);
  report.x = std::move(x);
  report.final_objective = report.records.back().objective;
  report.final_metric = report.records.back().metric;
  report.stop_detail = stop_reason_name(report.stop);
  report.regime = config.strategy == Strategy::ra
                      ? "synchronous"
                      : "asynchronous (outside analyzed regime)";
  return report;
}

// Strongly convex variant: the iteration budget is taken from the
// linear-rate bound, so the run length is the theoretically sufficient
// count for accuracy budget.epsilon at confidence 1 - budget.rho.
template <typename Problem>
RunReport solve(const Problem& problem, SolverConfig config,
                const ConvergenceBudget& budget) {
  if (config.beta <= 0.0) {
    const auto partition =
        make_balanced_partition(problem.num_blocks(), config.nodes, config.scheme);
    const auto params =
        EsoParameters::compute(coupling_structure(problem), partition, config.tau,
                               lipschitz_constants(problem));
    config.beta = config.eta_surrogate
                      ? static_cast<double>(config.nodes) * config.tau *
                            eta_bound(params.eta, config.nodes, config.tau)
                      : params.beta;
  }
  config.max_iterations = linear_rate_iterations(
      budget, problem.num_blocks(), config.nodes, config.tau, config.beta);
  config.epsilon = budget.epsilon;
  return solve(problem, config);
}

}  // namespace dbcd
