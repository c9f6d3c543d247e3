// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <deque>
#include <vector>

#include "dbcd/eso.hpp"

namespace dbcd {

enum class Strategy { ra, asl, ast };
enum class Overlap { ps, fp };

// Communication layout of the simulated cluster. ASL runs one directed ring
// over all C nodes; AST partitions the nodes into C/r groups of width r,
// whose root nodes form the ring.
struct Topology {
  Strategy strategy = Strategy::ra;
  int nodes = 1;        // C
  int torus_width = 1;  // r; meaningful for AST, must divide C

  Topology() = default;
  Topology(Strategy s, int c, int r = 1);

  int pred(int c) const { return (c + nodes - 1) % nodes; }
  int succ(int c) const { return (c + 1) % nodes; }

  int group_count() const { return nodes / torus_width; }
  int group_of(int c) const { return c / torus_width; }
  int group_pred(int g) const { return (g + group_count() - 1) % group_count(); }
  int first_member(int g) const { return g * torus_width; }  // group root
};

// Additional per-node requirements of a strategy, for a residual of length m:
// memory for the residual copies and history, time charged to communication
// per iteration, and extra vector additions performed by the protocol.
struct Accounting {
  std::int64_t memory_doubles = 0;
  double comm_time = 0.0;
  std::int64_t extra_adds = 0;
};

Accounting accounting(Strategy strategy, int nodes, int torus_width,
                      std::int64_t residual_len, const CostModel& cost);

// In-process cluster of C nodes, each holding its own copy of the residual
// vector. One step() call is one iteration: every node contributes its
// local delta, the configured strategy moves data, and the virtual clock
// and byte ledger advance. Messages sent at the end of iteration k become
// readable at the start of iteration k+1 (fixed one-step lag), so the
// asynchrony is in message content, not scheduling; runs are deterministic.
class Cluster {
 public:
  // message_entries: number of residual entries a message carries on the
  // modeled wire (the full residual by default; block-angular instances
  // only ship the coupling rows).
  Cluster(Topology topology, Overlap overlap, CostModel cost, int tau,
          std::vector<double> initial_residual,
          std::int64_t message_entries = -1);

  // deltas[c] = node c's residual contribution this iteration (length m).
  void step(const std::vector<std::vector<double>>& deltas);

  const std::vector<double>& residual(int node) const {
    return residual_[static_cast<std::size_t>(node)];
  }
  // Replaces every node's copy (residual-audit repair under reduce-all).
  void overwrite_residuals(const std::vector<double>& g);
  const Topology& topology() const { return topo_; }

  std::int64_t iterations() const { return iteration_; }
  double virtual_time() const { return virtual_time_; }
  std::int64_t bytes_sent() const { return bytes_sent_; }

  double comm_time_per_iteration() const;
  std::int64_t messages_per_iteration() const;

 private:
  void exchange_ra(const std::vector<std::vector<double>>& deltas);
  void exchange_asl(const std::vector<std::vector<double>>& deltas);
  void exchange_ast(const std::vector<std::vector<double>>& deltas);

  Topology topo_;
  Overlap overlap_;
  CostModel cost_;
  int tau_;
  std::int64_t m_;
  std::int64_t message_entries_;

  std::vector<std::vector<double>> residual_;  // g^(c) per node
  // ASL: per node, its own past deltas [dg_{k-C}, ..., dg_{k-1}] (C entries,
  // zero-filled before the start). AST: per group root, past group
  // aggregates with lookback C/r.
  std::vector<std::deque<std::vector<double>>> history_;
  std::vector<std::vector<double>> inbox_;  // message received from pred

  std::int64_t iteration_ = 0;
  double virtual_time_ = 0.0;
  std::int64_t bytes_sent_ = 0;
};

}  // namespace dbcd
