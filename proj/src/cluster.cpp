// SPDX-License-Identifier: Apache-2.0

#include "dbcd/cluster.hpp"

#include <algorithm>
#include <string>

#include "dbcd/errors.hpp"

namespace dbcd {

Topology::Topology(Strategy s, int c, int r) : strategy(s), nodes(c), torus_width(r) {
  if (nodes < 1) throw TopologyError("Topology: need at least one node");
  if (strategy != Strategy::ast) {
    torus_width = 1;
    return;
  }
  if (torus_width < 1 || nodes % torus_width != 0)
    throw TopologyError("Topology: torus width " + std::to_string(torus_width) +
                        " does not divide " + std::to_string(nodes) + " nodes");
}

Accounting accounting(Strategy strategy, int nodes, int torus_width,
                      std::int64_t residual_len, const CostModel& cost) {
  Accounting acc;
  switch (strategy) {
    case Strategy::ra:
      acc.memory_doubles = 2 * residual_len;
      acc.comm_time = cost.reduce_all_time(nodes);
      acc.extra_adds = 0;
      break;
    case Strategy::asl:
      acc.memory_doubles = (2 + nodes) * residual_len;
      acc.comm_time = cost.tp2p;
      acc.extra_adds = 4 * residual_len;
      break;
    case Strategy::ast:
      if (torus_width < 1 || nodes % torus_width != 0)
        throw TopologyError("accounting: torus width must divide node count");
      acc.memory_doubles = (2 + nodes / torus_width) * residual_len;
      acc.comm_time = cost.tp2p + cost.reduce_all_time(nodes) / torus_width;
      acc.extra_adds = 8 * residual_len;
      break;
  }
  return acc;
}

Cluster::Cluster(Topology topology, Overlap overlap, CostModel cost, int tau,
                 std::vector<double> initial_residual, std::int64_t message_entries)
    : topo_(topology),
      overlap_(overlap),
      cost_(cost),
      tau_(tau),
      m_(static_cast<std::int64_t>(initial_residual.size())),
      message_entries_(message_entries < 0 ? m_ : message_entries) {
  if (tau_ < 1) throw ParameterError("Cluster: tau must be positive");
  residual_.assign(static_cast<std::size_t>(topo_.nodes), initial_residual);

  const std::vector<double> zeros(initial_residual.size(), 0.0);
  if (topo_.strategy == Strategy::asl) {
    history_.assign(static_cast<std::size_t>(topo_.nodes), {});
    inbox_.assign(static_cast<std::size_t>(topo_.nodes), zeros);
    for (auto& ring : history_)
      for (int l = 0; l < topo_.nodes; ++l) ring.push_back(zeros);
  } else if (topo_.strategy == Strategy::ast) {
    const int groups = topo_.group_count();
    history_.assign(static_cast<std::size_t>(groups), {});
    inbox_.assign(static_cast<std::size_t>(groups), zeros);
    for (auto& ring : history_)
      for (int l = 0; l < groups; ++l) ring.push_back(zeros);
  }
}

void Cluster::overwrite_residuals(const std::vector<double>& g) {
  if (static_cast<std::int64_t>(g.size()) != m_)
    throw ParameterError("Cluster::overwrite_residuals: length mismatch");
  for (auto& copy : residual_) copy = g;
}

double Cluster::comm_time_per_iteration() const {
  if (topo_.nodes == 1) return 0.0;  // no peers, nothing on the wire
  return accounting(topo_.strategy, topo_.nodes, topo_.torus_width, m_, cost_)
      .comm_time;
}

std::int64_t Cluster::messages_per_iteration() const {
  const std::int64_t c = topo_.nodes;
  if (c == 1) return 0;
  switch (topo_.strategy) {
    case Strategy::ra:
      // recursive-doubling pattern: every node sends once per round
      return c * ceil_log2(c);
    case Strategy::asl:
      return c;
    case Strategy::ast: {
      const std::int64_t groups = topo_.group_count();
      const std::int64_t width = topo_.torus_width;
      // root-ring messages (none when the ring is a single root) plus
      // gather/broadcast inside each group
      return (groups > 1 ? groups : 0) + 2 * groups * (width - 1);
    }
  }
  return 0;
}

void Cluster::step(const std::vector<std::vector<double>>& deltas) {
  if (static_cast<int>(deltas.size()) != topo_.nodes)
    throw ParameterError("Cluster::step: one delta per node required");
  for (const auto& d : deltas)
    if (static_cast<std::int64_t>(d.size()) != m_)
      throw ParameterError("Cluster::step: delta length mismatch");

  switch (topo_.strategy) {
    case Strategy::ra:
      exchange_ra(deltas);
      break;
    case Strategy::asl:
      exchange_asl(deltas);
      break;
    case Strategy::ast:
      exchange_ast(deltas);
      break;
  }

  const double compute = static_cast<double>(tau_) * cost_.t1;
  const double comm = comm_time_per_iteration();
  virtual_time_ += overlap_ == Overlap::ps ? compute + comm : std::max(compute, comm);
  bytes_sent_ += messages_per_iteration() * message_entries_ *
                 static_cast<std::int64_t>(sizeof(double));
  ++iteration_;
}

void Cluster::exchange_ra(const std::vector<std::vector<double>>& deltas) {
  // total = sum over nodes in fixed node order, applied identically to every
  // copy, so all copies stay bitwise equal
  std::vector<double> total(static_cast<std::size_t>(m_), 0.0);
  for (int c = 0; c < topo_.nodes; ++c)
    for (std::int64_t j = 0; j < m_; ++j)
      total[static_cast<std::size_t>(j)] +=
          deltas[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)];
  for (auto& g : residual_)
    for (std::int64_t j = 0; j < m_; ++j)
      g[static_cast<std::size_t>(j)] += total[static_cast<std::size_t>(j)];
}

void Cluster::exchange_asl(const std::vector<std::vector<double>>& deltas) {
  const int c_count = topo_.nodes;
  // message at the end of iteration k:
  //   dG_k^(c) = dG_{k-1}^(pred(c)) - dg_{k-C}^(c) + dg_k^(c);
  // inbox_ currently holds dG_{k-1}^(pred(c)), history front holds dg_{k-C}.
  std::vector<std::vector<double>> outgoing(static_cast<std::size_t>(c_count));
  for (int c = 0; c < c_count; ++c) {
    const auto& ring = history_[static_cast<std::size_t>(c)];
    if (static_cast<int>(ring.size()) != c_count)
      throw InvariantError("Cluster: ASL history ring lost an entry");
    auto msg = inbox_[static_cast<std::size_t>(c)];
    const auto& oldest = ring.front();
    const auto& fresh = deltas[static_cast<std::size_t>(c)];
    for (std::int64_t j = 0; j < m_; ++j)
      msg[static_cast<std::size_t>(j)] +=
          fresh[static_cast<std::size_t>(j)] - oldest[static_cast<std::size_t>(j)];
    outgoing[static_cast<std::size_t>(c)] = std::move(msg);
  }
  // deliver along the ring; node c receives from pred(c)
  for (int c = 0; c < c_count; ++c)
    inbox_[static_cast<std::size_t>(c)] =
        outgoing[static_cast<std::size_t>(topo_.pred(c))];

  // g_{k+1}^(c) = g_k^(c) + dg_k^(c) + dG_k^(pred(c)) - dg_{k-C+1}^(c);
  // a ring of one collapses to the serial update g += dg_k, applied directly
  // so the single-node iterate stream is bit-identical to reduce-all
  for (int c = 0; c < c_count; ++c) {
    auto& ring = history_[static_cast<std::size_t>(c)];
    const auto& fresh = deltas[static_cast<std::size_t>(c)];
    auto& g = residual_[static_cast<std::size_t>(c)];
    if (c_count == 1) {
      for (std::int64_t j = 0; j < m_; ++j)
        g[static_cast<std::size_t>(j)] += fresh[static_cast<std::size_t>(j)];
    } else {
      const auto& lagged = ring[1];  // dg_{k-C+1}
      const auto& received = inbox_[static_cast<std::size_t>(c)];
      for (std::int64_t j = 0; j < m_; ++j)
        g[static_cast<std::size_t>(j)] += fresh[static_cast<std::size_t>(j)] +
                                          received[static_cast<std::size_t>(j)] -
                                          lagged[static_cast<std::size_t>(j)];
    }
    ring.pop_front();
    ring.push_back(fresh);
  }
}

void Cluster::exchange_ast(const std::vector<std::vector<double>>& deltas) {
  const int groups = topo_.group_count();
  const int width = topo_.torus_width;

  // synchronous reduce inside each group, member order fixed
  std::vector<std::vector<double>> aggregate(
      static_cast<std::size_t>(groups),
      std::vector<double>(static_cast<std::size_t>(m_), 0.0));
  for (int g = 0; g < groups; ++g)
    for (int k = 0; k < width; ++k) {
      const auto& d = deltas[static_cast<std::size_t>(topo_.first_member(g) + k)];
      for (std::int64_t j = 0; j < m_; ++j)
        aggregate[static_cast<std::size_t>(g)][static_cast<std::size_t>(j)] +=
            d[static_cast<std::size_t>(j)];
    }

  // ring of group roots, group aggregates playing the role of node deltas
  std::vector<std::vector<double>> outgoing(static_cast<std::size_t>(groups));
  for (int g = 0; g < groups; ++g) {
    const auto& ring = history_[static_cast<std::size_t>(g)];
    if (static_cast<int>(ring.size()) != groups)
      throw InvariantError("Cluster: AST history ring lost an entry");
    auto msg = inbox_[static_cast<std::size_t>(g)];
    const auto& oldest = ring.front();
    const auto& fresh = aggregate[static_cast<std::size_t>(g)];
    for (std::int64_t j = 0; j < m_; ++j)
      msg[static_cast<std::size_t>(j)] +=
          fresh[static_cast<std::size_t>(j)] - oldest[static_cast<std::size_t>(j)];
    outgoing[static_cast<std::size_t>(g)] = std::move(msg);
  }
  for (int g = 0; g < groups; ++g)
    inbox_[static_cast<std::size_t>(g)] =
        outgoing[static_cast<std::size_t>(topo_.group_pred(g))];

  for (int g = 0; g < groups; ++g) {
    auto& ring = history_[static_cast<std::size_t>(g)];
    const auto& fresh = aggregate[static_cast<std::size_t>(g)];
    auto& root_g = residual_[static_cast<std::size_t>(topo_.first_member(g))];
    if (groups == 1) {
      // single group: plain reduce-all, no ring arithmetic
      for (std::int64_t j = 0; j < m_; ++j)
        root_g[static_cast<std::size_t>(j)] += fresh[static_cast<std::size_t>(j)];
    } else {
      const auto& lagged = ring[1];
      const auto& received = inbox_[static_cast<std::size_t>(g)];
      for (std::int64_t j = 0; j < m_; ++j)
        root_g[static_cast<std::size_t>(j)] +=
            fresh[static_cast<std::size_t>(j)] +
            received[static_cast<std::size_t>(j)] -
            lagged[static_cast<std::size_t>(j)];
    }
    ring.pop_front();
    ring.push_back(fresh);
    // group-local broadcast of the root copy
    for (int k = 1; k < width; ++k)
      residual_[static_cast<std::size_t>(topo_.first_member(g) + k)] = root_g;
  }
}

}  // namespace dbcd
