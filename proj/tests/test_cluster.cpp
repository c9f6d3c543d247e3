// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "dbcd/cluster.hpp"
#include "dbcd/errors.hpp"
#include "dbcd/rng.hpp"

using namespace dbcd;

namespace {

// Integer-valued deltas keep every addition exact, so schedule bookkeeping
// can be compared bitwise against an independent replay.
std::vector<std::vector<double>> integer_deltas(int nodes, int m, Rng& rng) {
  std::vector<std::vector<double>> deltas(
      static_cast<std::size_t>(nodes),
      std::vector<double>(static_cast<std::size_t>(m), 0.0));
  for (auto& d : deltas)
    for (auto& v : d) v = static_cast<double>(rng.below(9)) - 4.0;
  return deltas;
}

std::vector<std::vector<double>> zero_deltas(int nodes, int m) {
  return std::vector<std::vector<double>>(
      static_cast<std::size_t>(nodes),
      std::vector<double>(static_cast<std::size_t>(m), 0.0));
}

int pred_pow(int c, int i, int nodes) { return ((c - i) % nodes + nodes) % nodes; }

}  // namespace

TEST_CASE("strategy accounting table") {
  CostModel cost;
  cost.t1 = 0.1;
  cost.t2 = 1.0;
  cost.tp2p = 0.5;
  const std::int64_t m = 100;

  const auto ra = accounting(Strategy::ra, 8, 1, m, cost);
  CHECK(ra.memory_doubles == 2 * m);
  CHECK(ra.comm_time == doctest::Approx(3 * 0.5));  // ceil(log2 8) rounds
  CHECK(ra.extra_adds == 0);

  const auto asl = accounting(Strategy::asl, 8, 1, m, cost);
  CHECK(asl.memory_doubles == (2 + 8) * m);
  CHECK(asl.comm_time == doctest::Approx(0.5));
  CHECK(asl.extra_adds == 4 * m);

  const auto ast = accounting(Strategy::ast, 8, 2, m, cost);
  CHECK(ast.memory_doubles == (2 + 4) * m);
  CHECK(ast.comm_time == doctest::Approx(0.5 + 3 * 0.5 / 2));
  CHECK(ast.extra_adds == 8 * m);

  CHECK_THROWS_AS(accounting(Strategy::ast, 8, 3, m, cost), TopologyError);
}

TEST_CASE("topology validation and ring maps") {
  CHECK_THROWS_AS(Topology(Strategy::ast, 6, 4), TopologyError);
  CHECK_THROWS_AS(Topology(Strategy::ra, 0), TopologyError);

  const Topology ring(Strategy::asl, 4);
  CHECK(ring.pred(0) == 3);
  CHECK(ring.succ(3) == 0);
  // single cycle over all nodes
  int seen = 0;
  for (int c = ring.succ(0); ; c = ring.succ(c)) {
    ++seen;
    if (c == 0) break;
  }
  CHECK(seen == 4);

  const Topology torus(Strategy::ast, 6, 3);
  CHECK(torus.group_count() == 2);
  CHECK(torus.group_of(4) == 1);
  CHECK(torus.first_member(1) == 3);
}

TEST_CASE("reduce-all semantics") {
  const int m = 3;
  Cluster cluster(Topology(Strategy::ra, 2), Overlap::ps, CostModel{}, 1,
                  std::vector<double>(m, 0.0));

  SUBCASE("zero deltas leave residuals unchanged") {
    cluster.step(zero_deltas(2, m));
    for (int c = 0; c < 2; ++c)
      for (double v : cluster.residual(c)) CHECK(v == 0.0);
  }

  SUBCASE("every node receives the full sum") {
    std::vector<std::vector<double>> deltas = {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}};
    cluster.step(deltas);
    for (int c = 0; c < 2; ++c) {
      CHECK(cluster.residual(c) == std::vector<double>{1.0, 1.0, 0.0});
    }
  }

  SUBCASE("all copies are bitwise identical after the exchange") {
    Rng rng(3);
    for (int k = 0; k < 20; ++k) {
      std::vector<std::vector<double>> deltas(2, std::vector<double>(m));
      for (auto& d : deltas)
        for (auto& v : d) v = rng.uniform(-1.0, 1.0);
      cluster.step(deltas);
      CHECK(cluster.residual(0) == cluster.residual(1));
    }
  }
}

TEST_CASE("single-node ring degenerates to the serial update") {
  const int m = 4;
  Rng rng(5);
  Cluster asl(Topology(Strategy::asl, 1), Overlap::ps, CostModel{}, 1,
              std::vector<double>(m, 0.0));
  Cluster ra(Topology(Strategy::ra, 1), Overlap::ps, CostModel{}, 1,
             std::vector<double>(m, 0.0));
  for (int k = 0; k < 25; ++k) {
    const auto deltas = integer_deltas(1, m, rng);
    asl.step(deltas);
    ra.step(deltas);
    CHECK(asl.residual(0) == ra.residual(0));
  }
}

TEST_CASE("ring exchange: drain within C-1 idle iterations") {
  for (int nodes : {2, 3, 4}) {
    const int m = 8;
    Rng rng(17 + static_cast<std::uint64_t>(nodes));
    Cluster cluster(Topology(Strategy::asl, nodes), Overlap::ps, CostModel{}, 1,
                    std::vector<double>(m, 0.0));

    std::vector<double> truth(m, 0.0);
    for (int k = 0; k < 6; ++k) {
      const auto deltas = integer_deltas(nodes, m, rng);
      for (const auto& d : deltas)
        for (int j = 0; j < m; ++j) truth[static_cast<std::size_t>(j)] += d[static_cast<std::size_t>(j)];
      cluster.step(deltas);
    }

    // freeze: zero updates from now on; all copies converge to the truth
    int idle = 0;
    for (; idle <= nodes - 1; ++idle) {
      bool all_exact = true;
      for (int c = 0; c < nodes; ++c)
        if (cluster.residual(c) != truth) all_exact = false;
      if (all_exact) break;
      cluster.step(zero_deltas(nodes, m));
    }
    CHECK(idle <= nodes - 1);
    for (int c = 0; c < nodes; ++c) CHECK(cluster.residual(c) == truth);
  }
}

TEST_CASE("ring exchange: staleness matches the schedule replay") {
  const int nodes = 4;
  const int m = 64;
  Rng rng(23);
  Cluster cluster(Topology(Strategy::asl, nodes), Overlap::ps, CostModel{}, 1,
                  std::vector<double>(m, 0.0));

  std::vector<std::vector<std::vector<double>>> log;  // log[k][c]
  for (int k = 0; k < 12; ++k) {
    log.push_back(integer_deltas(nodes, m, rng));
    cluster.step(log.back());

    // replay: g_{K}^(c) = sum_{l<K} own + sum_{i=1}^{C-1} sum_{l<=K-i} pred^i
    const int big_k = k + 1;
    for (int c = 0; c < nodes; ++c) {
      std::vector<double> expect(m, 0.0);
      for (int l = 0; l < big_k; ++l)
        for (int j = 0; j < m; ++j)
          expect[static_cast<std::size_t>(j)] +=
              log[static_cast<std::size_t>(l)][static_cast<std::size_t>(c)]
                 [static_cast<std::size_t>(j)];
      for (int i = 1; i < nodes; ++i) {
        const int source = pred_pow(c, i, nodes);
        for (int l = 0; l <= big_k - i && l < big_k; ++l)
          for (int j = 0; j < m; ++j)
            expect[static_cast<std::size_t>(j)] +=
                log[static_cast<std::size_t>(l)][static_cast<std::size_t>(source)]
                   [static_cast<std::size_t>(j)];
      }
      CHECK(cluster.residual(c) == expect);
    }
  }
}

TEST_CASE("torus with full width behaves like reduce-all") {
  const int m = 5;
  Rng rng(29);
  Cluster ast(Topology(Strategy::ast, 4, 4), Overlap::ps, CostModel{}, 1,
              std::vector<double>(m, 0.0));
  Cluster ra(Topology(Strategy::ra, 4), Overlap::ps, CostModel{}, 1,
             std::vector<double>(m, 0.0));
  for (int k = 0; k < 15; ++k) {
    const auto deltas = integer_deltas(4, m, rng);
    ast.step(deltas);
    ra.step(deltas);
    for (int c = 0; c < 4; ++c) CHECK(ast.residual(c) == ra.residual(c));
  }
}

TEST_CASE("torus with unit width behaves like the ring") {
  const int m = 5;
  Rng rng(31);
  Cluster ast(Topology(Strategy::ast, 3, 1), Overlap::ps, CostModel{}, 1,
              std::vector<double>(m, 0.0));
  Cluster asl(Topology(Strategy::asl, 3), Overlap::ps, CostModel{}, 1,
              std::vector<double>(m, 0.0));
  for (int k = 0; k < 15; ++k) {
    const auto deltas = integer_deltas(3, m, rng);
    ast.step(deltas);
    asl.step(deltas);
    for (int c = 0; c < 3; ++c) CHECK(ast.residual(c) == asl.residual(c));
  }
}

TEST_CASE("torus drain: root hops bounded by C/r") {
  const int nodes = 4;
  const int width = 2;  // two groups, root ring of length 2
  const int m = 6;
  Rng rng(37);
  Cluster cluster(Topology(Strategy::ast, nodes, width), Overlap::ps, CostModel{}, 1,
                  std::vector<double>(m, 0.0));
  std::vector<double> truth(m, 0.0);
  for (int k = 0; k < 5; ++k) {
    const auto deltas = integer_deltas(nodes, m, rng);
    for (const auto& d : deltas)
      for (int j = 0; j < m; ++j)
        truth[static_cast<std::size_t>(j)] += d[static_cast<std::size_t>(j)];
    cluster.step(deltas);
  }
  int idle = 0;
  const int limit = nodes / width;  // C/r iterations at most
  for (; idle <= limit; ++idle) {
    bool all_exact = true;
    for (int c = 0; c < nodes; ++c)
      if (cluster.residual(c) != truth) all_exact = false;
    if (all_exact) break;
    cluster.step(zero_deltas(nodes, m));
  }
  CHECK(idle <= limit);
}

TEST_CASE("virtual clock follows the overlap closed forms") {
  CostModel cost;
  cost.t1 = 0.25;
  cost.t2 = 1.0;
  cost.tp2p = 0.5;
  const int tau = 4;  // tau * t1 = 1.0 exactly
  const int m = 2;
  const int iterations = 13;

  SUBCASE("alternating parallel/serial: K * (tau t1 + comm)") {
    Cluster ra(Topology(Strategy::ra, 4), Overlap::ps, cost, tau,
               std::vector<double>(m, 0.0));
    for (int k = 0; k < iterations; ++k) ra.step(zero_deltas(4, m));
    const double comm = cost.reduce_all_time(4);  // 2 rounds * 0.5 = 1.0
    CHECK(ra.virtual_time() == iterations * (1.0 + comm));
  }
  SUBCASE("fully parallel: K * max(tau t1, comm)") {
    Cluster asl(Topology(Strategy::asl, 4), Overlap::fp, cost, tau,
                std::vector<double>(m, 0.0));
    for (int k = 0; k < iterations; ++k) asl.step(zero_deltas(4, m));
    CHECK(asl.virtual_time() == iterations * std::max(1.0, cost.tp2p));
  }
  SUBCASE("torus charges the ring hop plus the scaled reduce") {
    Cluster ast(Topology(Strategy::ast, 4, 2), Overlap::ps, cost, tau,
                std::vector<double>(m, 0.0));
    ast.step(zero_deltas(4, m));
    const double comm = cost.tp2p + cost.reduce_all_time(4) / 2;
    CHECK(ast.virtual_time() == 1.0 + comm);
  }
}

TEST_CASE("byte ledger counts the modeled message pattern") {
  const int m = 10;
  const int iterations = 7;

  Cluster asl(Topology(Strategy::asl, 4), Overlap::ps, CostModel{}, 1,
              std::vector<double>(m, 0.0));
  for (int k = 0; k < iterations; ++k) asl.step(zero_deltas(4, m));
  // one message per node per iteration, m doubles each
  CHECK(asl.bytes_sent() == iterations * 4 * m * 8);

  Cluster ra(Topology(Strategy::ra, 4), Overlap::ps, CostModel{}, 1,
             std::vector<double>(m, 0.0));
  ra.step(zero_deltas(4, m));
  // ceil(log2 4) = 2 rounds, every node sends once per round
  CHECK(ra.bytes_sent() == 4 * 2 * m * 8);

  Cluster ast(Topology(Strategy::ast, 4, 2), Overlap::ps, CostModel{}, 1,
              std::vector<double>(m, 0.0));
  ast.step(zero_deltas(4, m));
  // 2 root-ring messages + gather/broadcast inside each group
  CHECK(ast.bytes_sent() == (2 + 2 * 2 * 1) * m * 8);

  // block-angular wire model: only coupling rows travel
  Cluster narrow(Topology(Strategy::asl, 4), Overlap::ps, CostModel{}, 1,
                 std::vector<double>(m, 0.0), 3);
  narrow.step(zero_deltas(4, m));
  CHECK(narrow.bytes_sent() == 4 * 3 * 8);

  // single node: no communication volume
  Cluster solo(Topology(Strategy::ra, 1), Overlap::ps, CostModel{}, 1,
               std::vector<double>(m, 0.0));
  solo.step(zero_deltas(1, m));
  CHECK(solo.bytes_sent() == 0);
}
