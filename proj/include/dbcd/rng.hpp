// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "dbcd/errors.hpp"

namespace dbcd {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Seeded random stream. Bounded draws use rejection so every value in
// [0, bound) is exactly equally likely; distributions are hand-rolled so a
// given seed produces the same stream on any standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Stream for node `stream_id`, depending only on (master_seed, stream_id).
  static Rng stream(std::uint64_t master_seed, std::uint64_t stream_id) {
    std::uint64_t s = master_seed ^ (0xD1B54A32D192ED03ULL * (stream_id + 1));
    return Rng(splitmix64(s));
  }

  std::uint64_t next() { return engine_(); }

  // Uniform on {0, ..., bound-1}.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw ParameterError("Rng::below: bound must be positive");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % bound;
  }

  // Uniform on [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  // Standard normal via Box-Muller.
  double normal() {
    double u1;
    do {
      u1 = unit();
    } while (u1 <= 0.0);
    const double u2 = unit();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

 private:
  std::mt19937_64 engine_;
};

// One independent stream per simulated node, derived from the master seed
// and the node index. Draws on node c never depend on other nodes' draws.
class NodeRngs {
 public:
  NodeRngs(std::uint64_t master_seed, int nodes) {
    streams_.reserve(static_cast<std::size_t>(nodes));
    for (int c = 0; c < nodes; ++c)
      streams_.push_back(Rng::stream(master_seed, static_cast<std::uint64_t>(c)));
  }

  Rng& node(int c) { return streams_[static_cast<std::size_t>(c)]; }
  int nodes() const { return static_cast<int>(streams_.size()); }

 private:
  std::vector<Rng> streams_;
};

}  // namespace dbcd
