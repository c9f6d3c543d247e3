// SPDX-License-Identifier: Apache-2.0

#include "dbcd/quadratic.hpp"

#include <cmath>

#include "dbcd/errors.hpp"

namespace dbcd {

SeparableQuadratic::SeparableQuadratic(int dimension, std::vector<Piece> pieces)
    : dimension_(dimension), pieces_(std::move(pieces)) {
  std::vector<std::vector<int>> groups;
  groups.reserve(pieces_.size());
  for (const auto& p : pieces_) {
    if (p.blocks.empty())
      throw ParameterError("SeparableQuadratic: piece touches no blocks");
    if (p.matrix.size() != p.blocks.size() * static_cast<std::size_t>(p.rows) ||
        p.shift.size() != static_cast<std::size_t>(p.rows))
      throw ParameterError("SeparableQuadratic: piece dimensions inconsistent");
    for (int b : p.blocks)
      if (b < 0 || b >= dimension)
        throw ParameterError("SeparableQuadratic: block id out of range");
    groups.push_back(p.blocks);
  }
  structure_ = SeparabilityStructure::from_groups(std::move(groups));
}

SeparableQuadratic SeparableQuadratic::random(
    const SeparabilityStructure& structure, int dimension, Rng& rng) {
  std::vector<Piece> pieces;
  pieces.reserve(structure.groups.size());
  for (const auto& j : structure.groups) {
    Piece p;
    p.blocks = j;
    p.rows = 1 + static_cast<int>(rng.below(j.size() + 1));
    p.matrix.resize(static_cast<std::size_t>(p.rows) * j.size());
    p.shift.resize(static_cast<std::size_t>(p.rows));
    for (auto& v : p.matrix) v = rng.uniform(-1.0, 1.0);
    for (auto& v : p.shift) v = rng.uniform(-1.0, 1.0);
    pieces.push_back(std::move(p));
  }
  return SeparableQuadratic(dimension, std::move(pieces));
}

SeparableQuadratic SeparableQuadratic::diagonal(std::vector<double> curvatures,
                                                std::vector<double> centers) {
  if (curvatures.size() != centers.size())
    throw ParameterError("SeparableQuadratic: curvature/center length mismatch");
  const int n = static_cast<int>(curvatures.size());
  std::vector<Piece> pieces;
  pieces.reserve(curvatures.size());
  for (int i = 0; i < n; ++i) {
    const double root = std::sqrt(curvatures[static_cast<std::size_t>(i)]);
    Piece p;
    p.blocks = {i};
    p.rows = 1;
    p.matrix = {root};
    p.shift = {root * centers[static_cast<std::size_t>(i)]};
    pieces.push_back(std::move(p));
  }
  return SeparableQuadratic(n, std::move(pieces));
}

double SeparableQuadratic::value(std::span<const double> x) const {
  double total = 0.0;
  for (const auto& p : pieces_) {
    for (int r = 0; r < p.rows; ++r) {
      double resid = -p.shift[static_cast<std::size_t>(r)];
      const double* row = p.matrix.data() + static_cast<std::size_t>(r) * p.blocks.size();
      for (std::size_t c = 0; c < p.blocks.size(); ++c)
        resid += row[c] * x[static_cast<std::size_t>(p.blocks[c])];
      total += 0.5 * resid * resid;
    }
  }
  return total;
}

std::vector<double> SeparableQuadratic::gradient(std::span<const double> x) const {
  std::vector<double> grad(static_cast<std::size_t>(dimension_), 0.0);
  for (const auto& p : pieces_) {
    for (int r = 0; r < p.rows; ++r) {
      double resid = -p.shift[static_cast<std::size_t>(r)];
      const double* row = p.matrix.data() + static_cast<std::size_t>(r) * p.blocks.size();
      for (std::size_t c = 0; c < p.blocks.size(); ++c)
        resid += row[c] * x[static_cast<std::size_t>(p.blocks[c])];
      for (std::size_t c = 0; c < p.blocks.size(); ++c)
        grad[static_cast<std::size_t>(p.blocks[c])] += row[c] * resid;
    }
  }
  return grad;
}

std::vector<double> SeparableQuadratic::block_lipschitz() const {
  std::vector<double> lips(static_cast<std::size_t>(dimension_), 0.0);
  for (const auto& p : pieces_) {
    for (std::size_t c = 0; c < p.blocks.size(); ++c) {
      double col_sq = 0.0;
      for (int r = 0; r < p.rows; ++r) {
        const double v = p.matrix[static_cast<std::size_t>(r) * p.blocks.size() + c];
        col_sq += v * v;
      }
      lips[static_cast<std::size_t>(p.blocks[c])] += col_sq;
    }
  }
  return lips;
}

}  // namespace dbcd
