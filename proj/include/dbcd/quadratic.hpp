// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "dbcd/rng.hpp"
#include "dbcd/separability.hpp"

namespace dbcd {

// Partially separable convex quadratic over scalar blocks,
//   f(x) = sum_J 1/2 ||B_J x_J - b_J||^2,
// with one piece per group of a SeparabilityStructure. Exact block
// curvatures are available in closed form, which makes the quadratic upper
// bound tight and the test objective suitable for checking the ESO
// inequality without slack from loose Lipschitz estimates.
class SeparableQuadratic {
 public:
  struct Piece {
    std::vector<int> blocks;     // ascending block ids this piece touches
    int rows = 0;                // rows of B
    std::vector<double> matrix;  // B, row-major, rows x blocks.size()
    std::vector<double> shift;   // b, length rows
  };

  SeparableQuadratic(int dimension, std::vector<Piece> pieces);

  // One piece per group; entries of B and b uniform on [-1, 1], row count
  // in {1, ..., |J|+1}.
  static SeparableQuadratic random(const SeparabilityStructure& structure,
                                   int dimension, Rng& rng);

  // Fully separable f(x) = sum_i L_i/2 (x_i - center_i)^2.
  static SeparableQuadratic diagonal(std::vector<double> curvatures,
                                     std::vector<double> centers);

  double value(std::span<const double> x) const;
  std::vector<double> gradient(std::span<const double> x) const;

  // L_i = sum over pieces touching i of ||column of B at i||^2 (the exact
  // diagonal of the Hessian).
  std::vector<double> block_lipschitz() const;

  const SeparabilityStructure& structure() const { return structure_; }
  int dimension() const { return dimension_; }

 private:
  int dimension_ = 0;
  std::vector<Piece> pieces_;
  SeparabilityStructure structure_;
};

}  // namespace dbcd
