// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "dbcd/separability.hpp"
#include "dbcd/sparse_matrix.hpp"

namespace dbcd {

enum class ProblemKind { lasso, svm_dual };

// min_x 1/2 ||Ax - y||^2 + lambda ||x||_1 over x in R^N, one scalar block
// per column. The residual g = Ax - y makes block gradients a single
// column dot product.
struct LassoProblem {
  SparseMatrix A;
  std::vector<double> y;
  double lambda = 0.0;

  LassoProblem(SparseMatrix a, std::vector<double> rhs, double l1_weight);

  int num_blocks() const { return A.cols(); }
  int residual_dim() const { return A.rows(); }
};

// Dual of the hinge-loss SVM: min_x 1/(2 lambda m^2) x'Qx - (1/m) x'1 over
// the box [0,1]^m, one scalar block per training example. Q is never formed;
// everything goes through g = 1/(lambda m) sum_i x_i y_i A_{i:}', which is
// the primal vector and lives in feature space.
struct SvmDualProblem {
  SparseMatrix A;               // m examples x N features
  std::vector<double> labels;   // entries in {-1, +1}
  double lambda = 0.0;

  SvmDualProblem(SparseMatrix a, std::vector<double> y, double reg);

  int num_blocks() const { return A.rows(); }
  int residual_dim() const { return A.cols(); }
};

// The auxiliary vector enabling cheap block gradients: Ax - y for the
// least-squares problem, the scaled primal vector for the SVM dual.
struct Residual {
  ProblemKind kind = ProblemKind::lasso;
  std::vector<double> g;
};

// From-scratch residual with compensated accumulation.
Residual recompute_residual(const LassoProblem& p, std::span<const double> x);
Residual recompute_residual(const SvmDualProblem& p, std::span<const double> x);

// Block Lipschitz constants: ||A_{:i}||^2 (lasso) and ||A_{i:}||^2/(lambda m^2)
// (svm). Zero columns/rows yield 0; such blocks are skipped by the solver.
std::vector<double> lipschitz_constants(const LassoProblem& p);
std::vector<double> lipschitz_constants(const SvmDualProblem& p);

double block_gradient(const LassoProblem& p, int i, const Residual& r);
double block_gradient(const SvmDualProblem& p, int i, const Residual& r);

// argmin_t b t + (c/2) t^2 + lambda |d + t|, the soft-thresholding step
//   t* = sgn(zeta)(|zeta| - lambda/c)_+ - d with zeta = d - b/c.
// Throws CurvatureError when c <= 0.
double soft_threshold_update(double b, double c, double d, double lambda);

// argmin over t of grad*t + (beta L_i / 2) t^2 subject to x_i + t in [0,1]:
// the unconstrained step lambda m (1 - grad_inner) / (beta row_norm_sq)
// clipped to [-x_i, 1-x_i]. grad_inner is y_i A_{i:} g. Returns 0 for a
// zero row (degenerate block).
double clip_update(double x_i, double grad_inner, double row_norm_sq,
                   double lambda_reg, int m, double beta);

struct BlockStep {
  int block = 0;
  double step = 0.0;
};

// A node's residual contribution for a batch of block steps:
// sum_i h_i A_{:i} (lasso) or sum_i h_i y_i A_{i:}'/(lambda m) (svm),
// accumulated in the given order. Dense vector; support is the union of the
// touched sparsity patterns.
std::vector<double> delta_g(const LassoProblem& p, std::span<const BlockStep> steps);
std::vector<double> delta_g(const SvmDualProblem& p, std::span<const BlockStep> steps);

// F(x) = f(x) + Omega(x) evaluated through the residual. For the SVM dual
// this is lambda/2 ||g||^2 - mean(x), +infinity outside the box.
double objective_value(const LassoProblem& p, std::span<const double> x,
                       const Residual& r);
double objective_value(const SvmDualProblem& p, std::span<const double> x,
                       const Residual& r);

// P(g) + F(x) = (1/m) sum_i (hinge_i(g) - x_i) + lambda ||g||^2; nonnegative
// up to round-off and zero exactly at the optimum.
double duality_gap(const SvmDualProblem& p, std::span<const double> x,
                   const Residual& r);

// Hinge-loss primal objective P(w) = (1/m) sum_i max{0, 1 - y_i A_{i:} w}
// + lambda/2 ||w||^2 (diagnostic; the gap identity is tested against it).
double primal_objective(const SvmDualProblem& p, std::span<const double> w);

// Coupling groups for the degree-of-separability analysis: row supports for
// least squares (one piece per residual row), column supports for the SVM
// dual (dual variables couple through shared features). Empty rows/columns
// contribute no group.
SeparabilityStructure coupling_structure(const LassoProblem& p);
SeparabilityStructure coupling_structure(const SvmDualProblem& p);

}  // namespace dbcd
