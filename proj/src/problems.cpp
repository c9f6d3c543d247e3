// SPDX-License-Identifier: Apache-2.0

#include "dbcd/problems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dbcd/errors.hpp"
#include "dbcd/numerics.hpp"

namespace dbcd {

LassoProblem::LassoProblem(SparseMatrix a, std::vector<double> rhs, double l1_weight)
    : A(std::move(a)), y(std::move(rhs)), lambda(l1_weight) {
  if (static_cast<int>(y.size()) != A.rows())
    throw ParameterError("LassoProblem: y length must equal row count");
  if (lambda < 0.0)
    throw ParameterError("LassoProblem: lambda must be nonnegative");
}

SvmDualProblem::SvmDualProblem(SparseMatrix a, std::vector<double> y, double reg)
    : A(std::move(a)), labels(std::move(y)), lambda(reg) {
  if (static_cast<int>(labels.size()) != A.rows())
    throw ParameterError("SvmDualProblem: one label per example required");
  for (double l : labels)
    if (l != 1.0 && l != -1.0)
      throw ParameterError("SvmDualProblem: labels must be +1 or -1");
  if (lambda <= 0.0)
    throw ParameterError("SvmDualProblem: lambda must be positive");
}

Residual recompute_residual(const LassoProblem& p, std::span<const double> x) {
  Residual r;
  r.kind = ProblemKind::lasso;
  r.g = p.A.multiply(x);
  for (int j = 0; j < p.residual_dim(); ++j)
    r.g[static_cast<std::size_t>(j)] -= p.y[static_cast<std::size_t>(j)];
  return r;
}

Residual recompute_residual(const SvmDualProblem& p, std::span<const double> x) {
  const int m = p.num_blocks();
  const double scale = 1.0 / (p.lambda * m);
  std::vector<double> scaled(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i)
    scaled[static_cast<std::size_t>(i)] =
        scale * x[static_cast<std::size_t>(i)] * p.labels[static_cast<std::size_t>(i)];
  Residual r;
  r.kind = ProblemKind::svm_dual;
  r.g = p.A.multiply_transpose(scaled);
  return r;
}

std::vector<double> lipschitz_constants(const LassoProblem& p) {
  std::vector<double> lips(static_cast<std::size_t>(p.num_blocks()));
  for (int i = 0; i < p.num_blocks(); ++i)
    lips[static_cast<std::size_t>(i)] = p.A.column_norm_squared(i);
  return lips;
}

std::vector<double> lipschitz_constants(const SvmDualProblem& p) {
  const double m = p.num_blocks();
  std::vector<double> lips(static_cast<std::size_t>(p.num_blocks()));
  for (int i = 0; i < p.num_blocks(); ++i)
    lips[static_cast<std::size_t>(i)] =
        p.A.row_norm_squared(i) / (p.lambda * m * m);
  return lips;
}

double block_gradient(const LassoProblem& p, int i, const Residual& r) {
  return p.A.column_dot(i, r.g);
}

double block_gradient(const SvmDualProblem& p, int i, const Residual& r) {
  const double m = p.num_blocks();
  return (p.labels[static_cast<std::size_t>(i)] * p.A.row_dot(i, r.g) - 1.0) / m;
}

double soft_threshold_update(double b, double c, double d, double lambda) {
  if (c <= 0.0)
    throw CurvatureError("soft_threshold_update: curvature must be positive");
  if (lambda < 0.0)
    throw ParameterError("soft_threshold_update: lambda must be nonnegative");
  const double zeta = d - b / c;
  const double shrunk = std::max(std::abs(zeta) - lambda / c, 0.0);
  return (zeta > 0.0 ? shrunk : -shrunk) - d;
}

double clip_update(double x_i, double grad_inner, double row_norm_sq,
                   double lambda_reg, int m, double beta) {
  if (row_norm_sq == 0.0) return 0.0;  // degenerate row, block skipped
  if (row_norm_sq < 0.0 || beta <= 0.0)
    throw ParameterError("clip_update: invalid curvature inputs");
  const double raw =
      lambda_reg * m * (1.0 - grad_inner) / (beta * row_norm_sq);
  return std::clamp(raw, -x_i, 1.0 - x_i);
}

std::vector<double> delta_g(const LassoProblem& p, std::span<const BlockStep> steps) {
  std::vector<double> dg(static_cast<std::size_t>(p.residual_dim()), 0.0);
  for (const auto& s : steps) p.A.add_scaled_column(s.block, s.step, dg);
  return dg;
}

std::vector<double> delta_g(const SvmDualProblem& p, std::span<const BlockStep> steps) {
  const double scale = 1.0 / (p.lambda * p.num_blocks());
  std::vector<double> dg(static_cast<std::size_t>(p.residual_dim()), 0.0);
  for (const auto& s : steps)
    p.A.add_scaled_row(s.block,
                       scale * s.step * p.labels[static_cast<std::size_t>(s.block)],
                       dg);
  return dg;
}

double objective_value(const LassoProblem& p, std::span<const double> x,
                       const Residual& r) {
  CompensatedSum acc;
  for (double v : r.g) acc.add(0.5 * v * v);
  for (double v : x) acc.add(p.lambda * std::abs(v));
  return acc.value();
}

double objective_value(const SvmDualProblem& p, std::span<const double> x,
                       const Residual& r) {
  for (double v : x)
    if (v < 0.0 || v > 1.0) return std::numeric_limits<double>::infinity();
  CompensatedSum acc;
  for (double v : r.g) acc.add(0.5 * p.lambda * v * v);
  const double inv_m = 1.0 / p.num_blocks();
  for (double v : x) acc.add(-inv_m * v);
  return acc.value();
}

double duality_gap(const SvmDualProblem& p, std::span<const double> x,
                   const Residual& r) {
  const int m = p.num_blocks();
  CompensatedSum acc;
  for (int i = 0; i < m; ++i) {
    const double margin =
        p.labels[static_cast<std::size_t>(i)] * p.A.row_dot(i, r.g);
    acc.add(std::max(0.0, 1.0 - margin) - x[static_cast<std::size_t>(i)]);
  }
  double gap = acc.value() / m;
  CompensatedSum norm;
  for (double v : r.g) norm.add(v * v);
  gap += p.lambda * norm.value();
  return gap;
}

double primal_objective(const SvmDualProblem& p, std::span<const double> w) {
  const int m = p.num_blocks();
  CompensatedSum acc;
  for (int i = 0; i < m; ++i) {
    const double margin = p.labels[static_cast<std::size_t>(i)] * p.A.row_dot(i, w);
    acc.add(std::max(0.0, 1.0 - margin));
  }
  double value = acc.value() / m;
  CompensatedSum norm;
  for (double v : w) norm.add(v * v);
  return value + 0.5 * p.lambda * norm.value();
}

namespace {

SeparabilityStructure structure_from_supports(const SparseMatrix& A, bool by_rows) {
  std::vector<std::vector<int>> groups;
  const int count = by_rows ? A.rows() : A.cols();
  groups.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    const auto support = by_rows ? A.row_cols(k) : A.column_rows(k);
    if (support.empty()) continue;
    groups.emplace_back(support.begin(), support.end());
  }
  if (groups.empty())
    throw ParameterError("coupling_structure: matrix has no nonzeros");
  return SeparabilityStructure::from_groups(std::move(groups));
}

}  // namespace

SeparabilityStructure coupling_structure(const LassoProblem& p) {
  return structure_from_supports(p.A, /*by_rows=*/true);
}

SeparabilityStructure coupling_structure(const SvmDualProblem& p) {
  return structure_from_supports(p.A, /*by_rows=*/false);
}

}  // namespace dbcd
