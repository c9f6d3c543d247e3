// SPDX-License-Identifier: Apache-2.0

#include "dbcd/generator.hpp"

#include <algorithm>
#include <set>

#include "dbcd/errors.hpp"
#include "dbcd/rng.hpp"

namespace dbcd {

namespace {

// k distinct values from [lo, hi), ascending.
std::vector<int> distinct_draw(Rng& rng, int lo, int hi, int k) {
  const int span = hi - lo;
  std::set<int> picked;
  while (static_cast<int>(picked.size()) < k)
    picked.insert(lo + static_cast<int>(rng.below(static_cast<std::uint64_t>(span))));
  return {picked.begin(), picked.end()};
}

double nonzero_uniform(Rng& rng) {
  double v = 0.0;
  do {
    v = rng.uniform(-1.0, 1.0);
  } while (v == 0.0);
  return v;
}

}  // namespace

GeneratedInstance generate_block_angular(const BlockAngularSpec& spec) {
  if (spec.nodes < 1 || spec.local_rows < 1 || spec.local_cols < 1 ||
      spec.global_rows < 0)
    throw ParameterError("block-angular spec: dimensions must be positive");
  if (spec.local_nnz_per_row < 1 || spec.local_nnz_per_row > spec.local_cols)
    throw ParameterError("block-angular spec: local nnz/row outside [1, localCols]");
  if (spec.global_rows > 0 &&
      (spec.global_nnz_per_row < 1 || spec.global_nnz_per_row > spec.total_cols()))
    throw ParameterError("block-angular spec: global nnz/row outside [1, N]");
  if (spec.xstar_nonzeros < 0 || spec.xstar_nonzeros > spec.total_cols())
    throw ParameterError("block-angular spec: x* sparsity outside [0, N]");

  Rng rng(spec.seed == 0 ? 0x6a09e667f3bcc908ULL : spec.seed);

  GeneratedInstance out;
  auto& inst = out.instance;
  inst.kind = ProblemKind::lasso;
  inst.rows = spec.total_rows();
  inst.cols = spec.total_cols();
  inst.lambda = spec.lambda;
  inst.global_rows = spec.global_rows;

  // diagonal local blocks
  for (int c = 0; c < spec.nodes; ++c) {
    const int row0 = c * spec.local_rows;
    const int col0 = c * spec.local_cols;
    for (int r = 0; r < spec.local_rows; ++r) {
      const auto cols = distinct_draw(rng, col0, col0 + spec.local_cols,
                                      spec.local_nnz_per_row);
      for (int col : cols)
        inst.entries.push_back({row0 + r, col, nonzero_uniform(rng)});
    }
  }
  // coupling band across all columns
  const int band0 = spec.nodes * spec.local_rows;
  for (int r = 0; r < spec.global_rows; ++r) {
    const auto cols = distinct_draw(rng, 0, inst.cols, spec.global_nnz_per_row);
    for (int col : cols)
      inst.entries.push_back({band0 + r, col, nonzero_uniform(rng)});
  }

  out.x_star.assign(static_cast<std::size_t>(inst.cols), 0.0);
  if (spec.xstar_nonzeros > 0) {
    const auto support = distinct_draw(rng, 0, inst.cols, spec.xstar_nonzeros);
    for (int i : support) {
      const double magnitude = rng.uniform(0.5, 1.5);
      out.x_star[static_cast<std::size_t>(i)] =
          rng.unit() < 0.5 ? magnitude : -magnitude;
    }
  }

  const SparseMatrix a(inst.rows, inst.cols, inst.entries);
  inst.y = a.multiply(out.x_star);
  if (spec.noise_sigma > 0.0)
    for (auto& v : inst.y) v += spec.noise_sigma * rng.normal();
  return out;
}

void generate_to_files(const BlockAngularSpec& spec, const std::string& path) {
  const auto generated = generate_block_angular(spec);
  save_instance(generated.instance, path);
  save_sidecar(generated.x_star, path + ".xstar");
}

ProblemInstance generate_separable_svm(int examples, double lambda,
                                       std::uint64_t seed) {
  if (examples < 2) throw ParameterError("separable svm: need at least 2 examples");
  Rng rng(seed == 0 ? 0xbb67ae8584caa73bULL : seed);

  ProblemInstance inst;
  inst.kind = ProblemKind::svm_dual;
  inst.rows = examples;
  inst.cols = 2;
  inst.lambda = lambda;
  inst.y.resize(static_cast<std::size_t>(examples));
  for (int i = 0; i < examples; ++i) {
    const double label = i % 2 == 0 ? 1.0 : -1.0;
    inst.y[static_cast<std::size_t>(i)] = label;
    const double cx = label * 2.0 + rng.uniform(-0.5, 0.5);
    const double cy = label * 2.0 + rng.uniform(-0.5, 0.5);
    inst.entries.push_back({i, 0, cx});
    inst.entries.push_back({i, 1, cy});
  }
  return inst;
}

}  // namespace dbcd
