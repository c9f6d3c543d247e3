// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "dbcd/errors.hpp"
#include "dbcd/generator.hpp"
#include "dbcd/instance_io.hpp"
#include "dbcd/solver.hpp"

using namespace dbcd;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("/tmp/dbcd_test_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("instance files round-trip byte for byte") {
  SUBCASE("lasso") {
    BlockAngularSpec spec;
    spec.seed = 42;
    const auto generated = generate_block_angular(spec);

    TempFile first("roundtrip1.dbcd");
    TempFile second("roundtrip2.dbcd");
    save_instance(generated.instance, first.path);
    const auto loaded = load_instance(first.path);
    save_instance(loaded, second.path);
    CHECK(slurp(first.path) == slurp(second.path));
    CHECK(loaded.kind == ProblemKind::lasso);
    CHECK(loaded.global_rows == generated.instance.global_rows);
    CHECK(loaded.lambda == generated.instance.lambda);
  }
  SUBCASE("svm") {
    const auto inst = generate_separable_svm(16, 0.25, 7);
    TempFile first("roundtrip3.dbcd");
    TempFile second("roundtrip4.dbcd");
    save_instance(inst, first.path);
    const auto loaded = load_instance(first.path);
    save_instance(loaded, second.path);
    CHECK(slurp(first.path) == slurp(second.path));
    CHECK(loaded.kind == ProblemKind::svm_dual);
    CHECK(loaded.y == inst.y);
  }
}

TEST_CASE("parse errors carry line numbers") {
  TempFile file("bad.dbcd");

  SUBCASE("bad header") {
    std::ofstream(file.path) << "SPARSE v1 2 2 1 lasso\n";
    try {
      load_instance(file.path);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line == 1);
    }
  }
  SUBCASE("truncated entries") {
    std::ofstream(file.path) << "DBCD-SPARSE v1 2 2 2 lasso\n0 0 1.0\n";
    CHECK_THROWS_AS(load_instance(file.path), ParseError);
  }
  SUBCASE("malformed entry") {
    std::ofstream(file.path) << "DBCD-SPARSE v1 2 2 1 lasso\n0 zero 1.0\n";
    try {
      load_instance(file.path);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line == 2);
    }
  }
  SUBCASE("missing lambda") {
    std::ofstream(file.path) << "DBCD-SPARSE v1 1 1 1 lasso\n0 0 1.0\n0.5\n";
    CHECK_THROWS_AS(load_instance(file.path), ParseError);
  }
  SUBCASE("unknown metadata") {
    std::ofstream(file.path)
        << "DBCD-SPARSE v1 1 1 1 lasso\n0 0 1.0\n0.5\nlambda=0.1\nwat=1\n";
    CHECK_THROWS_AS(load_instance(file.path), ParseError);
  }
}

TEST_CASE("block-angular shape is exact") {
  BlockAngularSpec spec;
  spec.nodes = 2;
  spec.local_rows = 20;
  spec.local_cols = 10;
  spec.global_rows = 5;
  spec.local_nnz_per_row = 3;
  spec.global_nnz_per_row = 6;
  spec.seed = 11;
  const auto generated = generate_block_angular(spec);
  const auto& inst = generated.instance;

  CHECK(inst.rows == 45);
  CHECK(inst.cols == 20);
  CHECK(inst.global_rows == 5);

  // zero pattern: local rows never reach outside their own column block
  for (const auto& t : inst.entries) {
    if (t.row < 40) {
      const int block = t.row / 20;
      CHECK(t.col >= block * 10);
      CHECK(t.col < (block + 1) * 10);
    }
  }
  // per-row nonzero counts
  std::vector<int> row_nnz(45, 0);
  for (const auto& t : inst.entries) ++row_nnz[static_cast<std::size_t>(t.row)];
  for (int r = 0; r < 40; ++r) CHECK(row_nnz[static_cast<std::size_t>(r)] == 3);
  for (int r = 40; r < 45; ++r) CHECK(row_nnz[static_cast<std::size_t>(r)] == 6);

  // clean rhs: y = A x* exactly when noise is off
  const auto a = SparseMatrix(inst.rows, inst.cols, inst.entries);
  const auto ax = a.multiply(generated.x_star);
  for (std::size_t j = 0; j < ax.size(); ++j) CHECK(inst.y[j] == ax[j]);

  // wire model ships only the coupling band
  CHECK(inst.message_entries() == 5);
}

TEST_CASE("sidecar round trip") {
  BlockAngularSpec spec;
  spec.seed = 31;
  TempFile file("withsidecar.dbcd");
  generate_to_files(spec, file.path);
  const auto inst = load_instance(file.path);
  const auto x_star = load_sidecar(file.path + ".xstar", inst.cols);
  const auto regenerated = generate_block_angular(spec);
  CHECK(x_star == regenerated.x_star);
  std::remove((file.path + ".xstar").c_str());
}

TEST_CASE("planted support is recovered at vanishing regularization") {
  BlockAngularSpec spec;
  spec.nodes = 2;
  spec.local_rows = 24;
  spec.local_cols = 8;
  spec.global_rows = 6;
  spec.local_nnz_per_row = 3;
  spec.global_nnz_per_row = 6;
  spec.xstar_nonzeros = 4;
  spec.noise_sigma = 0.0;
  spec.lambda = 1e-7;
  spec.seed = 97;
  const auto generated = generate_block_angular(spec);
  const auto p = generated.instance.lasso();

  SolverConfig config;
  config.nodes = 1;
  config.tau = 1;
  config.max_iterations = 120000;
  config.audit_period = 120000;
  config.seed = 3;
  const auto report = solve(p, config);

  for (int i = 0; i < generated.instance.cols; ++i) {
    const double planted = generated.x_star[static_cast<std::size_t>(i)];
    const double found = report.x[static_cast<std::size_t>(i)];
    if (planted != 0.0)
      CHECK(std::abs(found - planted) <= 1e-2 * std::max(1.0, std::abs(planted)));
    else
      CHECK(std::abs(found) <= 1e-2);
  }
}

TEST_CASE("paper-shaped row ratio at reduced scale") {
  // local:global row counts scaled down by 1e4 keep the reference ratio
  BlockAngularSpec spec;
  spec.nodes = 2;
  spec.local_rows = 195;
  spec.local_cols = 98;
  spec.global_rows = 50;
  spec.local_nnz_per_row = 4;
  spec.global_nnz_per_row = 10;
  spec.seed = 1;
  const auto generated = generate_block_angular(spec);
  CHECK(generated.instance.rows == 2 * 195 + 50);
  const double scaled = static_cast<double>(spec.local_rows) / spec.global_rows;
  const double reference = 1952148.0 / 500224.0;
  CHECK(std::abs(scaled - reference) / reference <= 0.02);
}

TEST_CASE("generator rejects inconsistent specs") {
  BlockAngularSpec spec;
  spec.local_nnz_per_row = 20;  // more than local_cols
  spec.local_cols = 10;
  CHECK_THROWS_AS(generate_block_angular(spec), ParameterError);

  BlockAngularSpec negative;
  negative.global_rows = -1;
  CHECK_THROWS_AS(generate_block_angular(negative), ParameterError);
}
