// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: instance generation, solving, analysis tables,
// and the enumeration-based verification suite.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dbcd/cluster.hpp"
#include "dbcd/eso.hpp"
#include "dbcd/eso_verify.hpp"
#include "dbcd/generator.hpp"
#include "dbcd/instance_io.hpp"
#include "dbcd/report_io.hpp"
#include "dbcd/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitVerification = 3;
constexpr int kExitDivergence = 4;

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ostream& open_or_stdout(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw dbcd::ParseError("cannot write output file: " + path);
  return file;
}

dbcd::Strategy parse_strategy(const std::string& name) {
  if (name == "ra") return dbcd::Strategy::ra;
  if (name == "asl") return dbcd::Strategy::asl;
  if (name == "ast") return dbcd::Strategy::ast;
  throw CLI::ValidationError("--strategy", "expected ra|asl|ast");
}

int run_generate(const dbcd::BlockAngularSpec& spec, const std::string& kind,
                 int svm_examples, double lambda, std::uint64_t seed,
                 const std::string& out) {
  if (kind == "svm") {
    const auto inst = dbcd::generate_separable_svm(svm_examples, lambda, seed);
    dbcd::save_instance(inst, out);
  } else {
    dbcd::generate_to_files(spec, out);
  }
  std::cout << "wrote " << out << "\n";
  return kExitOk;
}

int run_solve(const std::string& instance_path, dbcd::SolverConfig config,
              const std::string& beta_flag, const std::string& out_prefix,
              const std::string& trace_path) {
  const auto inst = dbcd::load_instance(instance_path);
  if (beta_flag != "auto") {
    try {
      std::size_t used = 0;
      config.beta = std::stod(beta_flag, &used);
      if (used != beta_flag.size()) throw std::invalid_argument(beta_flag);
    } catch (const std::exception&) {
      throw dbcd::ParameterError("--beta expects 'auto' or a number, got '" +
                                 beta_flag + "'");
    }
  }
  if (config.message_entries < 0) config.message_entries = inst.message_entries();

  std::ofstream trace_file;
  if (!trace_path.empty()) {
    trace_file.open(trace_path);
    if (!trace_file) throw dbcd::ParseError("cannot write trace file: " + trace_path);
    trace_file << "k,node,F,gap_or_residual_error,virtual_time,bytes_sent\n";
    config.trace = &trace_file;
  }

  dbcd::RunReport report;
  if (inst.kind == dbcd::ProblemKind::lasso)
    report = dbcd::solve(inst.lasso(), config);
  else
    report = dbcd::solve(inst.svm(), config);

  {
    std::ofstream csv(out_prefix + ".csv");
    if (!csv) throw dbcd::ParseError("cannot write report: " + out_prefix + ".csv");
    dbcd::write_report_csv(report, csv);
  }
  {
    std::ofstream json(out_prefix + ".json");
    if (!json) throw dbcd::ParseError("cannot write report: " + out_prefix + ".json");
    dbcd::write_report_json(report, config, json);
  }
  std::cout << "stop=" << report.stop_detail << " iterations=" << report.iterations
            << " objective=" << g17(report.final_objective)
            << " metric=" << g17(report.final_metric) << " beta=" << g17(report.beta)
            << "\n";
  return kExitOk;
}

int run_analyze(bool cost_bounds, bool speedup, bool opt_tau,
                const std::vector<double>& etas, double ctau_max, int samples,
                std::uint64_t seed, const std::string& out_path) {
  std::ofstream file;
  auto& out = open_or_stdout(file, out_path);

  if (cost_bounds) {
    out << "n,omega,C,tau,beta2,LB,UB\n";
    const struct {
      std::int64_t n;
      int omega, c, tau;
    } rows[] = {{1000000, 100, 10, 50}, {10000000, 100, 10, 50}, {100000000, 100, 100, 100}};
    for (const auto& r : rows) {
      const auto b = dbcd::cost_of_distribution_bounds(r.n, r.omega, r.c, r.tau);
      out << r.n << ',' << r.omega << ',' << r.c << ',' << r.tau << ','
          << g17(b.beta2) << ',' << g17(b.lower) << ',' << g17(b.upper) << '\n';
    }
  }
  if (speedup) {
    out << "Ctau,eta,speedup\n";
    for (double eta : etas) {
      for (double ctau = 1.0; ctau <= ctau_max; ctau *= 2.0)
        out << ctau << ',' << eta << ',' << g17(dbcd::speedup_from_eta(eta, ctau))
            << '\n';
      out << ctau_max << ',' << eta << ','
          << g17(dbcd::speedup_from_eta(eta, ctau_max)) << '\n';
    }
  }
  if (opt_tau) {
    out << "s,xi,C,r12,tau_star\n";
    dbcd::Rng rng(seed);
    for (int i = 0; i < samples; ++i) {
      const int s = 2 + static_cast<int>(rng.below(999));
      const int xi = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(s)));
      const int c = 1 + static_cast<int>(rng.below(64));
      const double r12 = std::exp(rng.uniform(std::log(1e-3), std::log(1e3)));
      out << s << ',' << xi << ',' << c << ',' << g17(r12) << ','
          << g17(dbcd::optimal_tau(s, xi, c, r12)) << '\n';
    }
  }
  return kExitOk;
}

struct VerifyTally {
  int checks = 0;
  int failures = 0;

  void report(const std::string& name, const std::string& detail, bool pass) {
    ++checks;
    if (!pass) ++failures;
    std::cout << "check=" << name << ' ' << detail
              << " status=" << (pass ? "pass" : "fail") << "\n";
  }
};

void verify_identity_cmd(VerifyTally& tally, int n, int c, std::optional<int> tau) {
  const auto partition = dbcd::make_balanced_partition(n, c);
  const int s = partition.group_size;
  const std::vector<std::pair<std::string, std::function<double(int, int)>>> kappas = {
      {"one", [](int, int) { return 1.0; }},
      {"theta", [](int theta, int) { return static_cast<double>(theta); }},
      {"i*theta^2",
       [](int theta, int i) { return static_cast<double>(i + 1) * theta * theta; }},
  };
  for (int xi = 1; xi <= s; ++xi) {
    std::vector<int> group;
    for (int node = 0; node < c; ++node)
      for (int j = 0; j < xi; ++j)
        group.push_back(partition.groups[static_cast<std::size_t>(node)]
                                        [static_cast<std::size_t>(j)]);
    for (int t = tau.value_or(1); t <= tau.value_or(s); ++t) {
      for (const auto& [kappa_name, kappa] : kappas) {
        const auto check = dbcd::verify_sampling_identity(partition, group, t, kappa);
        const bool pass =
            std::abs(check.lhs - check.rhs) <= 1e-10 * std::max(1.0, std::abs(check.lhs));
        tally.report("sampling-identity",
                     "n=" + std::to_string(n) + " C=" + std::to_string(c) +
                         " tau=" + std::to_string(t) + " xi=" + std::to_string(xi) +
                         " kappa=" + kappa_name + " lhs=" + g17(check.lhs) +
                         " rhs=" + g17(check.rhs),
                     pass);
      }
    }
  }
}

void verify_etheta2_cmd(VerifyTally& tally) {
  int done = 0;
  int failed = 0;
  double worst = 0.0;
  for (int s = 1; s <= 6; ++s)
    for (int tau = 1; tau <= s; ++tau)
      for (int xi = 1; xi <= s; ++xi)
        for (int c = 1; c <= 3; ++c) {
          const double formula = dbcd::expected_theta_squared(xi, tau, s, c);
          const double enumerated =
              dbcd::enumerate_expected_theta_squared(xi, tau, s, c);
          const double err = std::abs(formula - enumerated);
          worst = std::max(worst, err);
          ++done;
          if (err > 1e-10) ++failed;
        }
  tally.report("etheta2",
               "grid=s<=6,tau<=s,xi<=s,C<=3 configs=" + std::to_string(done) +
                   " max_error=" + g17(worst),
               failed == 0);
}

void verify_eso_cmd(VerifyTally& tally, int configs, std::uint64_t seed,
                    std::optional<std::int64_t> trials) {
  dbcd::Rng rng(seed);
  int failed = 0;
  for (int t = 0; t < configs; ++t) {
    const int c = 1 + static_cast<int>(rng.below(2));
    const int s = 2 + static_cast<int>(rng.below(3));  // n = C*s <= 8
    const int n = c * s;
    const int tau = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(s)));
    const auto partition = dbcd::make_balanced_partition(n, c);

    // random coupling groups, then a random quadratic over them
    const int group_count = 1 + static_cast<int>(rng.below(4));
    std::vector<std::vector<int>> groups;
    for (int gidx = 0; gidx < group_count; ++gidx) {
      const int size = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      std::vector<int> pool(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
      for (int j = 0; j < size; ++j) {
        const auto pick =
            j + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - j)));
        std::swap(pool[static_cast<std::size_t>(j)], pool[static_cast<std::size_t>(pick)]);
      }
      groups.emplace_back(pool.begin(), pool.begin() + size);
    }
    // every block must appear so the Lipschitz weights stay positive
    std::vector<int> rest(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) rest[static_cast<std::size_t>(i)] = i;
    groups.push_back(std::move(rest));
    const auto structure = dbcd::SeparabilityStructure::from_groups(std::move(groups));
    const auto f = dbcd::SeparableQuadratic::random(structure, n, rng);

    std::vector<double> x(static_cast<std::size_t>(n));
    std::vector<double> h(static_cast<std::size_t>(n));
    for (auto& v : x) v = rng.uniform(-2.0, 2.0);
    for (auto& v : h) v = rng.uniform(-2.0, 2.0);

    const auto report = dbcd::verify_eso(f, partition, tau, x, h, trials, rng.next());
    if (!report.holds) ++failed;
  }
  std::string detail = "configs=" + std::to_string(configs) +
                       (trials ? " trials=" + std::to_string(*trials) : " mode=exhaustive");
  tally.report("eso", detail + " failures=" + std::to_string(failed), failed == 0);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"distributed block coordinate descent toolkit"};
  app.require_subcommand(1);

  // generate
  auto* generate = app.add_subcommand("generate", "write a synthetic instance");
  dbcd::BlockAngularSpec spec;
  std::string gen_out;
  std::string gen_kind = "lasso";
  int svm_examples = 100;
  generate->add_option("--out", gen_out, "output instance path")->required();
  generate->add_option("--kind", gen_kind, "lasso|svm")
      ->check(CLI::IsMember({"lasso", "svm"}));
  generate->add_option("--C", spec.nodes, "diagonal block count");
  generate->add_option("--local-rows", spec.local_rows, "rows per local block");
  generate->add_option("--local-cols", spec.local_cols, "columns per local block");
  generate->add_option("--global-rows", spec.global_rows, "coupling rows");
  generate->add_option("--local-nnz", spec.local_nnz_per_row, "nonzeros per local row");
  generate->add_option("--global-nnz", spec.global_nnz_per_row,
                       "nonzeros per coupling row");
  generate->add_option("--xstar-nnz", spec.xstar_nonzeros, "planted support size");
  generate->add_option("--noise", spec.noise_sigma, "Gaussian noise sigma");
  generate->add_option("--lambda", spec.lambda, "l1 weight / svm regularization");
  generate->add_option("--seed", spec.seed, "generator seed");
  generate->add_option("--examples", svm_examples, "svm example count");

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "run the solver on an instance");
  dbcd::SolverConfig config;
  std::string instance_path;
  std::string strategy_flag = "ra";
  std::string overlap_flag = "ps";
  std::string beta_flag = "auto";
  std::string out_prefix = "report";
  std::string trace_path;
  double fstar = std::nan("");
  solve_cmd->add_option("--instance", instance_path, "instance file")->required();
  solve_cmd->add_option("--C", config.nodes, "node count");
  solve_cmd->add_option("--tau", config.tau, "blocks per node per iteration");
  solve_cmd->add_option("--strategy", strategy_flag, "ra|asl|ast")
      ->check(CLI::IsMember({"ra", "asl", "ast"}));
  solve_cmd->add_option("--torus-width", config.torus_width, "AST group width");
  solve_cmd->add_option("--overlap", overlap_flag, "ps|fp")
      ->check(CLI::IsMember({"ps", "fp"}));
  std::string scheme_flag = "contiguous";
  solve_cmd->add_option("--scheme", scheme_flag, "block-to-node assignment")
      ->check(CLI::IsMember({"contiguous", "strided"}));
  solve_cmd->add_option("--beta", beta_flag, "auto or an explicit value");
  solve_cmd->add_flag("--eta-bound", config.eta_surrogate,
                      "use the eta-bound surrogate for beta");
  solve_cmd->add_option("--seed", config.seed, "master seed");
  solve_cmd->add_option("--max-iter", config.max_iterations, "iteration budget");
  solve_cmd->add_option("--eps", config.epsilon, "target accuracy");
  solve_cmd->add_option("--audit-period", config.audit_period,
                        "iterations between residual audits");
  solve_cmd->add_option("--workers", config.workers, "threads per node batch");
  solve_cmd->add_option("--t1", config.cost.t1, "virtual time per block update");
  solve_cmd->add_option("--t2", config.cost.t2, "virtual time per residual exchange");
  solve_cmd->add_option("--tp2p", config.cost.tp2p, "virtual time per p2p message");
  solve_cmd->add_option("--fstar", fstar, "known optimal value (gap metric)");
  solve_cmd->add_option("--out", out_prefix, "report path prefix (.csv/.json)");
  solve_cmd->add_option("--trace", trace_path, "per-iteration trace CSV path");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "emit theory tables as CSV");
  bool cost_bounds = false, speedup = false, opt_tau = false;
  std::vector<double> etas = {0.001, 0.01, 0.1, 0.2, 1.0};
  double ctau_max = 1e4;
  int samples = 100;
  std::uint64_t analyze_seed = 1;
  std::string analyze_out;
  analyze->add_flag("--cost-bounds", cost_bounds, "cost-of-distribution bounds table");
  analyze->add_flag("--speedup", speedup, "speed-up factor curves");
  analyze->add_flag("--opt-tau", opt_tau, "optimal tau samples");
  analyze->add_option("--eta", etas, "sparsity levels for --speedup");
  analyze->add_option("--ctau-max", ctau_max, "largest C*tau for --speedup");
  analyze->add_option("--samples", samples, "sample count for --opt-tau");
  analyze->add_option("--seed", analyze_seed, "seed for --opt-tau");
  analyze->add_option("--out", analyze_out, "output CSV path (default stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "enumeration-based checks");
  bool identity = false, etheta2 = false, eso = false;
  int verify_n = 12, verify_c = 3;
  int verify_tau = -1;
  int eso_configs = 50;
  std::uint64_t verify_seed = 7;
  std::int64_t eso_trials = -1;
  verify->add_flag("--identity", identity, "sampling identity by enumeration");
  verify->add_flag("--etheta2", etheta2, "E[theta^2] law by enumeration");
  verify->add_flag("--eso", eso, "ESO inequality on random quadratics");
  verify->add_option("--n", verify_n, "block count for --identity");
  verify->add_option("--C", verify_c, "node count for --identity");
  verify->add_option("--tau", verify_tau, "fixed tau for --identity (default: sweep)");
  verify->add_option("--configs", eso_configs, "random configurations for --eso");
  verify->add_option("--trials", eso_trials,
                     "Monte-Carlo trials for --eso (default: exhaustive)");
  verify->add_option("--seed", verify_seed, "seed for --eso");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*generate)
      return run_generate(spec, gen_kind, svm_examples, spec.lambda, spec.seed, gen_out);
    if (*solve_cmd) {
      config.strategy = parse_strategy(strategy_flag);
      config.overlap = overlap_flag == "ps" ? dbcd::Overlap::ps : dbcd::Overlap::fp;
      config.scheme = scheme_flag == "strided" ? dbcd::PartitionScheme::strided
                                               : dbcd::PartitionScheme::contiguous;
      if (!std::isnan(fstar)) config.f_star = fstar;
      return run_solve(instance_path, config, beta_flag, out_prefix, trace_path);
    }
    if (*analyze) {
      if (!cost_bounds && !speedup && !opt_tau) cost_bounds = speedup = opt_tau = true;
      return run_analyze(cost_bounds, speedup, opt_tau, etas, ctau_max, samples,
                         analyze_seed, analyze_out);
    }
    if (*verify) {
      if (!identity && !etheta2 && !eso) identity = etheta2 = eso = true;
      VerifyTally tally;
      if (identity)
        verify_identity_cmd(tally, verify_n, verify_c,
                          verify_tau > 0 ? std::optional<int>(verify_tau) : std::nullopt);
      if (etheta2) verify_etheta2_cmd(tally);
      if (eso)
        verify_eso_cmd(tally, eso_configs, verify_seed,
                       eso_trials > 0 ? std::optional<std::int64_t>(eso_trials)
                                      : std::nullopt);
      std::cout << "summary checks=" << tally.checks
                << " failures=" << tally.failures << "\n";
      return tally.failures == 0 ? kExitOk : kExitVerification;
    }
  } catch (const dbcd::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const dbcd::DivergenceError& e) {
    std::cerr << "divergence: " << e.what() << "\n";
    return kExitDivergence;
  } catch (const dbcd::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
