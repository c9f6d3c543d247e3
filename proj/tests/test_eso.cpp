// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "dbcd/errors.hpp"
#include "dbcd/eso.hpp"
#include "dbcd/eso_verify.hpp"
#include "dbcd/quadratic.hpp"

using namespace dbcd;

TEST_CASE("beta closed form") {
  // both correction terms vanish
  for (int xi : {1, 2, 3})
    for (int s : {3, 5}) CHECK(compute_beta(xi, 1, s, 1) == 1.0);
  // single node, decoupled objective
  for (int tau = 1; tau <= 5; ++tau) CHECK(compute_beta(1, tau, 5, 1) == 1.0);
  // hand value: 1 + 1/2 + 4/3
  CHECK(compute_beta(2, 2, 3, 2) == doctest::Approx(17.0 / 6).epsilon(1e-15));
  // s = 1 guard
  CHECK(compute_beta(1, 1, 1, 3) == doctest::Approx(1.0 + 2.0));

  CHECK_THROWS_AS(compute_beta(0, 1, 3, 1), ParameterError);
  CHECK_THROWS_AS(compute_beta(1, 4, 3, 1), ParameterError);
  CHECK_THROWS_AS(compute_beta(4, 1, 3, 1), ParameterError);
  CHECK_THROWS_AS(compute_beta(1, 1, 3, 0), ParameterError);
}

TEST_CASE("beta is nondecreasing in xi, tau, and C") {
  for (int s : {2, 4, 7}) {
    for (int xi = 1; xi <= s; ++xi)
      for (int tau = 1; tau <= s; ++tau)
        for (int c = 1; c <= 4; ++c) {
          const double base = compute_beta(xi, tau, s, c);
          if (xi < s) CHECK(compute_beta(xi + 1, tau, s, c) >= base);
          if (tau < s) CHECK(compute_beta(xi, tau + 1, s, c) >= base);
          CHECK(compute_beta(xi, tau, s, c + 1) >= base);
        }
  }
}

TEST_CASE("expected theta squared") {
  // tau = s: every block of J selected, theta = C*xi deterministically
  CHECK(expected_theta_squared(2, 4, 4, 3) == doctest::Approx(36.0));
  CHECK(expected_theta_squared(3, 3, 3, 2) == doctest::Approx(36.0));
  // Bernoulli(1/2)
  CHECK(expected_theta_squared(1, 1, 2, 1) == doctest::Approx(0.5));
  // enumeration oracle
  CHECK(expected_theta_squared(2, 2, 4, 2) ==
        doctest::Approx(enumerate_expected_theta_squared(2, 2, 4, 2)).epsilon(1e-12));
}

TEST_CASE("beta ties to the second moment of theta") {
  // the step multiplier is exactly s E[theta^2] / (C xi tau)
  for (int s : {1, 2, 4, 7})
    for (int tau = 1; tau <= s; ++tau)
      for (int xi = 1; xi <= s; ++xi)
        for (int c = 1; c <= 4; ++c) {
          const double beta = compute_beta(xi, tau, s, c);
          const double second = expected_theta_squared(xi, tau, s, c);
          const double tied = static_cast<double>(s) * second /
                              (static_cast<double>(c) * xi * tau);
          CHECK(beta == doctest::Approx(tied).epsilon(1e-13));
        }
}

TEST_CASE("per-node theta law is hypergeometric") {
  SUBCASE("xi = s: point mass at tau") {
    const auto pmf = theta_pmf_per_node(3, 2, 3);
    REQUIRE(pmf.size() == 3);
    CHECK(pmf[0] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(pmf[1] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(pmf[2] == doctest::Approx(1.0));
  }
  SUBCASE("two equiprobable subsets") {
    const auto pmf = theta_pmf_per_node(1, 1, 2);
    REQUIRE(pmf.size() == 2);
    CHECK(pmf[0] == doctest::Approx(0.5));
    CHECK(pmf[1] == doctest::Approx(0.5));
  }
  SUBCASE("sums to one") {
    Rng rng(5);
    for (int rep = 0; rep < 100; ++rep) {
      const int s = 1 + static_cast<int>(rng.below(40));
      const int tau = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(s)));
      const int xi = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(s)));
      const auto pmf = theta_pmf_per_node(xi, tau, s);
      const double total = std::accumulate(pmf.begin(), pmf.end(), 0.0);
      CHECK(std::abs(total - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("theta moment matches the convolved per-node law") {
  // theta is a sum of C iid per-node hypergeometrics: E[theta^2] from the
  // C-fold convolution must match the closed form
  for (int s : {2, 3, 5})
    for (int tau = 1; tau <= s; ++tau)
      for (int xi = 1; xi <= s; ++xi)
        for (int c = 1; c <= 3; ++c) {
          const auto single = theta_pmf_per_node(xi, tau, s);
          std::vector<double> law = {1.0};
          for (int rep = 0; rep < c; ++rep) {
            std::vector<double> merged(law.size() + single.size() - 1, 0.0);
            for (std::size_t a = 0; a < law.size(); ++a)
              for (std::size_t b = 0; b < single.size(); ++b)
                merged[a + b] += law[a] * single[b];
            law = std::move(merged);
          }
          double second = 0.0;
          for (std::size_t k = 0; k < law.size(); ++k)
            second += static_cast<double>(k) * static_cast<double>(k) * law[k];
          CHECK(std::abs(second - expected_theta_squared(xi, tau, s, c)) <= 1e-10);
        }
}

TEST_CASE("sublinear-rate bound") {
  // k = 0: prefactor is 1
  CHECK(sublinear_rate_bound(0, 100, 2, 5, 3.0, 4.0, 7.0) == doctest::Approx(13.0));
  // strictly decreasing in k
  double prev = sublinear_rate_bound(0, 1000, 4, 10, 2.0, 1.0, 1.0);
  for (std::int64_t k = 1; k <= 64; k *= 2) {
    const double cur = sublinear_rate_bound(k, 1000, 4, 10, 2.0, 1.0, 1.0);
    CHECK(cur < prev);
    prev = cur;
  }
  // doubling C*tau at fixed beta tightens the prefactor
  CHECK(sublinear_rate_bound(10, 1000, 8, 10, 2.0, 1.0, 1.0) <
        sublinear_rate_bound(10, 1000, 4, 10, 2.0, 1.0, 1.0));
}

TEST_CASE("linear-rate iteration count") {
  // hand value: 1e4/(4*25) * (2+0)/(0.1+0) * log(e) = 100*20 = 2000
  ConvergenceBudget budget;
  budget.mu_f = 0.1;
  budget.mu_omega = 0.0;
  budget.rho = 0.5;
  budget.initial_gap = 1.0;
  budget.epsilon = budget.initial_gap / (budget.rho * std::exp(1.0));
  CHECK(linear_rate_iterations(budget, 10000, 4, 25, 2.0) == 2000);

  // halving epsilon adds n/(C tau) * (beta+muO)/(muF+muO) * log 2 pre-ceiling
  ConvergenceBudget b2 = budget;
  b2.epsilon = budget.epsilon / 2.0;
  const double extra = 10000.0 / 100.0 * (2.0 / 0.1) * std::log(2.0);
  CHECK(linear_rate_iterations(b2, 10000, 4, 25, 2.0) ==
        static_cast<std::int64_t>(std::ceil(2000.0 + extra)));

  ConvergenceBudget no_strong = budget;
  no_strong.mu_f = 0.0;
  CHECK_THROWS_AS(linear_rate_iterations(no_strong, 10000, 4, 25, 2.0),
                  StrongConvexityError);

  ConvergenceBudget loose = budget;
  loose.epsilon = 2.0;  // above the initial gap
  CHECK_THROWS_AS(linear_rate_iterations(loose, 10000, 4, 25, 2.0), ParameterError);

  ConvergenceBudget bad_rho = budget;
  bad_rho.rho = 1.0;
  CHECK_THROWS_AS(linear_rate_iterations(bad_rho, 10000, 4, 25, 2.0), ParameterError);
}

TEST_CASE("speed-up factor and eta bound") {
  CHECK(speedup_factor(1, 1, 5, 1) == doctest::Approx(1.0));
  // omega = 1 keeps beta at 1: linear speed-up in tau
  for (int tau : {1, 2, 5, 10}) CHECK(speedup_factor(1, tau, 10, 1) == doctest::Approx(tau));

  // beta/(C tau) <= eta bound whenever s >= 2
  for (int s : {2, 3, 6})
    for (int xi = 1; xi <= s; ++xi)
      for (int tau = 1; tau <= s; ++tau)
        for (int c = 1; c <= 4; ++c) {
          const double lhs = compute_beta(xi, tau, s, c) / (static_cast<double>(c) * tau);
          const double rhs = eta_bound(static_cast<double>(xi) / s, c, tau);
          CHECK(lhs <= rhs + 1e-12);
          // speed-up never exceeds the update count, equality iff beta = 1
          const double factor = speedup_factor(xi, tau, s, c);
          CHECK(factor <= c * tau + 1e-12);
          if (compute_beta(xi, tau, s, c) == 1.0)
            CHECK(factor == doctest::Approx(c * tau));
          else
            CHECK(factor < c * tau);
        }

  // for fixed eta the curve is nondecreasing in C*tau
  for (double eta : {0.001, 0.01, 0.1, 0.2}) {
    double prev = 0.0;
    for (double ctau = 1.0; ctau <= 1e4; ctau *= 2.0) {
      const double cur = speedup_from_eta(eta, ctau);
      CHECK(cur >= prev - 1e-12);
      prev = cur;
    }
  }
}

TEST_CASE("cost-of-distribution bounds reproduce the reference table") {
  struct Row {
    std::int64_t n;
    int omega, c, tau;
    double beta2, lb, ub;
  };
  const Row rows[] = {
      {1000000, 100, 10, 50, 1.049, 1.0000086, 1.4279673},
      {10000000, 100, 10, 50, 1.005, 1.0000009, 1.0446901},
      {100000000, 100, 100, 100, 1.009, 1.0000010, 1.9801990},
  };
  for (const auto& row : rows) {
    const auto b = cost_of_distribution_bounds(row.n, row.omega, row.c, row.tau);
    CHECK(std::abs(b.lower - row.lb) / row.lb <= 5e-7);
    CHECK(std::abs(b.upper - row.ub) / row.ub <= 5e-7);
    // beta2 is printed to 3 decimals in the reference: one ulp of the print
    CHECK(std::abs(b.beta2 - row.beta2) <= 1e-3);
    // and must match its own closed form exactly
    const double expect =
        1.0 + (row.omega - 1.0) * (static_cast<double>(row.c) * row.tau - 1.0) /
                  (static_cast<double>(row.n) - 1.0);
    CHECK(b.beta2 == doctest::Approx(expect).epsilon(1e-15));
  }
  CHECK_THROWS_AS(cost_of_distribution_bounds(10, 2, 10, 1), ParameterError);  // s = 1
  CHECK_THROWS_AS(cost_of_distribution_bounds(10, 11, 2, 1), ParameterError);
}

TEST_CASE("optimal tau") {
  CHECK(optimal_tau(100, 1, 1, 1.0) == doctest::Approx(10.0));
  // quadrupling the work/communication ratio halves tau*
  CHECK(optimal_tau(100, 2, 3, 4.0) == doctest::Approx(0.5 * optimal_tau(100, 2, 3, 1.0)));
  CHECK_THROWS_AS(optimal_tau(100, 1, 1, 0.0), ParameterError);
  CHECK_THROWS_AS(optimal_tau(0, 1, 1, 1.0), ParameterError);

  // grid oracle on the per-iteration cost expression
  Rng rng(31);
  for (int rep = 0; rep < 25; ++rep) {
    const int s = 2 + static_cast<int>(rng.below(400));
    const int xi = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(s)));
    const int c = 1 + static_cast<int>(rng.below(16));
    const double r12 = std::exp(rng.uniform(std::log(1e-2), std::log(1e2)));
    const double star = optimal_tau(s, xi, c, r12);

    const auto cost = [&](double tau) {
      return (static_cast<double>(s) / (static_cast<double>(xi) * c) + tau) *
             (r12 + 1.0 / tau);
    };
    const double step = star * 1e-3;
    double best = star;
    double best_value = cost(star);
    for (double tau = std::max(step, star / 10.0); tau <= star * 10.0; tau += step) {
      if (cost(tau) < best_value) {
        best_value = cost(tau);
        best = tau;
      }
    }
    CHECK(std::abs(best - star) <= step + 1e-12);
  }
}

TEST_CASE("eso parameters wire xi and beta together") {
  const auto part = make_balanced_partition(6, 2);
  const auto st = SeparabilityStructure::from_groups({{0, 1, 3}, {4, 5}});
  const auto params = EsoParameters::compute(st, part, 2, WeightVector(6, 1.0));
  CHECK(params.omega == 3);
  CHECK(params.xi == compute_xi(st, part));
  CHECK(params.beta == doctest::Approx(compute_beta(params.xi, 2, 3, 2)));
  CHECK(params.eta == doctest::Approx(params.xi / 3.0));
}

TEST_CASE("eso inequality: degenerate and equality cases") {
  SUBCASE("h = 0 collapses both sides to f(x)") {
    const auto st = SeparabilityStructure::fully_separable(4);
    Rng rng(7);
    const auto f = SeparableQuadratic::random(st, 4, rng);
    const auto part = make_balanced_partition(4, 2);
    std::vector<double> x = {0.5, -1.0, 2.0, 0.25};
    std::vector<double> h(4, 0.0);
    const auto report = verify_eso(f, part, 1, x, h);
    CHECK(report.holds);
    CHECK(report.lhs == doctest::Approx(report.rhs).epsilon(1e-14));
    CHECK(report.lhs == doctest::Approx(f.value(x)).epsilon(1e-14));
  }

  SUBCASE("fully separable quadratic with C=1, tau=1 is tight") {
    const std::vector<double> curvature = {0.7, 1.3, 2.0, 0.2, 3.1};
    const std::vector<double> center = {1.0, -2.0, 0.5, 0.0, 2.0};
    const auto f = SeparableQuadratic::diagonal(curvature, center);
    const auto part = make_balanced_partition(5, 1);
    std::vector<double> x = {0.1, 0.2, -0.3, 0.4, -0.5};
    std::vector<double> h = {1.0, -1.5, 0.25, 2.0, 0.75};
    const auto report = verify_eso(f, part, 1, x, h);
    CHECK(report.exhaustive);
    CHECK(report.outcomes == 5);
    CHECK(report.holds);
    CHECK(std::abs(report.lhs - report.rhs) <= 1e-10);
  }
}

TEST_CASE("eso inequality holds on random partially separable quadratics") {
  Rng rng(17);
  for (int rep = 0; rep < 10; ++rep) {
    const int c = 1 + static_cast<int>(rng.below(2));
    const int s = 2 + static_cast<int>(rng.below(3));
    const int n = c * s;
    std::vector<std::vector<int>> groups;
    groups.push_back({});
    for (int b = 0; b < n; ++b) groups.back().push_back(b);  // keep L_i > 0
    for (int extra = 0; extra < 3; ++extra) {
      std::vector<int> g;
      for (int b = 0; b < n; ++b)
        if (rng.below(2)) g.push_back(b);
      if (!g.empty()) groups.push_back(std::move(g));
    }
    const auto st = SeparabilityStructure::from_groups(std::move(groups));
    const auto f = SeparableQuadratic::random(st, n, rng);
    const auto part = make_balanced_partition(n, c);
    const int tau = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(s)));
    std::vector<double> x(static_cast<std::size_t>(n));
    std::vector<double> h(static_cast<std::size_t>(n));
    for (auto& v : x) v = rng.uniform(-2.0, 2.0);
    for (auto& v : h) v = rng.uniform(-2.0, 2.0);
    const auto report = verify_eso(f, part, tau, x, h);
    CHECK(report.holds);
  }
}

TEST_CASE("eso Monte-Carlo mode agrees with enumeration") {
  Rng rng(23);
  const auto st = SeparabilityStructure::from_groups({{0, 1, 2, 3}, {2, 3, 4, 5}});
  // pad so every block has curvature
  const auto full = SeparabilityStructure::from_groups(
      {{0, 1, 2, 3}, {2, 3, 4, 5}, {0, 1, 2, 3, 4, 5}});
  const auto f = SeparableQuadratic::random(full, 6, rng);
  const auto part = make_balanced_partition(6, 2);
  std::vector<double> x = {0.3, -0.2, 1.0, 0.5, -1.0, 0.1};
  std::vector<double> h = {1.0, 0.5, -0.5, 0.25, 2.0, -1.0};

  const auto exact = verify_eso(f, part, 2, x, h);
  const auto sampled = verify_eso(f, part, 2, x, h, 20000, 99);
  CHECK(exact.exhaustive);
  CHECK_FALSE(sampled.exhaustive);
  CHECK(sampled.holds);
  CHECK(std::abs(sampled.lhs - exact.lhs) <= 5.0 * sampled.std_error + 1e-12);
  CHECK(st.omega == 4);
}

TEST_CASE("eso enumeration budget is enforced") {
  const int n = 60;
  const auto st = SeparabilityStructure::fully_separable(n);
  Rng rng(1);
  const auto f = SeparableQuadratic::random(st, n, rng);
  const auto part = make_balanced_partition(n, 2);  // s = 30
  std::vector<double> x(n, 0.0), h(n, 1.0);
  CHECK_THROWS_AS(verify_eso(f, part, 15, x, h), BudgetError);
}
