#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bosonic_capacity/numerics.hpp"
#include "oracles.hpp"

namespace {

using bcap::find_root;
using bcap::RootProblem;
using bcap::SymmetricMatrix;

TEST(FindRoot, SquareRootOfTwo) {
  const double r = find_root({[](double x) { return x * x - 2.0; }, 1.0, 2.0});
  EXPECT_NEAR(r, std::numbers::sqrt2, 1e-12);
}

TEST(FindRoot, LogTwo) {
  const double r = find_root({[](double x) { return std::exp(x) - 2.0; }, 0.0, 1.0});
  EXPECT_NEAR(r, std::numbers::ln2, 1e-12);
}

TEST(FindRoot, NoSignChange) {
  EXPECT_THROW(find_root({[](double x) { return x - 5.0; }, 1.0, 2.0}), bcap::NoSignChange);
}

TEST(FindRoot, NoConvergenceWhenIterationsExhausted) {
  RootProblem p{[](double x) { return std::atan(x - 0.3); }, -10.0, 1000.0, 1e-15, 3};
  EXPECT_THROW(find_root(p), bcap::NoConvergence);
}

TEST(FindRoot, Deterministic) {
  RootProblem p{[](double x) { return std::cos(x) - x; }, 0.0, 1.0};
  EXPECT_EQ(find_root(p), find_root(p));
}

TEST(FindRoot, BrentAndBisectionAgreeOnMonotoneObjectives) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> root(0.1, 9.9);
  std::uniform_real_distribution<double> slope(0.01, 100.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double r0 = root(rng);
    const double k = slope(rng);
    RootProblem p{[=](double x) { return std::tanh(k * (x - r0)) + 1e-3 * (x - r0); }, 0.05,
                  10.0};
    const double brent = find_root(p);
    const double bisect = bcap::find_root_bisection(p);
    EXPECT_LE(std::fabs(brent - bisect), 2.0 * p.tol_abs + 4e-15 * r0) << "trial " << trial;
    EXPECT_GE(brent, p.bracket_lo);
    EXPECT_LE(brent, p.bracket_hi);
  }
}

TEST(ExpandBracket, FindsSignChangeOnEitherSide) {
  auto f = [](double x) { return std::log(x / 1234.5); };
  const auto [lo, hi] = bcap::expand_bracket(f, 1e-3);
  EXPECT_LE(lo, 1234.5);
  EXPECT_GE(hi, 1234.5);
  const auto [lo2, hi2] = bcap::expand_bracket(f, 1e9);
  EXPECT_LE(lo2, 1234.5);
  EXPECT_GE(hi2, 1234.5);
}

TEST(Quadrature, NegativeLogOnUnitInterval) {
  const double v = bcap::integrate_log_singular([](double x) { return -std::log(x); }, 0.0, 1.0,
                                                1e-10);
  EXPECT_NEAR(v, 1.0, 1e-9);
}

TEST(Quadrature, SmoothIntegrand) {
  EXPECT_NEAR(bcap::integrate_log_singular([](double x) { return x; }, 0.0, 1.0), 0.5, 1e-14);
}

TEST(Quadrature, RejectsBadLimits) {
  EXPECT_THROW(bcap::integrate_log_singular([](double x) { return x; }, 1.0, 0.0),
               bcap::DomainError);
}

TEST(Quadrature, NonFiniteIntegrand) {
  EXPECT_THROW(bcap::integrate_log_singular([](double x) { return 1.0 / x; }, 0.0, 1.0),
               bcap::NonFinite);
}

TEST(BoseLogIntegral, FullLineIsZetaTwo) {
  // The tail past the cutoff is below e^-60, far under double resolution.
  const double exact = std::numbers::pi * std::numbers::pi / 6.0;
  EXPECT_NEAR(bcap::bose_log_integral(0.0, 1e4), exact, 1e-13);
  // Independent check: a fixed grid on a truncated domain [0, 40] plus the
  // analytic tail bound Li2(e^-40) < 2 e^-40.
  const double truncated = oracle::bose_integral_fixed_grid(40.0);
  EXPECT_NEAR(truncated, exact, 1e-10 + 2.0 * std::exp(-40.0));
}

TEST(BoseLogIntegral, MatchesFixedGridOracle) {
  for (double beta : {0.1, 1.0, 10.0, 100.0}) {
    const double oracle_value = oracle::bose_integral_fixed_grid(beta);
    const double v = bcap::bose_log_integral(0.0, beta);
    EXPECT_NEAR(v, oracle_value, 1e-10 * oracle_value) << "beta=" << beta;
  }
}

TEST(BoseLogIntegral, MatchesDilogarithmOnSubintervals) {
  const double points[][2] = {{0.0, 1e-4}, {1e-4, 2e-3}, {0.3, 0.7}, {2.5, 11.0}, {0.0, 0.0005}};
  for (const auto& pt : points) {
    const double expected = oracle::bose_integral_dilog(pt[0], pt[1]);
    EXPECT_NEAR(bcap::bose_log_integral(pt[0], pt[1]), expected, 1e-12 * (1.0 + expected))
        << pt[0] << " " << pt[1];
  }
}

TEST(SymmetricMatrix, RejectsAsymmetricInput) {
  EXPECT_THROW(SymmetricMatrix::from_rows({{0, 1}, {2, 0}}), bcap::DomainError);
  EXPECT_THROW(SymmetricMatrix::from_rows({{0, 1}}), bcap::DomainError);
}

TEST(SymmetricEigenvalues, TwoByTwoCoupling) {
  const auto ev = bcap::symmetric_eigenvalues(SymmetricMatrix::from_rows({{0, 0.5}, {0.5, 0}}));
  ASSERT_EQ(ev.size(), 2u);
  EXPECT_NEAR(ev[0], -0.5, 1e-14);
  EXPECT_NEAR(ev[1], 0.5, 1e-14);
}

TEST(SymmetricEigenvalues, Identity) {
  for (double v : bcap::symmetric_eigenvalues(SymmetricMatrix::identity(3))) EXPECT_EQ(v, 1.0);
}

TEST(SymmetricEigenvalues, AllOnesMinusIdentity) {
  // det(J - I - t I) = -(t + 1)^2 (t - 2): roots -1, -1, 2.
  const auto ev =
      bcap::symmetric_eigenvalues(SymmetricMatrix::from_rows({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}));
  EXPECT_NEAR(ev[0], -1.0, 1e-13);
  EXPECT_NEAR(ev[1], -1.0, 1e-13);
  EXPECT_NEAR(ev[2], 2.0, 1e-13);
}

TEST(SymmetricEigenvalues, TracePreservedOnRandomMatrices) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  for (std::size_t n = 1; n <= 16; ++n) {
    for (int rep = 0; rep < 5; ++rep) {
      SymmetricMatrix m(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) m.set(i, j, entry(rng));
      const auto ev = bcap::symmetric_eigenvalues(m);
      double sum = 0.0;
      for (double v : ev) sum += v;
      EXPECT_LE(std::fabs(sum - m.trace()), 1e-10 * (1.0 + std::fabs(m.trace())));
      EXPECT_TRUE(std::is_sorted(ev.begin(), ev.end()));
      // Sum of squared eigenvalues is the squared Frobenius norm.
      double sq = 0.0;
      for (double v : ev) sq += v * v;
      EXPECT_NEAR(sq, m.frobenius_norm() * m.frobenius_norm(), 1e-10 * (1.0 + sq));
    }
  }
}

TEST(SymmetricEigenvalues, TridiagonalAgainstClosedForm) {
  // Path-graph adjacency: eigenvalues 2 cos(k pi / (n + 1)).
  const std::size_t n = 12;
  SymmetricMatrix m(n);
  for (std::size_t i = 0; i + 1 < n; ++i) m.set(i, i + 1, 1.0);
  const auto ev = bcap::symmetric_eigenvalues(m);
  std::vector<double> expected;
  for (std::size_t k = 1; k <= n; ++k) {
    expected.push_back(2.0 * std::cos(static_cast<double>(k) * std::numbers::pi / (n + 1.0)));
  }
  std::sort(expected.begin(), expected.end());
  for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(ev[i], expected[i], 1e-12);
}

}  // namespace
