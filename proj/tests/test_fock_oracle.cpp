#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bosonic_capacity/fock_oracle.hpp"
#include "oracles.hpp"

namespace {

namespace fock = bcap::fock;
constexpr double kLn2 = std::numbers::ln2;

TEST(TruncatedLnPartition, Examples) {
  EXPECT_NEAR(fock::truncated_ln_partition(1.0, kLn2, fock::select_n_max(1.0, kLn2)), kLn2, 1e-10);
  const double v = fock::truncated_ln_partition(1.0, 5.0, fock::select_n_max(1.0, 5.0));
  EXPECT_NEAR(v, 0.0067607494494886, 1e-12);
  EXPECT_NEAR(v, -std::log1p(-std::exp(-5.0)), 1e-12);
  EXPECT_THROW(fock::truncated_ln_partition(1.0, kLn2, 3), bcap::TruncationError);
}

TEST(TruncatedLnPartition, DomainErrors) {
  EXPECT_THROW(fock::truncated_ln_partition(0.0, 1.0, 10), bcap::DomainError);
  EXPECT_THROW(fock::truncated_ln_partition(1.0, -1.0, 10), bcap::DomainError);
}

TEST(SelectNMax, IsTheSmallestAcceptedCutoff) {
  for (double x : {0.01, 0.5, 3.0, 40.0}) {
    const std::size_t n = fock::select_n_max(1.0, x);
    EXPECT_NO_THROW(fock::truncated_ln_partition(1.0, x, n));
    if (n > 0) {
      EXPECT_THROW(fock::truncated_ln_partition(1.0, x, n - 1), bcap::TruncationError);
    }
  }
}

TEST(TruncatedEntropy, Examples) {
  EXPECT_NEAR(fock::truncated_entropy(fock::make_truncated_thermal(1.0, kLn2)), 2.0, 1e-10);
  EXPECT_NEAR(fock::truncated_entropy(fock::make_truncated_thermal(1.0, 700.0)), 0.0, 1e-12);
  const double beta = std::log1p(1.0 / 1.25);
  EXPECT_NEAR(fock::truncated_entropy(fock::make_truncated_thermal(1.0, beta)), 2.229921134636,
              1e-10);
}

TEST(TruncatedThermalState, NormalizedWithThermalMean) {
  const auto t = fock::make_truncated_thermal(0.7, 0.9);
  double total = 0.0;
  for (double p : t.probabilities) total += p;
  EXPECT_NEAR(total, 1.0, 1e-14);
  EXPECT_NEAR(fock::mean_occupancy(t.probabilities), 1.0 / std::expm1(0.63), 1e-10);
}

TEST(TruncatedThermalState, MatchesClosedFormsOnRandomPairs) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> lognu(std::log(0.05), std::log(20.0));
  std::uniform_real_distribution<double> logx(std::log(0.02), std::log(30.0));
  for (int i = 0; i < 100; ++i) {
    const double nu = std::exp(lognu(rng));
    const double beta = std::exp(logx(rng)) / nu;
    const auto t = fock::make_truncated_thermal(nu, beta);
    const double ln_z = -std::log(-std::expm1(-beta * nu));
    EXPECT_NEAR(fock::truncated_ln_partition(nu, beta, t.n_max), ln_z, 1e-9);
    const double occupancy = 1.0 / std::expm1(beta * nu);
    EXPECT_NEAR(fock::truncated_entropy(t), oracle::entropy_bits_direct(occupancy), 1e-9);
  }
}

TEST(Variational, UnitModeTenThousandTrials) {
  const auto r = fock::variational_check(1.0, 1.0, 80, 10'000);
  EXPECT_TRUE(r.passed);
  EXPECT_NEAR(r.thermal_bits, 2.0, 1e-14);
  EXPECT_LE(r.max_sampled_bits, r.thermal_bits + 1e-9);
  EXPECT_GT(r.max_sampled_bits, r.thermal_bits - 1e-3);
  EXPECT_LT(r.skipped, r.trials / 10);
}

TEST(Variational, GridOfModesAndEnergies) {
  for (double nu : {0.5, 1.0, 2.0}) {
    for (double E : {0.5, 1.0, 5.0}) {
      const auto r = fock::variational_check(nu, E, 400, 2000);
      EXPECT_TRUE(r.passed) << nu << " " << E << " max " << r.max_sampled_bits;
      EXPECT_NEAR(r.thermal_bits, bcap::g(E / nu), 1e-14);
    }
  }
}

TEST(Variational, ZeroEnergyAllowsOnlyTheGroundState) {
  const auto r = fock::variational_check(1.0, 0.0, 20, 100);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.thermal_bits, 0.0);
  EXPECT_NEAR(r.max_sampled_bits, 0.0, 1e-12);
}

TEST(Variational, Deterministic) {
  const auto a = fock::variational_check(1.3, 2.0, 100, 500);
  const auto b = fock::variational_check(1.3, 2.0, 100, 500);
  EXPECT_EQ(a.max_sampled_bits, b.max_sampled_bits);
  EXPECT_EQ(a.skipped, b.skipped);
}

TEST(Variational, RejectsLadderBelowMean) {
  EXPECT_THROW(fock::variational_check(1.0, 5.0, 4, 10), bcap::TruncationError);
  EXPECT_THROW(fock::variational_check(1.0, 1.0, 0, 10), bcap::TruncationError);
  EXPECT_THROW(fock::variational_check(-1.0, 1.0, 10, 10), bcap::DomainError);
}

}  // namespace
