#pragma once

// Brute-force checks on a truncated photon-number ladder: partition functions
// and entropies by explicit summation, and a randomized test that no state
// obeying the energy constraint carries more entropy than the thermal one.
// Used to validate the closed forms in thermal.hpp.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "bosonic_capacity/errors.hpp"
#include "bosonic_capacity/thermal.hpp"

namespace bcap::fock {

namespace tolerances {
inline constexpr double tail_rel = 1e-12;
inline constexpr double feasibility = 1e-10;
inline constexpr double entropy_slack_bits = 1e-9;
}  // namespace tolerances

struct TruncatedThermal {
  double nu = 0.0;
  double beta = 0.0;
  std::size_t n_max = 0;
  std::vector<double> probabilities;
};

namespace detail {

inline void require_mode(double nu, double beta) {
  if (!(nu > 0.0) || !std::isfinite(nu)) throw DomainError("nu must be positive");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("beta must be positive");
}

// Geometric tail beyond n_max is below 1e-12 of the full partition sum.
inline bool tail_ok(double nu, double beta, std::size_t n_max) {
  const double x = beta * nu;
  const double log_tail = -x * static_cast<double>(n_max + 1);
  return log_tail < std::log(tolerances::tail_rel) + std::log(-std::expm1(-x));
}

inline void require_tail(double nu, double beta, std::size_t n_max) {
  if (!tail_ok(nu, beta, n_max)) {
    throw TruncationError("Fock ladder truncated at n_max=" + std::to_string(n_max) +
                          " leaves a geometric tail above 1e-12");
  }
}

}  // namespace detail

// Smallest n_max whose dropped geometric tail is below 1e-12 of the total.
inline std::size_t select_n_max(double nu, double beta) {
  detail::require_mode(nu, beta);
  const double x = beta * nu;
  const double bound = (-std::log(tolerances::tail_rel) - std::log(-std::expm1(-x))) / x;
  auto n = static_cast<std::size_t>(std::max(0.0, std::floor(bound - 1.0)));
  while (!detail::tail_ok(nu, beta, n)) ++n;
  while (n > 0 && detail::tail_ok(nu, beta, n - 1)) --n;
  return n;
}

inline double truncated_ln_partition(double nu, double beta, std::size_t n_max) {
  detail::require_mode(nu, beta);
  detail::require_tail(nu, beta, n_max);
  const double x = beta * nu;
  double excited = 0.0;
  for (std::size_t n = n_max; n > 0; --n) excited += std::exp(-x * static_cast<double>(n));
  return std::log1p(excited);
}

inline TruncatedThermal make_truncated_thermal(double nu, double beta, std::size_t n_max) {
  const double ln_z = truncated_ln_partition(nu, beta, n_max);
  TruncatedThermal t{nu, beta, n_max, std::vector<double>(n_max + 1)};
  for (std::size_t n = 0; n <= n_max; ++n) {
    t.probabilities[n] = std::exp(-beta * nu * static_cast<double>(n) - ln_z);
  }
  return t;
}

inline TruncatedThermal make_truncated_thermal(double nu, double beta) {
  return make_truncated_thermal(nu, beta, select_n_max(nu, beta));
}

inline double mean_occupancy(std::span<const double> probabilities) {
  double m = 0.0;
  for (std::size_t n = 0; n < probabilities.size(); ++n) m += static_cast<double>(n) * probabilities[n];
  return m;
}

inline double entropy_bits(std::span<const double> probabilities) {
  double s = 0.0;
  for (double p : probabilities)
    if (p > 0.0) s -= p * std::log(p);
  return s / ln2;
}

inline double truncated_entropy(const TruncatedThermal& t) {
  detail::require_tail(t.nu, t.beta, t.n_max);
  return entropy_bits(t.probabilities);
}

struct VariationalResult {
  bool passed = true;
  double thermal_bits = 0.0;
  double max_sampled_bits = 0.0;
  std::size_t trials = 0;
  // Samples that missed the constraint by more than 1e-10 and were not judged.
  std::size_t skipped = 0;
};

namespace detail {

// Mixes p with the ground state or the top rung so its mean occupancy is
// exactly `mean`. Mixing with an extreme point keeps p a distribution.
inline void mix_to_mean(std::vector<double>& p, double mean) {
  const double m = mean_occupancy(p);
  const auto top = static_cast<double>(p.size() - 1);
  if (m > mean) {
    const double keep = mean / m;
    for (double& v : p) v *= keep;
    p.front() += 1.0 - keep;
  } else if (m < mean) {
    const double t = (mean - m) / (top - m);
    for (double& v : p) v *= 1.0 - t;
    p.back() += t;
  }
}

// Removes from d its components along (1,...,1) and (0,1,...,n_max), so
// p + d keeps both the normalization and the mean occupancy.
inline void project_constraints(std::vector<double>& d) {
  const std::size_t len = d.size();
  std::vector<double> ones(len, 1.0);
  std::vector<double> ramp(len);
  std::iota(ramp.begin(), ramp.end(), 0.0);
  auto dot = [](const std::vector<double>& a, const std::vector<double>& b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
  };
  const double u1 = std::sqrt(dot(ones, ones));
  for (double& v : ones) v /= u1;
  const double r1 = dot(ramp, ones);
  for (std::size_t i = 0; i < len; ++i) ramp[i] -= r1 * ones[i];
  const double u2 = std::sqrt(dot(ramp, ramp));
  if (u2 > 0.0)
    for (double& v : ramp) v /= u2;
  const double c1 = dot(d, ones);
  const double c2 = u2 > 0.0 ? dot(d, ramp) : 0.0;
  for (std::size_t i = 0; i < len; ++i) d[i] -= c1 * ones[i] + c2 * ramp[i];
}

}  // namespace detail

// Samples n_trials distributions on the ladder 0..n_max with mean energy E and
// reports whether any of them beats the thermal entropy g(E/nu). Half of the
// samples are Dirichlet draws mixed onto the constraint; the other half are
// small constraint-preserving perturbations of the thermal distribution.
inline VariationalResult variational_check(double nu, double E, std::size_t n_max,
                                           std::size_t n_trials, std::uint64_t seed = 20240601) {
  if (!(nu > 0.0) || !std::isfinite(nu)) throw DomainError("nu must be positive");
  if (!(E >= 0.0) || !std::isfinite(E)) throw DomainError("energy must be nonnegative");
  if (n_max == 0) throw TruncationError("the ladder needs at least two rungs");

  VariationalResult result;
  result.trials = n_trials;
  const double mean = E / nu;
  if (mean >= static_cast<double>(n_max)) {
    throw TruncationError("mean occupancy does not fit below n_max");
  }
  std::mt19937_64 rng(seed);

  if (E == 0.0) {
    // Only the ground state meets the constraint.
    for (std::size_t trial = 0; trial < n_trials; ++trial) {
      std::vector<double> p(n_max + 1);
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      for (double& v : p) v = unit(rng);
      const double total = std::accumulate(p.begin(), p.end(), 0.0);
      for (double& v : p) v /= total;
      detail::mix_to_mean(p, 0.0);
      result.max_sampled_bits = std::max(result.max_sampled_bits, entropy_bits(p));
    }
    result.passed = result.max_sampled_bits <= tolerances::entropy_slack_bits;
    return result;
  }

  const double beta = std::log1p(1.0 / mean) / nu;
  std::vector<double> base = make_truncated_thermal(nu, beta, n_max).probabilities;
  detail::mix_to_mean(base, mean);
  result.thermal_bits = g(mean);

  std::uniform_real_distribution<double> log_alpha(std::log(0.05), std::log(5.0));
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t trial = 0; trial < n_trials; ++trial) {
    std::vector<double> p(n_max + 1);
    if (trial % 2 == 0) {
      std::gamma_distribution<double> gamma(std::exp(log_alpha(rng)), 1.0);
      for (double& v : p) v = gamma(rng);
      const double total = std::accumulate(p.begin(), p.end(), 0.0);
      if (!(total > 0.0)) continue;
      for (double& v : p) v /= total;
      detail::mix_to_mean(p, mean);
    } else {
      std::vector<double> d(n_max + 1);
      for (double& v : d) v = normal(rng);
      detail::project_constraints(d);
      double norm = 0.0;
      for (double v : d) norm = std::max(norm, std::fabs(v));
      if (!(norm > 0.0)) continue;
      // Step of 1e-3 in max norm, shortened to stay inside the simplex.
      if (trial % 4 == 3)
        for (double& v : d) v = -v;
      double step = 1e-3 / norm;
      for (std::size_t n = 0; n <= n_max; ++n) {
        if (d[n] < 0.0) step = std::min(step, base[n] / -d[n]);
      }
      for (std::size_t n = 0; n <= n_max; ++n) p[n] = std::max(0.0, base[n] + step * d[n]);
    }
    const double total = std::accumulate(p.begin(), p.end(), 0.0);
    const double achieved = mean_occupancy(p);
    if (std::fabs(total - 1.0) > tolerances::feasibility ||
        std::fabs(achieved - mean) > tolerances::feasibility * std::max(1.0, mean)) {
      ++result.skipped;
      continue;
    }
    const double bits = entropy_bits(p);
    result.max_sampled_bits = std::max(result.max_sampled_bits, bits);
    if (bits > result.thermal_bits + tolerances::entropy_slack_bits) result.passed = false;
  }
  return result;
}

}  // namespace bcap::fock
