#pragma once

// Energy-constrained entropy maximization over independent bosonic modes.
//
// Units: hbar = 1 and every frequency is measured in a caller-chosen
// reference frequency, so energies are in units of hbar * omega_ref and the
// inverse temperature `beta` is dimensionless.

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "bosonic_capacity/errors.hpp"
#include "bosonic_capacity/numerics.hpp"

namespace bcap {

inline constexpr double ln2 = std::numbers::ln2;

// Nonempty list of strictly positive, finite mode frequencies.
class ModeSpectrum {
 public:
  explicit ModeSpectrum(std::vector<double> frequencies) : frequencies_(std::move(frequencies)) {
    if (frequencies_.empty()) throw DomainError("mode spectrum must be nonempty");
    for (double nu : frequencies_) {
      if (!std::isfinite(nu)) throw DomainError("mode frequencies must be finite");
      if (!(nu > 0.0)) {
        throw PositivityError("mode frequencies must be strictly positive, got " +
                              std::to_string(nu));
      }
    }
  }

  std::span<const double> frequencies() const { return frequencies_; }
  std::size_t size() const { return frequencies_.size(); }
  double operator[](std::size_t k) const { return frequencies_[k]; }

 private:
  std::vector<double> frequencies_;
};

struct ThermalSolution {
  double beta = std::numeric_limits<double>::infinity();
  double energy = 0.0;
  double ln_z = 0.0;
  double capacity_bits = 0.0;
  std::vector<double> occupancies;
};

struct Allocation {
  std::vector<double> energies;
  double total = 0.0;
};

struct OptimalAllocation {
  Allocation allocation;
  ThermalSolution thermal;
};

// Entropy in bits of one bosonic mode with mean occupancy x.
inline double g(double x) {
  if (!std::isfinite(x) || x < 0.0) {
    throw DomainError("g(x) requires a finite x >= 0, got " + std::to_string(x));
  }
  if (x == 0.0) return 0.0;
  if (x < 1e-200) return (x - x * std::log(x)) / ln2;
  return (std::log1p(x) + x * std::log1p(1.0 / x)) / ln2;
}

namespace detail {

inline void require_positive_beta(double beta) {
  if (!(beta > 0.0) || std::isnan(beta)) {
    throw DomainError("beta must be positive, got " + std::to_string(beta));
  }
}

inline double occupancy(double beta, double nu) { return 1.0 / std::expm1(beta * nu); }

// ln of sum_k nu_k / (e^{beta nu_k} - 1), finite even where the sum underflows.
inline double log_energy(std::span<const double> nu, double beta) {
  std::vector<double> terms(nu.size());
  double peak = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < nu.size(); ++k) {
    const double x = beta * nu[k];
    terms[k] = std::log(nu[k]) - x - std::log(-std::expm1(-x));
    peak = std::max(peak, terms[k]);
  }
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - peak);
  return peak + std::log(sum);
}

}  // namespace detail

inline double ln_partition(const ModeSpectrum& s, double beta) {
  detail::require_positive_beta(beta);
  double sum = 0.0;
  for (double nu : s.frequencies()) sum += bose_log(beta * nu);
  return sum;
}

inline double energy_at(const ModeSpectrum& s, double beta) {
  detail::require_positive_beta(beta);
  double sum = 0.0;
  for (double nu : s.frequencies()) sum += nu * detail::occupancy(beta, nu);
  return sum;
}

// Solves energy_at(s, beta) = E for beta and evaluates the capacity
// (beta E + ln Z) / ln 2 of the resulting thermal state.
inline ThermalSolution solve_thermal(const ModeSpectrum& s, double E) {
  if (!std::isfinite(E) || E < 0.0) {
    throw DomainError("energy must be finite and nonnegative, got " + std::to_string(E));
  }
  ThermalSolution sol;
  sol.energy = E;
  sol.occupancies.assign(s.size(), 0.0);
  if (E == 0.0) return sol;

  // ln(energy) is strictly decreasing in ln(beta); solving in log space
  // keeps the tolerance relative across many decades of temperature.
  const double log_target = std::log(E);
  auto residual = [&](double beta) {
    return detail::log_energy(s.frequencies(), beta) - log_target;
  };
  const auto [lo, hi] = expand_bracket(residual, static_cast<double>(s.size()) / E);
  RootProblem problem{[&](double u) { return residual(std::exp(u)); }, std::log(lo),
                      std::log(hi), 1e-15};
  sol.beta = std::exp(find_root(problem));
  sol.ln_z = ln_partition(s, sol.beta);
  sol.capacity_bits = (sol.beta * E + sol.ln_z) / ln2;
  for (std::size_t k = 0; k < s.size(); ++k) {
    sol.occupancies[k] = detail::occupancy(sol.beta, s[k]);
  }
  return sol;
}

// Sum over modes of g(e_j / nu_j) for an arbitrary energy split.
inline double mode_sum_capacity(const ModeSpectrum& s, std::span<const double> energies) {
  if (energies.size() != s.size()) throw DomainError("one energy per mode is required");
  double bits = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) bits += g(energies[k] / s[k]);
  return bits;
}

inline double narrowband_capacity(double omega, double E) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw DomainError("omega must be positive, got " + std::to_string(omega));
  }
  if (!std::isfinite(E) || E < 0.0) {
    throw DomainError("energy must be finite and nonnegative, got " + std::to_string(E));
  }
  return g(E / omega);
}

// Square-root law for an infinite comb k * delta_omega, valid for E >> delta_omega.
inline double wideband_capacity_closed(double E, double delta_omega) {
  if (!(E > 0.0) || !(delta_omega > 0.0) || !std::isfinite(E) || !std::isfinite(delta_omega)) {
    throw DomainError("wideband capacity needs positive energy and spacing");
  }
  return std::numbers::pi / ln2 * std::sqrt(2.0 * E / (3.0 * delta_omega));
}

// Bits per unit time at power P, with transmission time 2 pi / delta_omega.
inline double rate_from_power(double P) {
  if (!(P > 0.0) || !std::isfinite(P)) {
    throw DomainError("power must be positive, got " + std::to_string(P));
  }
  return std::sqrt(std::numbers::pi * P / 3.0) / ln2;
}

inline OptimalAllocation optimal_allocation(const ModeSpectrum& s, double E) {
  if (!(E > 0.0)) throw DomainError("allocation needs a positive total energy");
  OptimalAllocation out;
  out.thermal = solve_thermal(s, E);
  out.allocation.energies.resize(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) {
    const double e = s[k] * out.thermal.occupancies[k];
    out.allocation.energies[k] = e;
    out.allocation.total += e;
  }
  return out;
}

// --- Equispaced combs ------------------------------------------------------
//
// A comb branch with spacing s holds the modes k*s, k = 1, 2, ... The infinite
// sum is truncated per branch once the next mode carries less than 1e-12 of
// the total energy.

namespace tolerances {
inline constexpr double comb_tail_rel = 1e-12;
}

// Number of modes to keep on a branch of the given spacing at inverse
// temperature beta so the first dropped mode holds < comb_tail_rel * E.
inline std::size_t comb_cutoff(double spacing, double beta, double E) {
  detail::require_positive_beta(beta);
  // Mode energy is (1/beta) x/(e^x - 1) with x = beta * nu, decreasing in x.
  const double target = tolerances::comb_tail_rel * E * beta;
  if (target >= 1.0) return 1;
  auto log_expm1 = [](double x) {
    return x > 1.0 ? x + std::log1p(-std::exp(-x)) : std::log(std::expm1(x));
  };
  auto excess = [&](double x) { return std::log(x) - log_expm1(x) - std::log(target); };
  const double x_cut = find_root({excess, 1e-300, 1e6, 1e-9});
  const double modes = std::ceil(x_cut / (beta * spacing));
  if (modes > 5e8) throw DomainError("comb truncation needs more than 5e8 modes");
  return std::max<std::size_t>(1, static_cast<std::size_t>(modes));
}

inline ModeSpectrum comb_spectrum(std::span<const double> spacings,
                                  std::span<const std::size_t> counts) {
  if (spacings.size() != counts.size() || spacings.empty()) {
    throw DomainError("one mode count per comb branch is required");
  }
  std::vector<double> freqs;
  for (std::size_t b = 0; b < spacings.size(); ++b) {
    for (std::size_t k = 1; k <= counts[b]; ++k) freqs.push_back(static_cast<double>(k) * spacings[b]);
  }
  return ModeSpectrum(std::move(freqs));
}

struct CombSolution {
  ThermalSolution thermal;
  std::vector<std::size_t> counts;
};

// Thermal solution on a union of equispaced combs at total energy E, with
// each branch truncated by the occupancy-tail rule at the solved beta.
inline CombSolution solve_comb(std::span<const double> spacings, double E) {
  if (spacings.empty()) throw DomainError("at least one comb branch is required");
  if (!(E > 0.0) || !std::isfinite(E)) throw DomainError("comb energy must be positive");
  double inverse_sum = 0.0;
  for (double s : spacings) {
    if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("comb spacing must be positive");
    inverse_sum += 1.0 / s;
  }
  // High-temperature estimate E = pi^2 / (6 beta^2) * sum 1/s, halved so the
  // first truncation is generous.
  double beta = 0.5 * std::numbers::pi * std::sqrt(inverse_sum / (6.0 * E));

  CombSolution out;
  out.counts.assign(spacings.size(), 0);
  for (int pass = 0; pass < 64; ++pass) {
    bool grown = false;
    for (std::size_t b = 0; b < spacings.size(); ++b) {
      const std::size_t need = comb_cutoff(spacings[b], beta, E);
      if (need > out.counts[b]) {
        out.counts[b] = need;
        grown = true;
      }
    }
    if (!grown) return out;
    out.thermal = solve_thermal(comb_spectrum(spacings, out.counts), E);
    beta = out.thermal.beta;
  }
  throw NoConvergence("comb truncation did not stabilize");
}

// Capacity of the comb k * delta_omega computed by direct summation.
inline double wideband_capacity_numeric(double E, double delta_omega) {
  const double spacing[] = {delta_omega};
  return solve_comb(spacing, E).thermal.capacity_bits;
}

}  // namespace bcap
