#pragma once

// Effective free-field spectra of quadratic nonlinear Hamiltonians. After the
// canonical (Bogoliubov or orthogonal) transformation each Hamiltonian is a
// sum of independent modes, so the nonlinearity enters the capacity only
// through the shifted mode frequencies.
//
// Ground-state shifts are kept for energy bookkeeping; they are constants in
// the Hamiltonian and never contribute to a capacity.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "bosonic_capacity/errors.hpp"
#include "bosonic_capacity/numerics.hpp"
#include "bosonic_capacity/thermal.hpp"

namespace bcap {

namespace detail {

inline void require_subcritical(double omega, double xi) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw DomainError("omega must be positive, got " + std::to_string(omega));
  }
  if (!std::isfinite(xi) || !(std::fabs(xi) < omega)) {
    throw DomainError("coupling must satisfy |xi| < omega (Hamiltonian bounded below), got xi=" +
                      std::to_string(xi) + " omega=" + std::to_string(omega));
  }
}

inline void require_energy(double E) {
  if (!std::isfinite(E) || E < 0.0) {
    throw DomainError("energy must be finite and nonnegative, got " + std::to_string(E));
  }
}

}  // namespace detail

// Single-mode squeezing: omega a^dag a + (xi/2)(a^dag^2 + a^2).
class SqueezeChannel {
 public:
  SqueezeChannel(double omega, double xi) : omega_(omega), xi_(xi) {
    detail::require_subcritical(omega, xi);
  }

  double omega() const { return omega_; }
  double xi() const { return xi_; }
  // Bogoliubov angle of a = A cosh(theta) - A^dag sinh(theta).
  double theta() const { return 0.25 * std::log((omega_ + xi_) / (omega_ - xi_)); }
  double nu_eff() const { return std::sqrt((omega_ - xi_) * (omega_ + xi_)); }
  double ground_shift() const { return 0.5 * (omega_ - nu_eff()); }

 private:
  double omega_;
  double xi_;
};

// Degenerate two-mode down-conversion: omega (a^dag a + b^dag b) + xi (a^dag b^dag + a b).
class PdcPair {
 public:
  PdcPair(double omega, double xi) : omega_(omega), xi_(xi) {
    detail::require_subcritical(omega, xi);
  }

  double omega() const { return omega_; }
  double xi() const { return xi_; }
  double theta() const { return 0.25 * std::log((omega_ + xi_) / (omega_ - xi_)); }
  double nu_eff() const { return std::sqrt((omega_ - xi_) * (omega_ + xi_)); }
  double ground_shift() const { return omega_ - nu_eff(); }

 private:
  double omega_;
  double xi_;
};

inline double squeeze_capacity(const SqueezeChannel& ch, double E) {
  detail::require_energy(E);
  return g(E / ch.nu_eff());
}

inline double squeeze_gain(const SqueezeChannel& ch, double E) {
  return squeeze_capacity(ch, E) - narrowband_capacity(ch.omega(), E);
}

inline double pdc2_capacity(const PdcPair& ch, double E) {
  detail::require_energy(E);
  return 2.0 * g(E / (2.0 * ch.nu_eff()));
}

inline double pdc2_gain(const PdcPair& ch, double E) {
  detail::require_energy(E);
  return pdc2_capacity(ch, E) - 2.0 * g(E / (2.0 * ch.omega()));
}

// N equal-frequency modes with hopping matrix Lambda (symmetric, zero
// diagonal). The normal modes have frequencies omega + lambda_j.
class SwapNetwork {
 public:
  SwapNetwork(double omega, SymmetricMatrix coupling)
      : omega_(omega), coupling_(std::move(coupling)) {
    if (!(omega > 0.0) || !std::isfinite(omega)) {
      throw DomainError("omega must be positive, got " + std::to_string(omega));
    }
    const std::size_t n = coupling_.size();
    if (n < 2) throw DomainError("a swap network needs at least two modes");
    for (std::size_t i = 0; i < n; ++i) {
      if (coupling_(i, i) != 0.0) throw DomainError("swap coupling must have a zero diagonal");
    }
    eigenvalues_ = symmetric_eigenvalues(coupling_);
    double trace = 0.0;
    for (double l : eigenvalues_) trace += l;
    if (std::fabs(trace) > 1e-10 * (1.0 + coupling_.frobenius_norm())) {
      throw NoConvergence("coupling eigenvalues do not preserve the zero trace");
    }
    if (omega_ + eigenvalues_.front() <= 0.0) {
      throw PositivityError("swap network has a nonpositive normal-mode frequency omega + lambda = " +
                            std::to_string(omega_ + eigenvalues_.front()));
    }
  }

  // Two modes coupled by xi; eigenvalues are -|xi| and +|xi|.
  static SwapNetwork pair(double omega, double xi) {
    SymmetricMatrix m(2);
    m.set(0, 1, xi);
    return SwapNetwork(omega, std::move(m));
  }

  std::size_t n_modes() const { return coupling_.size(); }
  double omega() const { return omega_; }
  const SymmetricMatrix& coupling() const { return coupling_; }
  const std::vector<double>& eigenvalues() const { return eigenvalues_; }

 private:
  double omega_;
  SymmetricMatrix coupling_;
  std::vector<double> eigenvalues_;
};

inline ModeSpectrum swap_spectrum(const SwapNetwork& net) {
  std::vector<double> freqs;
  freqs.reserve(net.n_modes());
  for (double l : net.eigenvalues()) freqs.push_back(net.omega() + l);
  return ModeSpectrum(std::move(freqs));
}

inline double swap_capacity(const SwapNetwork& net, double E) {
  detail::require_energy(E);
  if (E == 0.0) return 0.0;
  return optimal_allocation(swap_spectrum(net), E).thermal.capacity_bits;
}

// Capacity gain over N uncoupled modes sharing E equally.
inline double swap_gain(const SwapNetwork& net, double E) {
  detail::require_energy(E);
  const auto n = static_cast<double>(net.n_modes());
  return swap_capacity(net, E) - n * g(E / (n * net.omega()));
}

// N parallel wideband combs whose same-frequency modes are coupled so that
// N-1 normal-mode branches contract by (1 - r) and the last stretches by
// 1 + (N-1) r. n_modes = 1 is accepted as the uncoupled single comb.
class BroadbandSwapConfig {
 public:
  BroadbandSwapConfig(std::size_t n_modes, double r, double delta_omega)
      : n_modes_(n_modes), r_(r), delta_omega_(delta_omega) {
    if (n_modes == 0) throw DomainError("broadband swap needs at least one mode");
    if (!(r >= 0.0 && r < 1.0)) {
      throw DomainError("r must lie in [0, 1), got " + std::to_string(r));
    }
    if (!(delta_omega > 0.0) || !std::isfinite(delta_omega)) {
      throw DomainError("delta_omega must be positive");
    }
  }

  std::size_t n_modes() const { return n_modes_; }
  double r() const { return r_; }
  double delta_omega() const { return delta_omega_; }
  double contraction() const { return 1.0 - r_; }
  double stretch() const { return 1.0 + static_cast<double>(n_modes_ - 1) * r_; }

  // Mode spacing of each normal-mode branch.
  std::vector<double> branch_spacings() const {
    if (n_modes_ == 1) return {delta_omega_};
    std::vector<double> s(n_modes_ - 1, contraction() * delta_omega_);
    s.push_back(stretch() * delta_omega_);
    return s;
  }

 private:
  std::size_t n_modes_;
  double r_;
  double delta_omega_;
};

inline ModeSpectrum broadband_swap_spectrum(const BroadbandSwapConfig& cfg, std::size_t k_max) {
  if (k_max < 1) throw DomainError("k_max must be at least 1");
  const std::vector<double> spacings = cfg.branch_spacings();
  const std::vector<std::size_t> counts(spacings.size(), k_max);
  std::vector<double> freqs;
  for (double s : spacings)
    for (std::size_t k = 1; k <= k_max; ++k) freqs.push_back(static_cast<double>(k) * s);
  std::sort(freqs.begin(), freqs.end());
  return ModeSpectrum(std::move(freqs));
}

inline double broadband_swap_capacity(const BroadbandSwapConfig& cfg, double E) {
  if (!(E > 0.0)) throw DomainError("broadband swap capacity needs positive energy");
  return solve_comb(cfg.branch_spacings(), E).thermal.capacity_bits;
}

// Reference curves for the broadband swap: sqrt(N) C_wb for N independent
// combs, and sqrt((N-1)/(1-r)) C_wb and (N-1)/(1-r) C_wb for the contracted
// branches.
struct SwapbandReferences {
  double sqrt_n_cwb;
  double sqrt_contracted_cwb;
  double linear_contracted_cwb;
};

inline SwapbandReferences broadband_swap_references(const BroadbandSwapConfig& cfg, double E) {
  const double cwb = wideband_capacity_closed(E, cfg.delta_omega());
  const auto n = static_cast<double>(cfg.n_modes());
  const double contracted = (n - 1.0) / cfg.contraction();
  return {std::sqrt(n) * cwb, std::sqrt(contracted) * cwb, contracted * cwb};
}

}  // namespace bcap
