#pragma once

// Broadband parametric down-conversion with a top-hat coupling: signal and
// idler combs up to the pump frequency omega_p, coupled with constant strength
// xi over the band |omega - omega_p/2| < zeta omega_p / 2.
//
// Three routes to the capacity are provided:
//   - exact_capacity: continuum ln Z as three Bose log integrals, root-solved
//     for the Lagrange multiplier;
//   - perturbative_capacity: first order in eps = 4 xi^2 / omega_p^2, through
//     f0, f1 and the zeroth-order multiplier beta0;
//   - discrete_capacity: the mode sum itself on the comb k * delta_omega.
//
// The dimensionless energy is gamma = E delta_omega / (2 omega_p^2).

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "bosonic_capacity/errors.hpp"
#include "bosonic_capacity/numerics.hpp"
#include "bosonic_capacity/thermal.hpp"

namespace bcap {

namespace tolerances {
// Above this eps the second-order terms are no longer negligible.
inline constexpr double pdc_eps_warn = 0.1;
// Perturbative evaluation is refused at or above this eps.
inline constexpr double pdc_eps_max = 0.5;
}  // namespace tolerances

class PdcBroadband {
 public:
  PdcBroadband(double omega_p, double delta_omega, double zeta, double xi)
      : omega_p_(omega_p), delta_omega_(delta_omega), zeta_(zeta), xi_(xi) {
    if (!(omega_p > 0.0) || !std::isfinite(omega_p)) throw DomainError("omega_p must be positive");
    if (!(delta_omega > 0.0) || !std::isfinite(delta_omega)) {
      throw DomainError("delta_omega must be positive");
    }
    if (!(zeta > 0.0 && zeta < 1.0)) {
      throw DomainError("zeta must lie in (0, 1), got " + std::to_string(zeta));
    }
    if (!(xi >= 0.0) || !std::isfinite(xi)) {
      throw DomainError("xi must be finite and nonnegative, got " + std::to_string(xi));
    }
    if (!(epsilon() < 1.0 - zeta * zeta)) {
      throw PositivityError("eps = 4 xi^2/omega_p^2 must stay below 1 - zeta^2 so the lowest "
                            "coupled frequency is positive, got eps=" +
                            std::to_string(epsilon()));
    }
  }

  double omega_p() const { return omega_p_; }
  double delta_omega() const { return delta_omega_; }
  double zeta() const { return zeta_; }
  double xi() const { return xi_; }

  double epsilon() const { return 4.0 * xi_ * xi_ / (omega_p_ * omega_p_); }
  // [omega_p - sqrt(omega_p^2 - 4 xi^2)] / 2, written without cancellation.
  double ground_shift() const {
    return 2.0 * xi_ * xi_ / (omega_p_ + std::sqrt((omega_p_ - 2.0 * xi_) * (omega_p_ + 2.0 * xi_)));
  }
  double gamma(double E) const { return E * delta_omega_ / (2.0 * omega_p_ * omega_p_); }
  // Signal plus idler mode count below omega_p; the prefactor of ln Z.
  double mode_density() const { return 2.0 * omega_p_ / delta_omega_; }

  double band_lo() const { return 0.5 * omega_p_ * (1.0 - zeta_); }
  double band_hi() const { return 0.5 * omega_p_ * (1.0 + zeta_); }

 private:
  double omega_p_;
  double delta_omega_;
  double zeta_;
  double xi_;
};

struct PerturbativeSolution {
  double beta0 = 0.0;
  double beta1 = 0.0;
  double c0_bits = 0.0;
  double c1_bits = 0.0;
  // Set when eps >= 0.1.
  bool strong_coupling = false;
};

struct PerturbativeCapacity {
  double bits = 0.0;
  PerturbativeSolution solution;
};

namespace detail {

inline void require_beta(double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw DomainError("beta must be positive and finite, got " + std::to_string(beta));
  }
}

inline void require_zeta(double zeta) {
  if (!(zeta >= 0.0 && zeta < 1.0)) {
    throw DomainError("zeta must lie in [0, 1), got " + std::to_string(zeta));
  }
}

inline void require_positive_energy(double E) {
  if (!(E > 0.0) || !std::isfinite(E)) {
    throw DomainError("energy must be positive and finite, got " + std::to_string(E));
  }
}

}  // namespace detail

// f0(beta) = (1/beta) * integral_0^beta ln[1/(1 - e^{-x})] dx.
inline double f0(double beta) {
  detail::require_beta(beta);
  return bose_log_integral(0.0, beta) / beta;
}

// Since beta f0 is an integral with upper limit beta, d f0/d beta follows
// from the integrand at beta without differentiating the quadrature.
inline double f0_derivative(double beta) {
  detail::require_beta(beta);
  return (bose_log(beta) - f0(beta)) / beta;
}

inline double f0_second_derivative(double beta) {
  detail::require_beta(beta);
  return (-1.0 / std::expm1(beta) - 2.0 * f0_derivative(beta)) / beta;
}

inline double f1(double beta, double zeta) {
  detail::require_beta(beta);
  detail::require_zeta(zeta);
  const double upper = 0.5 * (1.0 + zeta);
  const double lower = 0.5 * (1.0 - zeta);
  return 0.25 * (bose_log(beta * lower) - bose_log(beta * upper));
}

inline double f1_derivative(double beta, double zeta) {
  detail::require_beta(beta);
  detail::require_zeta(zeta);
  const double upper = 0.5 * (1.0 + zeta);
  const double lower = 0.5 * (1.0 - zeta);
  return 0.25 * (upper / std::expm1(beta * upper) - lower / std::expm1(beta * lower));
}

// Root of d f0/d beta = -gamma. The left side rises monotonically from -inf
// to 0, so the root is unique; for small gamma it approaches pi/sqrt(6 gamma).
inline double solve_beta0(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw DomainError("gamma must be positive, got " + std::to_string(gamma));
  }
  auto residual = [gamma](double beta) { return std::log(-f0_derivative(beta) / gamma); };
  const auto [lo, hi] = expand_bracket(residual, std::numbers::pi / std::sqrt(6.0 * gamma));
  RootProblem problem{[&](double u) { return residual(std::exp(u)); }, std::log(lo),
                      std::log(hi), 1e-15};
  return std::exp(find_root(problem));
}

inline double beta1_correction(double beta0, double zeta) {
  detail::require_beta(beta0);
  return -f1_derivative(beta0, zeta) / f0_second_derivative(beta0);
}

inline double c0(double gamma) {
  const double beta0 = solve_beta0(gamma);
  return (beta0 * gamma + f0(beta0)) / ln2;
}

inline double c1(double gamma, double zeta) { return f1(solve_beta0(gamma), zeta) / ln2; }

inline PerturbativeCapacity perturbative_capacity(const PdcBroadband& p, double E) {
  detail::require_positive_energy(E);
  const double eps = p.epsilon();
  if (!(eps < tolerances::pdc_eps_max)) {
    throw DomainError("perturbative expansion refused for eps >= 0.5, got eps=" +
                      std::to_string(eps));
  }
  const double gamma = p.gamma(E);
  PerturbativeCapacity out;
  PerturbativeSolution& s = out.solution;
  s.beta0 = solve_beta0(gamma);
  s.beta1 = beta1_correction(s.beta0, p.zeta());
  s.c0_bits = (s.beta0 * gamma + f0(s.beta0)) / ln2;
  s.c1_bits = f1(s.beta0, p.zeta()) / ln2;
  s.strong_coupling = eps >= tolerances::pdc_eps_warn;
  out.bits = p.mode_density() * (s.c0_bits + eps * s.c1_bits);
  return out;
}

namespace detail {

// One continuum segment of signal+idler modes with effective frequencies in
// [lo, hi] (after the ground shift), weighted by 2/delta_omega.
struct PdcSegment {
  double lo;
  double hi;
};

inline std::vector<PdcSegment> pdc_segments(const PdcBroadband& p) {
  const double shift = p.ground_shift();
  return {{0.0, p.band_lo()},
          {p.band_lo() - shift, p.band_hi() - shift},
          {p.band_hi(), p.omega_p()}};
}

// x * ln[1/(1 - e^{-x})] with its zero limit at x = 0.
inline double x_bose_log(double x) { return x == 0.0 ? 0.0 : x * bose_log(x); }

}  // namespace detail

inline double exact_ln_partition(const PdcBroadband& p, double lambda) {
  detail::require_beta(lambda);
  double sum = 0.0;
  for (const auto& seg : detail::pdc_segments(p)) {
    sum += bose_log_integral(lambda * seg.lo, lambda * seg.hi);
  }
  return 2.0 / p.delta_omega() * sum / lambda;
}

// -d ln Z / d lambda of the continuum partition function, segment-wise.
inline double exact_energy_at(const PdcBroadband& p, double lambda) {
  detail::require_beta(lambda);
  double sum = 0.0;
  for (const auto& seg : detail::pdc_segments(p)) {
    const double integral = bose_log_integral(lambda * seg.lo, lambda * seg.hi);
    const double boundary = detail::x_bose_log(lambda * seg.hi) - detail::x_bose_log(lambda * seg.lo);
    sum += (integral - boundary) / (lambda * lambda);
  }
  return 2.0 / p.delta_omega() * sum;
}

struct ExactPdcSolution {
  double lambda = 0.0;
  double ln_z = 0.0;
  double capacity_bits = 0.0;
};

inline ExactPdcSolution exact_solution(const PdcBroadband& p, double E) {
  detail::require_positive_energy(E);
  auto residual = [&](double lambda) { return std::log(exact_energy_at(p, lambda) / E); };
  const double guess = std::numbers::pi / std::sqrt(6.0 * p.gamma(E)) / p.omega_p();
  const auto [lo, hi] = expand_bracket(residual, guess);
  RootProblem problem{[&](double u) { return residual(std::exp(u)); }, std::log(lo),
                      std::log(hi), 1e-15};
  ExactPdcSolution out;
  out.lambda = std::exp(find_root(problem));
  out.ln_z = exact_ln_partition(p, out.lambda);
  out.capacity_bits = (out.lambda * E + out.ln_z) / ln2;
  return out;
}

inline double exact_capacity(const PdcBroadband& p, double E) {
  return exact_solution(p, E).capacity_bits;
}

// Signal modes k delta_omega - Omega_k and idler modes omega_p - k delta_omega
// - Omega_k for every k with 0 < k delta_omega < omega_p; Omega_k = Omega in
// the coupled band and 0 elsewhere.
inline ModeSpectrum discrete_spectrum(const PdcBroadband& p) {
  const double wp = p.omega_p();
  const double dw = p.delta_omega();
  auto k_max = static_cast<std::size_t>(std::floor(wp / dw));
  if (k_max > 0 && static_cast<double>(k_max) * dw >= wp * (1.0 - 1e-12)) --k_max;
  if (k_max == 0) throw DomainError("delta_omega must be smaller than omega_p");
  if (k_max > 50'000'000) throw DomainError("too many discrete modes");

  const double shift = p.ground_shift();
  const double half_band = 0.5 * p.zeta() * wp;
  std::vector<double> freqs;
  freqs.reserve(2 * k_max);
  for (std::size_t k = 1; k <= k_max; ++k) {
    const double w = static_cast<double>(k) * dw;
    const double omega_k = std::fabs(w - 0.5 * wp) < half_band ? shift : 0.0;
    freqs.push_back(w - omega_k);
    freqs.push_back(wp - w - omega_k);
  }
  return ModeSpectrum(std::move(freqs));
}

inline double discrete_capacity(const PdcBroadband& p, double E) {
  detail::require_positive_energy(E);
  return solve_thermal(discrete_spectrum(p), E).capacity_bits;
}

// (2 pi / ln 2)(omega_p / delta_omega) sqrt(2 gamma / 3): two independent
// infinite combs sharing E.
inline double asymptotic_capacity(const PdcBroadband& p, double E) {
  detail::require_positive_energy(E);
  return 2.0 * std::numbers::pi / ln2 * (p.omega_p() / p.delta_omega()) *
         std::sqrt(2.0 * p.gamma(E) / 3.0);
}

}  // namespace bcap
