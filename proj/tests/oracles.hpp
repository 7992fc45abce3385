#pragma once

// Reference computations for the test suites. Each routine here follows a
// different numerical path from the library code it checks.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

namespace oracle {

inline double entropy_bits_direct(double x) {
  if (x == 0.0) return 0.0;
  return ((1.0 + x) * std::log2(1.0 + x)) - x * std::log2(x);
}

// Li2(z) for 0 <= z <= 1: power series below 1/2, Euler reflection above.
inline double dilog(double z) {
  if (z == 0.0) return 0.0;
  if (z == 1.0) return std::numbers::pi * std::numbers::pi / 6.0;
  auto series = [](double w) {
    double sum = 0.0;
    double power = w;
    for (int n = 1; n < 4000; ++n) {
      const double term = power / (static_cast<double>(n) * n);
      sum += term;
      if (term < 1e-18 * sum) break;
      power *= w;
    }
    return sum;
  };
  if (z <= 0.5) return series(z);
  return std::numbers::pi * std::numbers::pi / 6.0 - std::log(z) * std::log1p(-z) - series(1.0 - z);
}

// Integral of ln[1/(1 - e^{-x})] over [lo, hi] as Li2(e^{-lo}) - Li2(e^{-hi}).
inline double bose_integral_dilog(double lo, double hi) {
  return dilog(std::exp(-lo)) - dilog(std::exp(-hi));
}

// Same integral on a fixed grid: x = t^3 removes the log singularity, then
// composite Simpson with `panels` panels.
inline double bose_integral_fixed_grid(double beta, std::size_t panels = 1'000'000) {
  const double t_max = std::cbrt(beta);
  const double h = t_max / static_cast<double>(panels);
  auto f = [](double t) {
    if (t == 0.0) return 0.0;
    const double x = t * t * t;
    return -std::log(-std::expm1(-x)) * 3.0 * t * t;
  };
  double sum = f(0.0) + f(t_max);
  for (std::size_t i = 1; i < panels; ++i) {
    sum += f(static_cast<double>(i) * h) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

inline double central_difference(const std::function<double(double)>& f, double x,
                                 double rel_step = 1e-6) {
  const double h = rel_step * std::max(1.0, std::fabs(x));
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

// Best sum_j g(e_j/nu_j) over a uniform grid on the simplex sum e_j = E with
// roughly `points` allocations.
inline double grid_allocation_capacity(std::span<const double> nu, double E, std::size_t points) {
  const std::size_t n = nu.size();
  const auto per_axis = static_cast<std::size_t>(
      std::max(2.0, std::floor(std::pow(static_cast<double>(points), 1.0 / static_cast<double>(n - 1)))));
  double best = 0.0;
  std::vector<std::size_t> idx(n - 1, 0);
  while (true) {
    std::size_t used = 0;
    for (std::size_t i : idx) used += i;
    if (used <= per_axis) {
      double bits = 0.0;
      for (std::size_t j = 0; j + 1 < n; ++j) {
        bits += entropy_bits_direct(E * static_cast<double>(idx[j]) / static_cast<double>(per_axis) / nu[j]);
      }
      const double rest = E * static_cast<double>(per_axis - used) / static_cast<double>(per_axis);
      bits += entropy_bits_direct(rest / nu[n - 1]);
      best = std::max(best, bits);
    }
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] > per_axis) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  return best;
}

// Golden-section maximization of a unimodal function on [lo, hi].
inline double golden_max(const std::function<double(double)>& f, double lo, double hi,
                         int iterations = 200) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - r * (b - a);
  double d = a + r * (b - a);
  for (int i = 0; i < iterations; ++i) {
    if (f(c) > f(d)) {
      b = d;
    } else {
      a = c;
    }
    c = b - r * (b - a);
    d = a + r * (b - a);
  }
  return 0.5 * (a + b);
}

}  // namespace oracle
