#pragma once

// Sweep grids and CSV tables behind the command-line tool. Every table is a
// pure function of its arguments; rows are emitted in lexicographic order of
// the grid axes, so output bytes depend only on the inputs.

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bosonic_capacity/broadband_pdc.hpp"
#include "bosonic_capacity/errors.hpp"
#include "bosonic_capacity/nonlinear.hpp"
#include "bosonic_capacity/thermal.hpp"

namespace bcap::report {

// Malformed command-line input (exit code 1), as opposed to a well-formed
// request outside a model's domain (bcap::Error, exit code 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Spacing { linear, log };

struct AxisSpec {
  std::string name;
  double start = 0.0;
  double stop = 0.0;
  std::size_t points = 2;
  Spacing spacing = Spacing::linear;

  std::vector<double> values() const {
    std::vector<double> v(points);
    const auto last = static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) {
      const double t = static_cast<double>(i) / last;
      if (spacing == Spacing::log) {
        v[i] = std::exp(std::log(start) + t * (std::log(stop) - std::log(start)));
      } else {
        v[i] = start + t * (stop - start);
      }
    }
    // Pin the endpoints against rounding in exp/log.
    v.front() = start;
    v.back() = stop;
    return v;
  }
};

namespace detail {

inline double parse_number(std::string_view text, std::string_view what) {
  const std::string s(text);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("cannot parse " + std::string(what) + " '" + s + "' as a number");
  }
  if (used != s.size() || !std::isfinite(value)) {
    throw UsageError("cannot parse " + std::string(what) + " '" + s + "' as a number");
  }
  return value;
}

}  // namespace detail

// Parses "start:stop:points" or "start:stop:points:log".
inline AxisSpec parse_axis(std::string name, std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t from = 0;
  while (true) {
    const std::size_t colon = text.find(':', from);
    parts.push_back(text.substr(from, colon - from));
    if (colon == std::string_view::npos) break;
    from = colon + 1;
  }
  if (parts.size() != 3 && parts.size() != 4) {
    throw UsageError("grid for " + name + " must be start:stop:points[:log], got '" +
                     std::string(text) + "'");
  }
  AxisSpec axis;
  axis.name = std::move(name);
  axis.start = detail::parse_number(parts[0], "grid start");
  axis.stop = detail::parse_number(parts[1], "grid stop");
  const double points = detail::parse_number(parts[2], "grid point count");
  if (points < 2 || points != std::floor(points) || points > 1e6) {
    throw UsageError("grid for " + axis.name + " needs an integer point count >= 2");
  }
  axis.points = static_cast<std::size_t>(points);
  if (parts.size() == 4) {
    if (parts[3] != "log" && parts[3] != "lin") {
      throw UsageError("grid spacing must be 'log' or 'lin', got '" + std::string(parts[3]) + "'");
    }
    axis.spacing = parts[3] == "log" ? Spacing::log : Spacing::linear;
  }
  if (!(axis.start < axis.stop)) {
    throw UsageError("grid for " + axis.name + " needs start < stop");
  }
  if (axis.spacing == Spacing::log && !(axis.start > 0.0)) {
    throw UsageError("log grid for " + axis.name + " needs positive endpoints");
  }
  return axis;
}

// 12 significant digits, trailing zeros kept.
inline std::string format_value(double v) {
  if (!std::isfinite(v)) throw NonFinite("refusing to emit a non-finite value");
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%#.12g", v);
  return buf;
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  // Non-fatal diagnostics for the error stream; never part of the CSV.
  std::vector<std::string> warnings;

  void add_row(std::vector<double> row) {
    if (row.size() != header.size()) throw std::logic_error("CSV row width mismatch");
    rows.push_back(std::move(row));
  }

  std::string to_csv() const {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) out += ',';
      out += header[i];
    }
    out += '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += format_value(row[i]);
      }
      out += '\n';
    }
    return out;
  }
};

// Re-checks C ln 2 = beta E + ln Z before a capacity leaves the library.
inline void check_capacity_identity(double capacity_bits, double beta, double energy,
                                    double ln_z) {
  if (energy == 0.0) {
    if (capacity_bits != 0.0) throw NonFinite("zero-energy capacity must vanish");
    return;
  }
  const double lhs = capacity_bits * ln2;
  const double rhs = beta * energy + ln_z;
  if (!(std::fabs(lhs - rhs) <= 1e-10 * (1.0 + std::fabs(rhs)))) {
    throw NonFinite("capacity identity C ln2 = beta E + ln Z violated at emission");
  }
}

inline void check_capacity_identity(const ThermalSolution& s) {
  check_capacity_identity(s.capacity_bits, s.beta, s.energy, s.ln_z);
}

inline CsvTable narrowband_table(double omega, double energy) {
  CsvTable t{{"omega", "energy", "capacity_bits"}, {}, {}};
  const double bits = narrowband_capacity(omega, energy);
  const ThermalSolution s = solve_thermal(ModeSpectrum({omega}), energy);
  check_capacity_identity(s);
  if (std::fabs(s.capacity_bits - bits) > 1e-10 * (1.0 + bits)) {
    throw NoConvergence("narrowband closed form and thermal solve disagree");
  }
  t.add_row({omega, energy, bits});
  return t;
}

// Squeezing gain C - C_nb over (E/omega, xi/omega) with omega = 1.
inline CsvTable fig1_table(const std::vector<double>& energy_ratios,
                           const std::vector<double>& xi_ratios) {
  CsvTable t{{"energy_ratio", "xi_ratio", "gain_bits"}, {}, {}};
  for (double e : energy_ratios) {
    for (double x : xi_ratios) {
      const SqueezeChannel ch(1.0, x);
      const double gain = squeeze_gain(ch, e);
      if (gain < -1e-12) throw NoConvergence("negative squeezing gain");
      t.add_row({e, x, gain});
    }
  }
  return t;
}

struct Fig2Options {
  double zeta = 0.5;
  double epsilon = 0.1;
  // omega_p / delta_omega
  double bandwidth_ratio = 1e4;
};

// Perturbative broadband PDC capacity functions over gamma, with omega_p = 1.
inline CsvTable fig2_table(const Fig2Options& opt, const std::vector<double>& gammas) {
  if (!(opt.bandwidth_ratio > 0.0)) throw DomainError("bandwidth ratio must be positive");
  if (!(opt.epsilon >= 0.0)) throw DomainError("epsilon must be nonnegative");
  CsvTable t{{"gamma", "c0_bits", "c1_bits", "capacity_bits", "c_asym_bits"}, {}, {}};
  const double delta_omega = 1.0 / opt.bandwidth_ratio;
  const PdcBroadband p(1.0, delta_omega, opt.zeta, 0.5 * std::sqrt(opt.epsilon));
  for (double gamma : gammas) {
    const double energy = 2.0 * gamma / delta_omega;
    const PerturbativeCapacity pc = perturbative_capacity(p, energy);
    if (pc.solution.c1_bits < 0.0) throw NoConvergence("negative first-order correction");
    t.add_row({gamma, pc.solution.c0_bits, pc.solution.c1_bits, pc.bits,
               asymptotic_capacity(p, energy)});
  }
  if (p.epsilon() >= tolerances::pdc_eps_warn) {
    t.warnings.push_back("warning: eps = " + format_value(p.epsilon()) +
                         " >= 0.1; second-order terms are not negligible");
  }
  return t;
}

// Two-mode swap gain C - 2 g(E/2) over (E/omega, xi/omega) with omega = 1.
inline CsvTable fig3_table(const std::vector<double>& energy_ratios,
                           const std::vector<double>& xi_ratios) {
  CsvTable t{{"energy_ratio", "xi_ratio", "delta_c_bits"}, {}, {}};
  for (double e : energy_ratios) {
    for (double x : xi_ratios) {
      const SwapNetwork net = SwapNetwork::pair(1.0, x);
      double capacity = 0.0;
      if (e > 0.0) {
        const ThermalSolution s = optimal_allocation(swap_spectrum(net), e).thermal;
        check_capacity_identity(s);
        capacity = s.capacity_bits;
      } else if (e < 0.0) {
        throw DomainError("energy must be nonnegative");
      }
      const double delta = capacity - 2.0 * g(e / 2.0);
      if (delta < -1e-10) throw NoConvergence("negative swap gain");
      t.add_row({e, x, delta});
    }
  }
  return t;
}

struct PdcOptions {
  double omega_p = 1.0;
  double delta_omega = 1e-3;
  double zeta = 0.5;
  double xi = 0.0;
};

inline CsvTable pdc_exact_table(const PdcOptions& opt, const std::vector<double>& energies) {
  const PdcBroadband p(opt.omega_p, opt.delta_omega, opt.zeta, opt.xi);
  CsvTable t{{"energy", "gamma", "epsilon", "exact_bits", "perturbative_bits", "c_asym_bits"},
             {},
             {}};
  for (double e : energies) {
    const ExactPdcSolution exact = exact_solution(p, e);
    check_capacity_identity(exact.capacity_bits, exact.lambda, e, exact.ln_z);
    const PerturbativeCapacity pert = perturbative_capacity(p, e);
    t.add_row({e, p.gamma(e), p.epsilon(), exact.capacity_bits, pert.bits,
               asymptotic_capacity(p, e)});
  }
  if (p.epsilon() >= tolerances::pdc_eps_warn) {
    t.warnings.push_back("warning: eps = " + format_value(p.epsilon()) +
                         " >= 0.1; the perturbative column carries O(eps^2) error");
  }
  return t;
}

inline CsvTable pdc_discrete_table(const PdcOptions& opt, const std::vector<double>& energies) {
  const PdcBroadband p(opt.omega_p, opt.delta_omega, opt.zeta, opt.xi);
  const ModeSpectrum spectrum = discrete_spectrum(p);
  CsvTable t{{"energy", "gamma", "discrete_bits", "exact_bits"}, {}, {}};
  for (double e : energies) {
    const ThermalSolution s = solve_thermal(spectrum, e);
    check_capacity_identity(s);
    t.add_row({e, p.gamma(e), s.capacity_bits, exact_capacity(p, e)});
  }
  return t;
}

inline CsvTable swapband_table(std::size_t n_modes, double delta_omega,
                               const std::vector<double>& rs,
                               const std::vector<double>& energies) {
  CsvTable t{{"n_modes", "r", "energy", "capacity_bits", "sqrt_n_cwb", "sqrt_contracted_cwb",
              "linear_contracted_cwb"},
             {},
             {}};
  for (double r : rs) {
    const BroadbandSwapConfig cfg(n_modes, r, delta_omega);
    for (double e : energies) {
      const ThermalSolution s = solve_comb(cfg.branch_spacings(), e).thermal;
      check_capacity_identity(s);
      const SwapbandReferences ref = broadband_swap_references(cfg, e);
      t.add_row({static_cast<double>(n_modes), r, e, s.capacity_bits, ref.sqrt_n_cwb,
                 ref.sqrt_contracted_cwb, ref.linear_contracted_cwb});
    }
  }
  return t;
}

inline void write_table(const CsvTable& t, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file '" + path + "'");
  out << t.to_csv();
  if (!out) throw Error("failed writing output file '" + path + "'");
}

}  // namespace bcap::report
