// Command-line front end: capacity queries and CSV sweeps.
//
// Exit codes: 0 success, 1 usage error, 2 domain or numerical error.

#include <cstddef>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bosonic_capacity/report.hpp"

namespace {

namespace rep = bcap::report;

struct Output {
  std::string path;

  void emit(const rep::CsvTable& table) const {
    for (const auto& w : table.warnings) std::cerr << w << '\n';
    if (path.empty()) {
      std::cout << table.to_csv();
      std::cout.flush();
    } else {
      rep::write_table(table, path);
    }
  }
};

// Either a single value flag or a grid flag; the grid wins when both are set.
std::vector<double> axis_or_value(const std::string& name, const std::string& grid,
                                  const std::optional<double>& value,
                                  std::vector<double> fallback) {
  if (!grid.empty()) return rep::parse_axis(name, grid).values();
  if (value) return {*value};
  return fallback;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-constrained capacity of linear and nonlinear bosonic channels"};
  app.require_subcommand(1);
  app.fallthrough();
  Output out;
  app.add_option("--output,-o", out.path, "Write CSV to this file instead of standard output");

  // narrowband
  double nb_omega = 1.0;
  double nb_energy = 1.0;
  auto* nb = app.add_subcommand("narrowband", "Single-mode capacity g(E/omega)");
  nb->add_option("--omega", nb_omega, "Mode frequency")->required();
  nb->add_option("--energy", nb_energy, "Mean energy (units of hbar omega_ref)")->required();

  // fig1: squeezing gain
  std::string f1_energy = "1e-2:1e6:33:log";
  std::string f1_xi = "0:0.9:10";
  auto* fig1 = app.add_subcommand("fig1", "Squeezing gain C - C_nb over (E/omega, xi/omega)");
  fig1->add_option("--energy-grid", f1_energy, "E/omega grid start:stop:points[:log]")
      ->capture_default_str();
  fig1->add_option("--xi-grid", f1_xi, "xi/omega grid start:stop:points[:log]")
      ->capture_default_str();

  // fig2: perturbative broadband PDC
  rep::Fig2Options f2;
  std::string f2_gamma = "1e-4:10:41:log";
  auto* fig2 = app.add_subcommand("fig2", "Broadband PDC c0, c1 and capacity over gamma");
  fig2->add_option("--zeta", f2.zeta, "Fractional coupling bandwidth")->capture_default_str();
  fig2->add_option("--epsilon", f2.epsilon, "Coupling 4 xi^2 / omega_p^2")->capture_default_str();
  fig2->add_option("--ratio", f2.bandwidth_ratio, "omega_p / delta_omega")->capture_default_str();
  fig2->add_option("--gamma-grid", f2_gamma, "gamma grid start:stop:points[:log]")
      ->capture_default_str();

  // fig3: two-mode swap gain
  std::string f3_energy = "1e-2:1e3:26:log";
  std::string f3_xi = "0:0.99:12";
  auto* fig3 = app.add_subcommand("fig3", "Swap gain C - 2 g(E/2omega) over (E/omega, xi/omega)");
  fig3->add_option("--energy-grid", f3_energy, "E/omega grid start:stop:points[:log]")
      ->capture_default_str();
  fig3->add_option("--xi-grid", f3_xi, "xi/omega grid start:stop:points[:log]")
      ->capture_default_str();

  // pdc-exact / pdc-discrete
  rep::PdcOptions pdc;
  std::optional<double> pdc_energy;
  std::string pdc_grid;
  auto add_pdc_flags = [&](CLI::App* cmd) {
    cmd->add_option("--omega-p", pdc.omega_p, "Pump frequency")->capture_default_str();
    cmd->add_option("--delta-omega", pdc.delta_omega, "Mode spacing")->capture_default_str();
    cmd->add_option("--zeta", pdc.zeta, "Fractional coupling bandwidth")->capture_default_str();
    cmd->add_option("--xi", pdc.xi, "In-band coupling")->capture_default_str();
    cmd->add_option("--energy", pdc_energy, "Single mean energy");
    cmd->add_option("--energy-grid", pdc_grid, "Energy grid start:stop:points[:log]");
  };
  auto* pdc_exact = app.add_subcommand("pdc-exact", "Broadband PDC capacity from the continuum "
                                                    "partition function");
  add_pdc_flags(pdc_exact);
  auto* pdc_discrete = app.add_subcommand("pdc-discrete", "Broadband PDC capacity from the "
                                                          "discrete mode sum");
  add_pdc_flags(pdc_discrete);

  // swapband
  std::size_t sb_modes = 3;
  double sb_delta = 1.0;
  std::optional<double> sb_r;
  std::string sb_r_grid;
  std::optional<double> sb_energy;
  std::string sb_energy_grid;
  auto* swapband = app.add_subcommand("swapband", "Broadband swapping capacity with reference "
                                                  "curves");
  swapband->add_option("--modes", sb_modes, "Number of parallel combs N")->capture_default_str();
  swapband->add_option("--delta-omega", sb_delta, "Comb spacing")->capture_default_str();
  swapband->add_option("--r", sb_r, "Coupling parameter r in [0, 1)");
  swapband->add_option("--r-grid", sb_r_grid, "r grid start:stop:points[:log]");
  swapband->add_option("--energy", sb_energy, "Single mean energy");
  swapband->add_option("--energy-grid", sb_energy_grid, "Energy grid start:stop:points[:log]");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*nb) {
      out.emit(rep::narrowband_table(nb_omega, nb_energy));
    } else if (*fig1) {
      out.emit(rep::fig1_table(rep::parse_axis("energy", f1_energy).values(),
                               rep::parse_axis("xi", f1_xi).values()));
    } else if (*fig2) {
      out.emit(rep::fig2_table(f2, rep::parse_axis("gamma", f2_gamma).values()));
    } else if (*fig3) {
      out.emit(rep::fig3_table(rep::parse_axis("energy", f3_energy).values(),
                               rep::parse_axis("xi", f3_xi).values()));
    } else if (*pdc_exact || *pdc_discrete) {
      const auto energies = axis_or_value("energy", pdc_grid, pdc_energy, {10.0, 100.0, 1000.0});
      out.emit(*pdc_exact ? rep::pdc_exact_table(pdc, energies)
                          : rep::pdc_discrete_table(pdc, energies));
    } else if (*swapband) {
      const auto rs = axis_or_value("r", sb_r_grid, sb_r, rep::parse_axis("r", "0:0.9:10").values());
      const auto energies = axis_or_value("energy", sb_energy_grid, sb_energy, {1e5});
      out.emit(rep::swapband_table(sb_modes, sb_delta, rs, energies));
    }
  } catch (const rep::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  } catch (const bcap::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
