// Command-line driver: convergence ladders, stability grids, single runs,
// and order fitting, with flat key=value config files and flag overrides.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "llproj/harness.hpp"

namespace {

using namespace llproj;

struct CliOptions {
  Options opt;
  std::string config_path;
  bool spatial = false;
};

// Register the option flags shared by every study subcommand.  Flags mirror
// the config-file keys; values given on the command line override the file.
void add_common_flags(CLI::App* cmd, CliOptions& cli) {
  cmd->add_option("--config", cli.config_path, "flat key = value config file");
  cmd->add_option("--mode", cli.opt.mode, "study mode (overrides the subcommand default)");
  cmd->add_option("--dim", cli.opt.dim, "spatial dimension, 1 or 3");
  cmd->add_option("--nx", cli.opt.nx, "cells along x");
  cmd->add_option("--ny", cli.opt.ny, "cells along y");
  cmd->add_option("--nz", cli.opt.nz, "cells along z");
  cmd->add_option("--dt", cli.opt.dt, "time step k");
  cmd->add_option("--t_final", cli.opt.t_final, "final time T (default 1)");
  cmd->add_option("--alpha", cli.opt.alpha, "damping parameter (default 0.01)");
  cmd->add_option("--solver", cli.opt.solver, "direct | iterative");
  cmd->add_option("--solver_tol", cli.opt.solver_tol, "relative residual tolerance");
  cmd->add_option("--out_table", cli.opt.out_table, "write the study table as CSV");
  cmd->add_option("--out_field", cli.opt.out_field, "write the final field (.vtk or .csv)");
  cmd->add_option("--h_app_x", cli.opt.h_app_x, "applied field x component")
      ->each([&](const std::string&) { cli.opt.has_h_app = true; });
  cmd->add_option("--h_app_y", cli.opt.h_app_y, "applied field y component")
      ->each([&](const std::string&) { cli.opt.has_h_app = true; });
  cmd->add_option("--h_app_z", cli.opt.h_app_z, "applied field z component")
      ->each([&](const std::string&) { cli.opt.has_h_app = true; });
  cmd->add_flag("--quick", cli.opt.quick, "trim the 3-D ladder to k >= 1/128");
}

Options resolve(const CliOptions& cli, const std::string& default_mode) {
  Options base;
  if (!cli.config_path.empty()) base = load_config(cli.config_path);
  Options merged = merge_options(base, cli.opt);
  if (merged.mode.empty()) merged.mode = default_mode;
  return merged;
}

void print_table(const ConvergenceTable& table) {
  std::printf("%-14s %-14s %-16s %-16s %-16s\n", "k", "h", "err_inf", "err_l2", "err_h1");
  for (const auto& r : table.rows)
    std::printf("%-14.6e %-14.6e %-16.8e %-16.8e %-16.8e\n", r.k, r.h, r.err_inf, r.err_l2,
                r.err_h1);
  if (table.has_orders)
    std::printf("%-14s %-14s %-16.4f %-16.4f %-16.4f\n", "order", "", table.order_inf,
                table.order_l2, table.order_h1);
}

void finish_study(const ConvergenceTable& table, const StudyConfig& config) {
  print_table(table);
  if (!config.out_table.empty()) {
    export_csv(table, config.out_table);
    std::printf("table written to %s\n", config.out_table.c_str());
  }
}

int cmd_converge_mms(const CliOptions& cli) {
  Options opt = resolve(cli, cli.opt.dim == 3 ? "mms-3d" : "mms-1d");
  const StudyConfig config = build_study(opt);
  finish_study(converge_mms(config), config);
  return 0;
}

int cmd_converge_ref(const CliOptions& cli) {
  Options opt = resolve(cli, "reference-1d");
  const StudyConfig config = build_study(opt, cli.spatial);
  finish_study(converge_reference(config), config);
  return 0;
}

int cmd_stability(const CliOptions& cli) {
  Options opt = resolve(cli, cli.opt.dim == 3 ? "stability-3d" : "stability-1d");
  const StudyConfig config = build_study(opt);
  finish_study(stability_table(config), config);
  return 0;
}

int cmd_run(const CliOptions& cli) {
  Options opt = resolve(cli, "single-run");
  const StudyConfig config = build_study(opt);
  const SingleRunReport report = run_single(config);
  std::printf("completed %ld steps to t = %.6e on a %ldx%ldx%ld grid\n", report.state.n,
              report.state.t_curr, config.ladder[0].grid.nx, config.ladder[0].grid.ny,
              config.ladder[0].grid.nz);
  if (report.has_errors)
    std::printf("errors vs exact: inf %.8e  l2 %.8e  h1 %.8e\n", report.err_inf, report.err_l2,
                report.err_h1);
  std::printf("exchange energy: %.8e\n", report.energy);
  std::printf("last equation residual: %.3e\n", report.state.eq_residual);
  if (!config.out_field.empty()) {
    export_field(report.state, config.out_field);
    std::printf("field written to %s\n", config.out_field.c_str());
  }
  return 0;
}

int cmd_fit_order(const std::string& csv_path) {
  std::ifstream in(csv_path);
  if (!in) throw std::runtime_error("fit-order: cannot open '" + csv_path + "'");
  std::vector<std::pair<double, double>> points;
  std::string line;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string a, b;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',')) continue;
    try {
      points.emplace_back(parse_double(a), parse_double(b));
    } catch (const std::invalid_argument&) {
      continue;  // header or footer line
    }
  }
  const double slope = fit_order(points);
  std::printf("%.6f\n", slope);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-difference Landau-Lifshitz solver (semi-implicit BDF2 projection)"};
  app.require_subcommand(1);

  CliOptions mms_cli, ref_cli, stab_cli, run_cli;
  std::string fit_csv;

  CLI::App* mms = app.add_subcommand("converge-mms", "forced-MMS convergence ladder");
  add_common_flags(mms, mms_cli);
  CLI::App* ref = app.add_subcommand("converge-ref", "self-convergence vs a reference run");
  add_common_flags(ref, ref_cli);
  ref->add_flag("--spatial", ref_cli.spatial, "factor-3 spatial ladder (default temporal)");
  CLI::App* stab = app.add_subcommand("stability", "error grid over (k, h) pairs");
  add_common_flags(stab, stab_cli);
  CLI::App* runc = app.add_subcommand("run", "single trajectory");
  add_common_flags(runc, run_cli);
  CLI::App* fit = app.add_subcommand("fit-order", "least-squares order from a two-column CSV");
  fit->add_option("csv", fit_csv, "CSV with (step, error) columns")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (mms->parsed()) return cmd_converge_mms(mms_cli);
    if (ref->parsed()) return cmd_converge_ref(ref_cli);
    if (stab->parsed()) return cmd_stability(stab_cli);
    if (runc->parsed()) return cmd_run(run_cli);
    if (fit->parsed()) return cmd_fit_order(fit_csv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
