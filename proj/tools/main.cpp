#include <CLI11.hpp>

#include <exception>
#include <iostream>

#include "stokesdd/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{"penalty Stokes solver with overlapping Schwarz preconditioning"};
  app.set_config("--config", "", "read options from a key=value file");

  stokesdd::ExperimentConfig config;
  auto* scenario_opt = app.add_option(
      "--scenario", config.scenario,
      "cube_force or vortex (sweep-eps defaults to vortex)");
  app.add_option("--n", config.n, "cells per axis");
  app.add_option("--order", config.order, "velocity order, 1 or 2");
  app.add_option("--eps", config.eps, "penalty parameters, comma separated")
      ->delimiter(',');
  app.add_option("--subdomains", config.subdomains,
                 "subdomain counts, comma separated")
      ->delimiter(',');
  app.add_option("--cells-per-sub", config.cells_per_subdomain,
                 "cells per subdomain edge (weak scaling)");
  app.add_option("--overlap", config.overlap, "overlap layers");
  app.add_option("--tol", config.tol, "relative residual tolerance");
  app.add_option("--maxit", config.maxit, "iteration cap");
  app.add_option("--precond", config.precond, "none, one-level or two-level");
  app.add_option("--threads", config.threads, "worker threads");
  app.add_option("--seed", config.seed, "seed recorded in the reports");
  app.add_option("--out", config.out_dir, "output directory");
  app.add_flag("--vtk", config.vtk, "write solution.vtk");

  auto* solve =
      app.add_subcommand("solve", "assemble and solve one configuration");
  auto* sweep = app.add_subcommand("sweep-eps", "one solve per eps value");
  auto* weak = app.add_subcommand("weak-scaling",
                                  "grow the mesh with the subdomain count");
  auto* exp = app.add_subcommand(
      "export-system", "write matrix, right-hand side, basis and partition");
  for (CLI::App* sub : {solve, sweep, weak, exp}) sub->fallthrough();
  app.require_subcommand(1);

  CLI11_PARSE(app, argc, argv);
  if (*sweep && scenario_opt->count() == 0) config.scenario = "vortex";

  try {
    if (*solve)
      stokesdd::cmd_solve(config);
    else if (*sweep)
      stokesdd::cmd_sweep(config);
    else if (*weak)
      stokesdd::cmd_weak_scaling(config);
    else if (*exp)
      stokesdd::cmd_export_system(config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
