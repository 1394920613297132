#pragma once

#include <string>
#include <vector>

#include "stokesdd/pcg.hpp"
#include "stokesdd/stokes_penalty.hpp"
#include "stokesdd/types.hpp"

namespace stokesdd {

/// Everything a study needs; the CLI and config file both map onto this.
/// `seed` is carried into the reports for bookkeeping; every algorithm in
/// the pipeline is deterministic, so reruns reproduce results bit for bit.
struct ExperimentConfig {
  std::string scenario = "cube_force";  // cube_force | vortex
  index_t n = 8;                        // cells per axis
  int order = 2;
  std::vector<double> eps = {1e-4};
  std::vector<index_t> subdomains = {16};
  index_t cells_per_subdomain = 4;  // weak scaling block edge, in cells
  index_t overlap = 2;              // graph layers
  double tol = 1e-6;
  index_t maxit = 2000;
  std::string precond = "two-level";  // none | one-level | two-level
  int threads = 1;
  unsigned long long seed = 0;
  std::string out_dir = ".";
  bool vtk = false;

  void validate() const;
};

/// cube_force: homogeneous no-slip walls driven by f = (0, x - 1/2, 0).
/// vortex: inhomogeneous boundary data from the reference vortex, whose
/// exact velocity makes discretization errors measurable.
Scenario make_scenario(const std::string& name, double eps);

struct RunResult {
  double epsilon = 0.0;
  index_t n_subdomains = 0;
  std::string precond;
  index_t n_elements = 0;
  index_t n_dofs = 0;
  index_t n_free = 0;
  index_t coarse_dim = 0;
  SolveReport report;
  double l2 = -1.0;  // negative when the scenario has no reference field
  double assembly_seconds = 0.0;
  double total_seconds = 0.0;  // preconditioner setup + iterations
  std::vector<double> solution;  // full dof layout, boundary values included
};

RunResult run_single(const ExperimentConfig& config, double eps,
                     index_t n_subdomains);

/// One run per epsilon at fixed mesh and subdomain count.
std::vector<RunResult> run_penalty_sweep(const ExperimentConfig& config);

struct WeakScalingRow {
  index_t n_subdomains = 0;
  index_t n = 0;  // mesh cells per axis for this row
  index_t n_free = 0;
  index_t coarse_dim = 0;
  RunResult one_level;
  RunResult two_level;
};

/// Grows the mesh with the subdomain count so each subdomain keeps
/// cells_per_subdomain^3 cells; every requested count must be a cube. Each
/// row solves with the one- and the two-level preconditioner.
std::vector<WeakScalingRow> run_weak_scaling(const ExperimentConfig& config);

std::string sweep_csv(const std::vector<RunResult>& rows);
std::string weak_scaling_csv(const std::vector<WeakScalingRow>& rows);

// CLI entry points; they write reports (JSON, CSV, VTK, matrix files) into
// config.out_dir.
void cmd_solve(const ExperimentConfig& config);
void cmd_sweep(const ExperimentConfig& config);
void cmd_weak_scaling(const ExperimentConfig& config);
void cmd_export_system(const ExperimentConfig& config);

}  // namespace stokesdd
