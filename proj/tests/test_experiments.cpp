#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "stokesdd/experiments.hpp"

using namespace stokesdd;

namespace {

ExperimentConfig tiny_config() {
  ExperimentConfig config;
  config.scenario = "cube_force";
  config.n = 3;
  config.order = 1;
  config.eps = {1e-2};
  config.subdomains = {4};
  config.overlap = 1;
  config.tol = 1e-8;
  return config;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("config validation rejects out-of-range settings") {
  ExperimentConfig config = tiny_config();
  CHECK_NOTHROW(config.validate());

  ExperimentConfig bad = config;
  bad.order = 3;
  CHECK_THROWS(bad.validate());
  bad = config;
  bad.tol = 0.0;
  CHECK_THROWS(bad.validate());
  bad = config;
  bad.tol = 1.0;
  CHECK_THROWS(bad.validate());
  bad = config;
  bad.precond = "three-level";
  CHECK_THROWS(bad.validate());
  bad = config;
  bad.eps = {};
  CHECK_THROWS(bad.validate());
  bad = config;
  bad.eps = {2.0};
  CHECK_THROWS(bad.validate());
  bad = config;
  bad.overlap = -1;
  CHECK_THROWS(bad.validate());
  bad = config;
  bad.n = 0;
  CHECK_THROWS(bad.validate());
  bad = config;
  bad.scenario = "lid_driven";
  CHECK_THROWS(bad.validate());
}

TEST_CASE("scenarios carry the advertised fields") {
  Scenario cube = make_scenario("cube_force", 1e-3);
  CHECK(cube.epsilon == 1e-3);
  REQUIRE(cube.body_force);
  Vec3 f = cube.body_force({0.75, 0.2, 0.9});
  CHECK(f[0] == 0.0);
  CHECK(f[1] == 0.25);
  CHECK(f[2] == 0.0);
  CHECK(cube.dirichlet.size() == 1);
  CHECK_FALSE(cube.reference_velocity);
  // Walls are no-slip.
  Vec3 g = cube.dirichlet[0].second({0.0, 0.5, 0.5});
  CHECK((g[0] == 0.0 && g[1] == 0.0 && g[2] == 0.0));

  Scenario vortex = make_scenario("vortex", 1e-2);
  REQUIRE(vortex.reference_velocity);
  REQUIRE(vortex.body_force);
  CHECK(vortex.dirichlet.size() == 1);

  CHECK_THROWS(make_scenario("lid_driven", 1e-2));
}

TEST_CASE("single runs expose consistent bookkeeping") {
  ExperimentConfig config = tiny_config();
  RunResult run = run_single(config, 1e-2, 4);
  CHECK(run.report.converged);
  CHECK(run.n_elements == 6 * 27);
  CHECK(run.n_dofs == 3 * 64);
  CHECK(run.n_free > 0);
  CHECK(run.n_free < run.n_dofs);
  CHECK(run.epsilon == 1e-2);
  CHECK(run.n_subdomains == 4);
  CHECK(run.coarse_dim > 0);
  CHECK(run.coarse_dim % 3 == 0);
  CHECK(static_cast<index_t>(run.solution.size()) == run.n_dofs);
  CHECK(run.l2 == -1.0);  // no reference field in cube_force
  CHECK(run.total_seconds >= 0.0);
  // Boundary dofs keep their Dirichlet value.
  CHECK(run.solution[0] == 0.0);
}

TEST_CASE("runs are deterministic") {
  ExperimentConfig config = tiny_config();
  RunResult a = run_single(config, 1e-2, 4);
  RunResult b = run_single(config, 1e-2, 4);
  CHECK(a.report.iterations == b.report.iterations);
  CHECK(a.report.residual_history == b.report.residual_history);
  CHECK(a.solution == b.solution);
}

TEST_CASE("preconditioner choice changes iterations, not the solution") {
  ExperimentConfig config = tiny_config();
  config.tol = 1e-9;
  config.maxit = 5000;

  config.precond = "none";
  RunResult plain = run_single(config, 1e-2, 4);
  config.precond = "two-level";
  RunResult two = run_single(config, 1e-2, 4);
  REQUIRE(plain.report.converged);
  REQUIRE(two.report.converged);
  CHECK(two.report.iterations < plain.report.iterations);
  CHECK(two.coarse_dim > 0);
  CHECK(plain.coarse_dim == 0);

  double diff = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < plain.solution.size(); ++i) {
    diff = std::max(diff, std::abs(plain.solution[i] - two.solution[i]));
    scale = std::max(scale, std::abs(plain.solution[i]));
  }
  CHECK(diff <= 1e-6 * scale);
}

TEST_CASE("one subdomain with the one-level method solves directly") {
  ExperimentConfig config = tiny_config();
  config.precond = "one-level";
  config.overlap = 0;
  RunResult run = run_single(config, 1e-2, 1);
  CHECK(run.report.converged);
  CHECK(run.report.iterations <= 2);
  CHECK(run.coarse_dim == 0);
}

TEST_CASE("penalty sweep emits one row per epsilon with the fixed schema") {
  ExperimentConfig config = tiny_config();
  config.scenario = "vortex";
  config.n = 2;
  config.subdomains = {2};
  config.eps = {0.5, 0.05};
  std::vector<RunResult> rows = run_penalty_sweep(config);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].epsilon == 0.5);
  CHECK(rows[1].epsilon == 0.05);
  for (const RunResult& row : rows) {
    CHECK(row.report.converged);
    CHECK(row.l2 > 0.0);  // vortex has a reference field
  }

  std::vector<std::string> csv = lines(sweep_csv(rows));
  REQUIRE(csv.size() == 3);
  CHECK(csv[0] == "epsilon,l2_error,iterations,total_s,setup_s");
  // Rows parse back into five comma-separated numbers.
  for (std::size_t r = 1; r < csv.size(); ++r) {
    std::istringstream in(csv[r]);
    double value;
    char comma;
    int fields = 0;
    while (in >> value) {
      ++fields;
      in >> comma;
    }
    CHECK(fields == 5);
  }
}

TEST_CASE("weak scaling grows the mesh with the subdomain grid") {
  ExperimentConfig config = tiny_config();
  config.scenario = "cube_force";
  config.order = 1;
  config.cells_per_subdomain = 2;
  config.subdomains = {1, 8};
  config.eps = {1e-2};
  config.overlap = 1;
  std::vector<WeakScalingRow> rows = run_weak_scaling(config);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].n_subdomains == 1);
  CHECK(rows[0].n == 2);
  CHECK(rows[1].n_subdomains == 8);
  CHECK(rows[1].n == 4);
  CHECK(rows[1].n_free > rows[0].n_free);
  CHECK(rows[1].coarse_dim > rows[0].coarse_dim);
  for (const WeakScalingRow& row : rows) {
    CHECK(row.one_level.report.converged);
    CHECK(row.two_level.report.converged);
    CHECK(row.n_free == row.one_level.n_free);
  }

  std::vector<std::string> csv = lines(weak_scaling_csv(rows));
  REQUIRE(csv.size() == 3);
  CHECK(csv[0] ==
        "subdomains,n,free_dofs,coarse_dim,iters_one_level,iters_two_level,"
        "setup_s_one_level,setup_s_two_level,solve_s_one_level,"
        "solve_s_two_level,total_s_one_level,total_s_two_level");

  // Subdomain counts must be cubes.
  ExperimentConfig bad = config;
  bad.subdomains = {6};
  CHECK_THROWS(run_weak_scaling(bad));
}
