#include "stokesdd/experiments.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "stokesdd/decomposition.hpp"
#include "stokesdd/interface_structure.hpp"
#include "stokesdd/matrix_market.hpp"
#include "stokesdd/mesh.hpp"
#include "stokesdd/partition.hpp"
#include "stokesdd/rgdsw.hpp"
#include "stokesdd/schwarz.hpp"
#include "stokesdd/vtk_writer.hpp"

namespace stokesdd {

namespace {

using nlohmann::json;

class StopWatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(Clock::now() - t0_).count();
  }
  void reset() { t0_ = Clock::now(); }

 private:
  using Clock = std::chrono::steady_clock;
  Clock::time_point t0_ = Clock::now();
};

index_t cube_root(index_t n) {
  index_t q = static_cast<index_t>(std::lround(std::cbrt(double(n))));
  for (index_t c = std::max<index_t>(q - 1, 1); c <= q + 1; ++c)
    if (c * c * c == n) return c;
  return -1;
}

/// Assembled, constrained and reduced system; valid while the object lives
/// (the space points into the mesh member).
struct AssembledProblem {
  Mesh mesh;
  FESpace space;
  Scenario scenario;
  FreeDofMap map;
  SparseMatrix A_free;
  std::vector<double> b_free;
  std::vector<double> boundary_solution;  // g on constrained dofs, 0 elsewhere
  std::vector<Vec3> free_coords;
  double assembly_seconds = 0.0;

  AssembledProblem(const ExperimentConfig& config, double eps, index_t n)
      : mesh(build_box_mesh(n, n, n)) {
    classify_boundary(mesh, {{1, [](const Vec3&) { return true; }}});
    space = build_fe_space(mesh, config.order);
    scenario = make_scenario(config.scenario, eps);

    StopWatch watch;
    AssembledSystem sys = assemble(space, scenario, config.threads);
    const std::vector<index_t> constrained =
        apply_dirichlet(sys.A, sys.b, space, scenario);
    map = build_free_dof_map(space.n_dofs(), constrained);
    A_free = principal_submatrix(sys.A, map.free_to_global);
    b_free = gather_free(map, sys.b);
    assembly_seconds = watch.seconds();

    boundary_solution.assign(space.n_dofs(), 0.0);
    for (index_t c : constrained) boundary_solution[c] = sys.b[c];
    free_coords.resize(map.n_free());
    for (index_t f = 0; f < map.n_free(); ++f)
      free_coords[f] = space.dof_coords[map.free_to_global[f] % space.n_scalar];
  }
  AssembledProblem(const AssembledProblem&) = delete;
  AssembledProblem& operator=(const AssembledProblem&) = delete;
};

void finish_result(const ExperimentConfig& config, AssembledProblem& prob,
                   RunResult& res, std::vector<double> x_free) {
  res.n_elements = prob.mesh.n_tets();
  res.n_dofs = prob.space.n_dofs();
  res.n_free = prob.map.n_free();
  res.total_seconds = res.report.setup_seconds + res.report.solve_seconds;
  res.assembly_seconds = prob.assembly_seconds;
  res.solution = prob.boundary_solution;
  scatter_free(prob.map, x_free, res.solution);
  if (prob.scenario.reference_velocity)
    res.l2 = l2_error(prob.space, res.solution,
                      prob.scenario.reference_velocity);
  (void)config;
}

RunResult solve_case(const ExperimentConfig& config, AssembledProblem& prob,
                     const Partition& partition, const std::string& kind) {
  RunResult res;
  res.epsilon = prob.scenario.epsilon;
  res.n_subdomains = partition.n_subdomains;
  res.precond = kind;

  StopWatch setup;
  std::optional<CoarseBasis> basis;
  std::optional<SchwarzPreconditioner> M;
  PrecondApply apply = identity_preconditioner();
  if (kind != "none") {
    const Decomposition dec = build_decomposition(
        prob.space, partition, prob.map, prob.A_free, config.overlap);
    const CoarseBasis* coarse = nullptr;
    if (kind == "two-level") {
      const InterfaceStructure structure = build_interface_structure(
          prob.space, partition, constrained_nodes(prob.space, prob.map));
      basis.emplace(build_coarse_basis(prob.space, structure, prob.map,
                                       prob.A_free, config.threads));
      coarse = &*basis;
      res.coarse_dim = basis->dim();
    }
    M.emplace(prob.A_free, dec, coarse, config.threads, &prob.free_coords);
    apply = M->callback();
  }
  const double setup_seconds = setup.seconds();

  StopWatch solving;
  auto [x_free, report] =
      pcg(prob.A_free, prob.b_free, apply,
          {config.tol, config.maxit, 50});
  report.solve_seconds = solving.seconds();
  report.setup_seconds = setup_seconds;
  res.report = std::move(report);
  finish_result(config, prob, res, std::move(x_free));
  return res;
}

json run_to_json(const RunResult& r) {
  json j;
  j["epsilon"] = r.epsilon;
  j["subdomains"] = r.n_subdomains;
  j["precond"] = r.precond;
  j["elements"] = r.n_elements;
  j["dofs"] = r.n_dofs;
  j["free_dofs"] = r.n_free;
  j["coarse_dim"] = r.coarse_dim;
  j["iterations"] = r.report.iterations;
  j["converged"] = r.report.converged;
  if (r.l2 >= 0.0)
    j["l2_error"] = r.l2;
  else
    j["l2_error"] = nullptr;
  j["timings"] = {{"assembly_s", r.assembly_seconds},
                  {"setup_s", r.report.setup_seconds},
                  {"solve_s", r.report.solve_seconds},
                  {"total_s", r.total_seconds}};
  j["residual_history"] = r.report.residual_history;
  return j;
}

json config_to_json(const ExperimentConfig& c) {
  json j;
  j["scenario"] = c.scenario;
  j["n"] = c.n;
  j["order"] = c.order;
  j["eps"] = c.eps;
  j["subdomains"] = c.subdomains;
  j["cells_per_subdomain"] = c.cells_per_subdomain;
  j["overlap"] = c.overlap;
  j["tol"] = c.tol;
  j["maxit"] = c.maxit;
  j["precond"] = c.precond;
  j["threads"] = c.threads;
  j["seed"] = c.seed;
  j["out_dir"] = c.out_dir;
  j["vtk"] = c.vtk;
  return j;
}

void write_text(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << body;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::filesystem::path prepare_out_dir(const ExperimentConfig& config) {
  std::filesystem::path dir(config.out_dir);
  std::filesystem::create_directories(dir);
  return dir;
}

void write_report(const ExperimentConfig& config,
                  const std::filesystem::path& dir, json runs) {
  json j;
  j["config"] = config_to_json(config);
  j["runs"] = std::move(runs);
  write_text(dir / "report.json", j.dump(2) + "\n");
}

void maybe_write_vtk(const ExperimentConfig& config,
                     const std::filesystem::path& dir,
                     const AssembledProblem& prob, const RunResult& res) {
  if (!config.vtk) return;
  write_vtk((dir / "solution.vtk").string(), prob.mesh, {},
            {{"velocity", vertex_velocity(prob.space, res.solution)}});
}

}  // namespace

void ExperimentConfig::validate() const {
  if (scenario != "cube_force" && scenario != "vortex")
    throw std::invalid_argument("config: scenario must be cube_force or vortex");
  if (n < 1) throw std::invalid_argument("config: n must be >= 1");
  if (order != 1 && order != 2)
    throw std::invalid_argument("config: order must be 1 or 2");
  if (eps.empty()) throw std::invalid_argument("config: eps list is empty");
  for (double e : eps)
    if (!(e > 0.0) || e > 1.0)
      throw std::invalid_argument("config: eps must lie in (0, 1]");
  if (subdomains.empty())
    throw std::invalid_argument("config: subdomain list is empty");
  for (index_t s : subdomains)
    if (s < 1) throw std::invalid_argument("config: subdomains must be >= 1");
  if (cells_per_subdomain < 1)
    throw std::invalid_argument("config: cells_per_subdomain must be >= 1");
  if (overlap < 0) throw std::invalid_argument("config: overlap must be >= 0");
  if (!(tol > 0.0) || tol >= 1.0)
    throw std::invalid_argument("config: tol must lie in (0, 1)");
  if (maxit < 1) throw std::invalid_argument("config: maxit must be >= 1");
  if (precond != "none" && precond != "one-level" && precond != "two-level")
    throw std::invalid_argument(
        "config: precond must be none, one-level or two-level");
  if (threads < 1) throw std::invalid_argument("config: threads must be >= 1");
}

Scenario make_scenario(const std::string& name, double eps) {
  Scenario sc;
  sc.epsilon = eps;
  if (name == "cube_force") {
    sc.body_force = [](const Vec3& x) { return Vec3{0.0, x[0] - 0.5, 0.0}; };
    sc.dirichlet = {{1, [](const Vec3&) { return Vec3{0.0, 0.0, 0.0}; }}};
  } else if (name == "vortex") {
    sc.body_force = vortex_body_force;
    sc.dirichlet = {{1, vortex_velocity}};
    sc.reference_velocity = vortex_velocity;
  } else {
    throw std::invalid_argument("unknown scenario '" + name +
                                "' (expected cube_force or vortex)");
  }
  return sc;
}

RunResult run_single(const ExperimentConfig& config, double eps,
                     index_t n_subdomains) {
  config.validate();
  AssembledProblem prob(config, eps, config.n);
  const Partition partition = partition_elements(prob.mesh, n_subdomains);
  return solve_case(config, prob, partition, config.precond);
}

std::vector<RunResult> run_penalty_sweep(const ExperimentConfig& config) {
  config.validate();
  const index_t n_sub = config.subdomains.front();
  std::vector<RunResult> rows;
  for (double eps : config.eps) {
    AssembledProblem prob(config, eps, config.n);
    const Partition partition = partition_elements(prob.mesh, n_sub);
    rows.push_back(solve_case(config, prob, partition, config.precond));
  }
  return rows;
}

std::vector<WeakScalingRow> run_weak_scaling(const ExperimentConfig& config) {
  config.validate();
  std::vector<WeakScalingRow> rows;
  for (index_t n_sub : config.subdomains) {
    const index_t q = cube_root(n_sub);
    if (q < 1)
      throw std::invalid_argument(
          "run_weak_scaling: subdomain counts must be cubes");
    WeakScalingRow row;
    row.n_subdomains = n_sub;
    row.n = q * config.cells_per_subdomain;

    ExperimentConfig local = config;
    local.n = row.n;
    AssembledProblem prob(local, config.eps.front(), row.n);
    const Partition partition = grid_partition(prob.mesh, q, q, q);
    row.n_free = prob.map.n_free();

    // The heavy subdomain factorizations are shared: the one-level method
    // runs first, then the coarse problem is attached on top.
    StopWatch setup;
    const Decomposition dec = build_decomposition(
        prob.space, partition, prob.map, prob.A_free, config.overlap);
    SchwarzPreconditioner M(prob.A_free, dec, nullptr, config.threads,
                            &prob.free_coords);
    const double one_level_setup = setup.seconds();

    {
      RunResult res;
      res.epsilon = prob.scenario.epsilon;
      res.n_subdomains = n_sub;
      res.precond = "one-level";
      StopWatch solving;
      auto [x_free, report] = pcg(prob.A_free, prob.b_free, M.callback(),
                                  {config.tol, config.maxit, 50});
      report.solve_seconds = solving.seconds();
      report.setup_seconds = one_level_setup;
      res.report = std::move(report);
      finish_result(local, prob, res, std::move(x_free));
      row.one_level = std::move(res);
    }

    setup.reset();
    const InterfaceStructure structure = build_interface_structure(
        prob.space, partition, constrained_nodes(prob.space, prob.map));
    const CoarseBasis basis = build_coarse_basis(prob.space, structure,
                                                 prob.map, prob.A_free,
                                                 config.threads);
    M.attach_coarse(basis);
    const double coarse_setup = setup.seconds();

    {
      RunResult res;
      res.epsilon = prob.scenario.epsilon;
      res.n_subdomains = n_sub;
      res.precond = "two-level";
      res.coarse_dim = basis.dim();
      StopWatch solving;
      auto [x_free, report] = pcg(prob.A_free, prob.b_free, M.callback(),
                                  {config.tol, config.maxit, 50});
      report.solve_seconds = solving.seconds();
      report.setup_seconds = one_level_setup + coarse_setup;
      res.report = std::move(report);
      finish_result(local, prob, res, std::move(x_free));
      row.coarse_dim = basis.dim();
      row.two_level = std::move(res);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string sweep_csv(const std::vector<RunResult>& rows) {
  std::ostringstream out;
  out.precision(12);
  out << "epsilon,l2_error,iterations,total_s,setup_s\n";
  for (const RunResult& r : rows)
    out << r.epsilon << "," << r.l2 << "," << r.report.iterations << ","
        << r.total_seconds << "," << r.report.setup_seconds << "\n";
  return out.str();
}

std::string weak_scaling_csv(const std::vector<WeakScalingRow>& rows) {
  std::ostringstream out;
  out.precision(12);
  out << "subdomains,n,free_dofs,coarse_dim,iters_one_level,iters_two_level,"
         "setup_s_one_level,setup_s_two_level,solve_s_one_level,"
         "solve_s_two_level,total_s_one_level,total_s_two_level\n";
  for (const WeakScalingRow& r : rows)
    out << r.n_subdomains << "," << r.n << "," << r.n_free << ","
        << r.coarse_dim << "," << r.one_level.report.iterations << ","
        << r.two_level.report.iterations << ","
        << r.one_level.report.setup_seconds << ","
        << r.two_level.report.setup_seconds << ","
        << r.one_level.report.solve_seconds << ","
        << r.two_level.report.solve_seconds << ","
        << r.one_level.total_seconds << "," << r.two_level.total_seconds
        << "\n";
  return out.str();
}

void cmd_solve(const ExperimentConfig& config) {
  config.validate();
  const auto dir = prepare_out_dir(config);
  AssembledProblem prob(config, config.eps.front(), config.n);
  const Partition partition =
      partition_elements(prob.mesh, config.subdomains.front());
  const RunResult res = solve_case(config, prob, partition, config.precond);
  write_report(config, dir, json::array({run_to_json(res)}));
  maybe_write_vtk(config, dir, prob, res);
  std::cout << "solve: n=" << config.n << " order=" << config.order
            << " eps=" << res.epsilon << " N=" << res.n_subdomains
            << " precond=" << res.precond << " -> "
            << res.report.iterations << " iterations"
            << (res.report.converged ? "" : " (not converged)");
  if (res.l2 >= 0.0) std::cout << ", l2 error " << res.l2;
  std::cout << ", total " << res.total_seconds << "s\n";
}

void cmd_sweep(const ExperimentConfig& config) {
  const auto dir = prepare_out_dir(config);
  const std::vector<RunResult> rows = run_penalty_sweep(config);
  write_text(dir / "sweep.csv", sweep_csv(rows));
  json runs = json::array();
  for (const RunResult& r : rows) runs.push_back(run_to_json(r));
  write_report(config, dir, std::move(runs));
  for (const RunResult& r : rows)
    std::cout << "eps=" << r.epsilon << " l2=" << r.l2
              << " iterations=" << r.report.iterations
              << (r.report.converged ? "" : " (not converged)") << "\n";
}

void cmd_weak_scaling(const ExperimentConfig& config) {
  const auto dir = prepare_out_dir(config);
  const std::vector<WeakScalingRow> rows = run_weak_scaling(config);
  write_text(dir / "weak_scaling.csv", weak_scaling_csv(rows));
  json runs = json::array();
  for (const WeakScalingRow& r : rows) {
    runs.push_back(run_to_json(r.one_level));
    runs.push_back(run_to_json(r.two_level));
  }
  write_report(config, dir, std::move(runs));
  for (const WeakScalingRow& r : rows)
    std::cout << "N=" << r.n_subdomains << " n=" << r.n
              << " free_dofs=" << r.n_free
              << " one-level=" << r.one_level.report.iterations
              << " two-level=" << r.two_level.report.iterations
              << " coarse_dim=" << r.coarse_dim << "\n";
}

void cmd_export_system(const ExperimentConfig& config) {
  config.validate();
  const auto dir = prepare_out_dir(config);
  AssembledProblem prob(config, config.eps.front(), config.n);
  const Partition partition =
      partition_elements(prob.mesh, config.subdomains.front());

  write_matrix_market((dir / "A.mtx").string(), prob.A_free);
  write_vector((dir / "b.txt").string(), prob.b_free);
  write_partition((dir / "partition.txt").string(), partition);
  if (partition.n_subdomains > 1) {
    const InterfaceStructure structure = build_interface_structure(
        prob.space, partition, constrained_nodes(prob.space, prob.map));
    const CoarseBasis basis = build_coarse_basis(prob.space, structure,
                                                 prob.map, prob.A_free,
                                                 config.threads);
    write_matrix_market((dir / "phi.mtx").string(), basis.phi);
    write_matrix_market((dir / "a0.mtx").string(), basis.a0);
  }
  std::cout << "exported system (" << prob.map.n_free() << " free dofs) to "
            << dir.string() << "\n";
}

}  // namespace stokesdd
