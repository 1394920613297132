#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "stokesdd/sparse_matrix.hpp"
#include "stokesdd/types.hpp"

namespace stokesdd {

/// Outcome of one preconditioned conjugate gradient run. residual_history
/// holds relative two-norm residuals from the recurrence, starting at 1;
/// setup/solve timings are filled in by the caller that owns the clock.
struct SolveReport {
  index_t iterations = 0;
  bool converged = false;
  std::vector<double> residual_history;
  double setup_seconds = 0.0;
  double solve_seconds = 0.0;
};

/// Applies the preconditioner: z = M^{-1} r. z arrives sized like r.
using PrecondApply =
    std::function<void(const std::vector<double>& r, std::vector<double>& z)>;

struct PcgOptions {
  double rel_tol = 1e-6;
  index_t max_iterations = 2000;
  // The recurrence residual drifts from b - A x in long runs; the true
  // residual is recomputed this often and at any declared convergence.
  index_t recompute_interval = 50;
};

PrecondApply identity_preconditioner();

/// PCG with relative stopping rule ||b - A x_k|| <= rel_tol * ||b - A x_0||.
/// Convergence is only declared on a recomputed true residual; a
/// non-positive p^T A p aborts with an exception, running out of iterations
/// just reports converged = false.
std::pair<std::vector<double>, SolveReport> pcg(
    const SparseMatrix& A, const std::vector<double>& b,
    const PrecondApply& precond, const PcgOptions& options,
    std::vector<double> x0 = {});

}  // namespace stokesdd
