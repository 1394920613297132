#include "stokesdd/pcg.hpp"

#include <cmath>
#include <stdexcept>

namespace stokesdd {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

std::vector<double> true_residual(const SparseMatrix& A,
                                  const std::vector<double>& b,
                                  const std::vector<double>& x) {
  std::vector<double> r = spmv(A, x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
  return r;
}

}  // namespace

PrecondApply identity_preconditioner() {
  return [](const std::vector<double>& r, std::vector<double>& z) { z = r; };
}

std::pair<std::vector<double>, SolveReport> pcg(
    const SparseMatrix& A, const std::vector<double>& b,
    const PrecondApply& precond, const PcgOptions& options,
    std::vector<double> x0) {
  if (A.nrows != A.ncols) throw std::invalid_argument("pcg: matrix not square");
  const index_t n = A.nrows;
  if (static_cast<index_t>(b.size()) != n)
    throw std::invalid_argument("pcg: right-hand side has wrong length");
  if (x0.empty()) x0.assign(n, 0.0);
  if (static_cast<index_t>(x0.size()) != n)
    throw std::invalid_argument("pcg: initial guess has wrong length");

  SolveReport report;
  report.residual_history.push_back(1.0);

  std::vector<double> x = std::move(x0);
  std::vector<double> r = true_residual(A, b, x);
  const double r0_norm = norm2(r);
  if (r0_norm == 0.0) {
    report.converged = true;
    report.residual_history.push_back(0.0);
    return {std::move(x), std::move(report)};
  }

  std::vector<double> z(n), p, q(n);
  precond(r, z);
  if (static_cast<index_t>(z.size()) != n)
    throw std::invalid_argument("pcg: preconditioner changed the length");
  p = z;
  double rz = dot(r, z);

  for (index_t it = 1; it <= options.max_iterations; ++it) {
    spmv(A, p.data(), q.data());
    const double pq = dot(p, q);
    if (!(pq > 0.0))
      throw std::runtime_error(
          "pcg: p^T A p <= 0, operator or preconditioner is not SPD");
    const double alpha = rz / pq;
    for (index_t i = 0; i < n; ++i) x[i] += alpha * p[i];
    for (index_t i = 0; i < n; ++i) r[i] -= alpha * q[i];

    const double rel = norm2(r) / r0_norm;
    report.residual_history.push_back(rel);
    report.iterations = it;

    const bool checkpoint = (it % options.recompute_interval == 0);
    if (rel <= options.rel_tol || checkpoint) {
      // Replace the recurrence residual with the recomputed one; the
      // direction recurrence continues unchanged since the two agree up to
      // rounding.
      r = true_residual(A, b, x);
      if (rel <= options.rel_tol && norm2(r) / r0_norm <= options.rel_tol) {
        report.converged = true;
        return {std::move(x), std::move(report)};
      }
    }

    precond(r, z);
    const double rz_next = dot(r, z);
    const double beta = rz_next / rz;
    for (index_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    rz = rz_next;
  }
  return {std::move(x), std::move(report)};
}

}  // namespace stokesdd
