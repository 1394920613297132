#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "stokesdd/fe_space.hpp"
#include "stokesdd/sparse_matrix.hpp"
#include "stokesdd/types.hpp"

namespace stokesdd {

/// Velocity-only penalty discretization: find u_h with
///   (grad u_h, grad v) + eps^{-1} (div_T u_h, div_T v) = (f, v)
/// where div_T is the divergence averaged over each element. The averaged
/// term makes the element penalty matrix rank one. eps must lie in (0, 1].
struct Scenario {
  double epsilon = 1.0;
  std::function<Vec3(const Vec3&)> body_force;  // null means zero load
  /// Boundary values per face marker; every listed marker must occur.
  std::vector<std::pair<int, std::function<Vec3(const Vec3&)>>> dirichlet;
  std::function<Vec3(const Vec3&)> reference_velocity;  // null means unknown
};

struct AssembledSystem {
  SparseMatrix A;  // symmetric, both triangles stored
  std::vector<double> b;
};

/// Assembles the full (unconstrained) system. Element kernels may be
/// computed in parallel; insertion into the global matrix happens in element
/// order, so the result is bitwise identical for any thread count.
AssembledSystem assemble(const FESpace& space, const Scenario& scenario,
                         int nthreads = 1);

/// Symmetric elimination of the Dirichlet dofs in place: constrained rows
/// and columns are zeroed keeping the structure, the diagonal becomes one,
/// and b is lifted by the boundary data. Returns the sorted constrained
/// vector dofs. Conflicting values at a shared dof raise an error naming it.
std::vector<index_t> apply_dirichlet(SparseMatrix& A, std::vector<double>& b,
                                     const FESpace& space,
                                     const Scenario& scenario);

/// Average of div u_h over one element; local coefficients are
/// component-major (all x values, then y, then z, in element dof order).
double elementwise_avg_divergence(const FESpace& space, index_t element,
                                  const std::vector<double>& local_coeffs);

/// || u_h - u_ref ||_{L2} with a quadrature rule one order beyond the
/// discretization error, evaluated element by element in index order.
double l2_error(const FESpace& space, const std::vector<double>& u_h,
                const std::function<Vec3(const Vec3&)>& u_ref);

/// Divergence-free vortex in the unit cube built from a(t) = t^2 (1 - t^2)^2
/// together with the pressure x (1 - x); the body force is the strong-form
/// residual -lap(u) + grad(p). The analytic divergence cancels term by term
/// even in floating point.
Vec3 vortex_velocity(const Vec3& x);
double vortex_pressure(const Vec3& x);
Vec3 vortex_body_force(const Vec3& x);
double vortex_divergence(const Vec3& x);

}  // namespace stokesdd
