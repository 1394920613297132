#include "stokesdd/stokes_penalty.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "stokesdd/parallel.hpp"
#include "stokesdd/quadrature.hpp"

namespace stokesdd {

namespace {

constexpr int kMaxDpe = 10;
constexpr index_t kChunk = 512;

/// Per-element integrals: scalar stiffness S, divergence functional d with
/// d[a][i] = integral of d phi_i / d x_a, and the load moments.
struct ElementKernel {
  double S[kMaxDpe][kMaxDpe];
  double d[3][kMaxDpe];
  double load[3][kMaxDpe];
  double volume;
};

void element_kernel(const FESpace& space, const Scenario& scenario,
                    index_t element, ElementKernel& k) {
  const int dpe = space.dofs_per_element();
  const TetGeometry geom = tet_geometry(*space.mesh, element);
  k.volume = geom.volume;
  for (int i = 0; i < dpe; ++i) {
    for (int j = 0; j < dpe; ++j) k.S[i][j] = 0.0;
    for (int a = 0; a < 3; ++a) k.d[a][i] = k.load[a][i] = 0.0;
  }

  const auto& rule = tet_quadrature(space.order == 2 ? 4 : 1);
  Vec3 ref_grads[kMaxDpe], grads[kMaxDpe];
  for (const QuadPoint& q : rule) {
    shape_gradients(space.order, q.xi, ref_grads);
    for (int i = 0; i < dpe; ++i)
      grads[i] = physical_gradient(geom, ref_grads[i]);
    for (int i = 0; i < dpe; ++i)
      for (int j = 0; j < dpe; ++j)
        k.S[i][j] += q.weight * dot(grads[i], grads[j]);
    for (int i = 0; i < dpe; ++i)
      for (int a = 0; a < 3; ++a) k.d[a][i] += q.weight * grads[i][a];
  }
  for (int i = 0; i < dpe; ++i) {
    for (int j = 0; j < dpe; ++j) k.S[i][j] *= geom.volume;
    for (int a = 0; a < 3; ++a) k.d[a][i] *= geom.volume;
  }

  if (scenario.body_force) {
    const auto& load_rule = tet_quadrature(6);
    double vals[kMaxDpe];
    for (const QuadPoint& q : load_rule) {
      shape_values(space.order, q.xi, vals);
      const Vec3 f = scenario.body_force(map_to_physical(geom, q.xi));
      for (int i = 0; i < dpe; ++i)
        for (int a = 0; a < 3; ++a)
          k.load[a][i] += q.weight * f[a] * vals[i];
    }
    for (int i = 0; i < dpe; ++i)
      for (int a = 0; a < 3; ++a) k.load[a][i] *= geom.volume;
  }
}

/// Sorted scalar-node adjacency (self included) in CSR-like form.
struct NodeAdjacency {
  std::vector<index_t> offsets;
  std::vector<index_t> nodes;
};

NodeAdjacency build_adjacency(const FESpace& space) {
  const int dpe = space.dofs_per_element();
  NodeAdjacency adj;
  adj.offsets.assign(space.n_scalar + 1, 0);
  for (const auto& dofs : space.element_dofs)
    for (int i = 0; i < dpe; ++i) adj.offsets[dofs[i] + 1] += dpe;
  for (index_t s = 0; s < space.n_scalar; ++s)
    adj.offsets[s + 1] += adj.offsets[s];

  adj.nodes.resize(adj.offsets.back());
  std::vector<index_t> next(adj.offsets.begin(), adj.offsets.end() - 1);
  for (const auto& dofs : space.element_dofs)
    for (int i = 0; i < dpe; ++i)
      for (int j = 0; j < dpe; ++j) adj.nodes[next[dofs[i]]++] = dofs[j];

  // Dedup in place; offsets shrink accordingly.
  index_t write = 0;
  index_t row_begin = 0;
  for (index_t s = 0; s < space.n_scalar; ++s) {
    const index_t row_end = adj.offsets[s + 1];
    std::sort(adj.nodes.begin() + row_begin, adj.nodes.begin() + row_end);
    const index_t new_begin = write;
    for (index_t p = row_begin; p < row_end; ++p)
      if (p == row_begin || adj.nodes[p] != adj.nodes[p - 1])
        adj.nodes[write++] = adj.nodes[p];
    row_begin = row_end;
    adj.offsets[s] = new_begin;
    adj.offsets[s + 1] = write;
  }
  adj.nodes.resize(write);
  return adj;
}

index_t position_in_row(const NodeAdjacency& adj, index_t node,
                        index_t neighbor) {
  const index_t* first = adj.nodes.data() + adj.offsets[node];
  const index_t* last = adj.nodes.data() + adj.offsets[node + 1];
  return static_cast<index_t>(std::lower_bound(first, last, neighbor) - first);
}

}  // namespace

AssembledSystem assemble(const FESpace& space, const Scenario& scenario,
                         int nthreads) {
  if (!(scenario.epsilon > 0.0) || scenario.epsilon > 1.0)
    throw std::invalid_argument("assemble: epsilon must lie in (0, 1]");
  const int dpe = space.dofs_per_element();
  const index_t ns = space.n_scalar;
  const index_t ne = space.mesh->n_tets();

  const NodeAdjacency adj = build_adjacency(space);

  // Pattern: the row of (component a, node i) holds three copies of i's
  // node adjacency, one per component block, already sorted.
  AssembledSystem sys;
  SparseMatrix& A = sys.A;
  A.nrows = A.ncols = space.n_dofs();
  A.symmetric = true;
  A.row_offsets.assign(A.nrows + 1, 0);
  for (int a = 0; a < 3; ++a)
    for (index_t s = 0; s < ns; ++s)
      A.row_offsets[space.vdof(a, s) + 1] =
          3 * (adj.offsets[s + 1] - adj.offsets[s]);
  for (index_t r = 0; r < A.nrows; ++r)
    A.row_offsets[r + 1] += A.row_offsets[r];
  A.col_indices.resize(A.row_offsets.back());
  A.values.assign(A.row_offsets.back(), 0.0);
  for (int a = 0; a < 3; ++a)
    for (index_t s = 0; s < ns; ++s) {
      index_t p = A.row_offsets[space.vdof(a, s)];
      for (int b = 0; b < 3; ++b)
        for (index_t q = adj.offsets[s]; q < adj.offsets[s + 1]; ++q)
          A.col_indices[p++] = space.vdof(b, adj.nodes[q]);
    }

  sys.b.assign(A.nrows, 0.0);
  const double inv_eps = 1.0 / scenario.epsilon;

  // Kernels for a chunk of elements run in parallel; the scatter into the
  // global matrix is serial and in element order.
  std::vector<ElementKernel> kernels(std::min(kChunk, ne));
  for (index_t chunk_begin = 0; chunk_begin < ne; chunk_begin += kChunk) {
    const index_t chunk_end = std::min(chunk_begin + kChunk, ne);
    parallel_for_ranges(chunk_end - chunk_begin, nthreads,
                        [&](index_t lo, index_t hi) {
                          for (index_t e = lo; e < hi; ++e)
                            element_kernel(space, scenario, chunk_begin + e,
                                           kernels[e]);
                        });

    for (index_t e = chunk_begin; e < chunk_end; ++e) {
      const ElementKernel& k = kernels[e - chunk_begin];
      const auto& dofs = space.element_dofs[e];
      const double pscale = inv_eps / k.volume;
      for (int i = 0; i < dpe; ++i) {
        const index_t ni = dofs[i];
        const index_t deg = adj.offsets[ni + 1] - adj.offsets[ni];
        for (int j = 0; j < dpe; ++j) {
          const index_t pos = position_in_row(adj, ni, dofs[j]);
          for (int a = 0; a < 3; ++a) {
            double* row_vals =
                A.values.data() + A.row_offsets[space.vdof(a, ni)];
            for (int b = 0; b < 3; ++b) {
              // The inner product is grouped first so the (J,I) twin sees
              // the bitwise-identical value and A stays exactly symmetric.
              double v = pscale * (k.d[a][i] * k.d[b][j]);
              if (a == b) v += k.S[i][j];
              row_vals[b * deg + pos] += v;
            }
          }
        }
        for (int a = 0; a < 3; ++a)
          sys.b[space.vdof(a, ni)] += k.load[a][i];
      }
    }
  }
  return sys;
}

std::vector<index_t> apply_dirichlet(SparseMatrix& A, std::vector<double>& b,
                                     const FESpace& space,
                                     const Scenario& scenario) {
  if (A.nrows != space.n_dofs() ||
      static_cast<index_t>(b.size()) != A.nrows)
    throw std::invalid_argument("apply_dirichlet: system size mismatch");
  const Mesh& mesh = *space.mesh;
  const index_t nv = mesh.n_vertices();

  std::vector<char> is_set(space.n_scalar, 0);
  std::vector<Vec3> value(space.n_scalar);

  for (const auto& [marker, g] : scenario.dirichlet) {
    std::vector<index_t> nodes = boundary_vertices(mesh, marker);
    if (nodes.empty())
      throw std::invalid_argument("apply_dirichlet: no boundary faces with marker " +
                                  std::to_string(marker));
    if (space.order == 2)
      for (index_t e : boundary_edges(mesh, marker)) nodes.push_back(nv + e);
    for (index_t s : nodes) {
      const Vec3 v = g(space.dof_coords[s]);
      if (is_set[s]) {
        for (int a = 0; a < 3; ++a)
          if (std::abs(value[s][a] - v[a]) >
              1e-12 * (1.0 + std::abs(value[s][a])))
            throw std::runtime_error(
                "apply_dirichlet: conflicting boundary values at dof " +
                std::to_string(space.vdof(a, s)));
      }
      is_set[s] = 1;
      value[s] = v;
    }
  }

  std::vector<char> constrained(A.nrows, 0);
  std::vector<double> gval(A.nrows, 0.0);
  std::vector<index_t> out;
  for (int a = 0; a < 3; ++a)
    for (index_t s = 0; s < space.n_scalar; ++s)
      if (is_set[s]) {
        const index_t r = space.vdof(a, s);
        constrained[r] = 1;
        gval[r] = value[s][a];
        out.push_back(r);
      }
  std::sort(out.begin(), out.end());

  for (index_t i = 0; i < A.nrows; ++i) {
    if (constrained[i]) {
      for (index_t p = A.row_offsets[i]; p < A.row_offsets[i + 1]; ++p)
        A.values[p] = A.col_indices[p] == i ? 1.0 : 0.0;
      b[i] = gval[i];
    } else {
      for (index_t p = A.row_offsets[i]; p < A.row_offsets[i + 1]; ++p) {
        const index_t j = A.col_indices[p];
        if (constrained[j]) {
          b[i] -= A.values[p] * gval[j];
          A.values[p] = 0.0;
        }
      }
    }
  }
  return out;
}

double elementwise_avg_divergence(const FESpace& space, index_t element,
                                  const std::vector<double>& local_coeffs) {
  const int dpe = space.dofs_per_element();
  if (static_cast<int>(local_coeffs.size()) != 3 * dpe)
    throw std::invalid_argument(
        "elementwise_avg_divergence: wrong coefficient count");
  const TetGeometry geom = tet_geometry(*space.mesh, element);
  const auto& rule = tet_quadrature(space.order == 2 ? 1 : 0);

  Vec3 ref_grads[kMaxDpe];
  double avg = 0.0;
  for (const QuadPoint& q : rule) {
    shape_gradients(space.order, q.xi, ref_grads);
    double div = 0.0;
    for (int i = 0; i < dpe; ++i) {
      const Vec3 g = physical_gradient(geom, ref_grads[i]);
      for (int a = 0; a < 3; ++a) div += local_coeffs[a * dpe + i] * g[a];
    }
    avg += q.weight * div;
  }
  return avg;
}

double l2_error(const FESpace& space, const std::vector<double>& u_h,
                const std::function<Vec3(const Vec3&)>& u_ref) {
  if (static_cast<index_t>(u_h.size()) != space.n_dofs())
    throw std::invalid_argument("l2_error: coefficient size mismatch");
  if (!u_ref) throw std::invalid_argument("l2_error: reference field required");
  const int dpe = space.dofs_per_element();
  const auto& rule = tet_quadrature(6);

  double total = 0.0;
  double vals[kMaxDpe];
  for (index_t t = 0; t < space.mesh->n_tets(); ++t) {
    const TetGeometry geom = tet_geometry(*space.mesh, t);
    const auto& dofs = space.element_dofs[t];
    double cell = 0.0;
    for (const QuadPoint& q : rule) {
      shape_values(space.order, q.xi, vals);
      Vec3 uh = {0.0, 0.0, 0.0};
      for (int i = 0; i < dpe; ++i)
        for (int a = 0; a < 3; ++a)
          uh[a] += u_h[space.vdof(a, dofs[i])] * vals[i];
      const Vec3 d = u_ref(map_to_physical(geom, q.xi)) - uh;
      cell += q.weight * dot(d, d);
    }
    total += geom.volume * cell;
  }
  return std::sqrt(total);
}

namespace {

double bump(double t) {
  const double t2 = t * t;
  return t2 - 2.0 * t2 * t2 + t2 * t2 * t2;
}
double bump1(double t) {
  const double t2 = t * t;
  return 2.0 * t - 8.0 * t2 * t + 6.0 * t2 * t2 * t;
}
double bump2(double t) {
  const double t2 = t * t;
  return 2.0 - 24.0 * t2 + 30.0 * t2 * t2;
}
double bump3(double t) { return -48.0 * t + 120.0 * t * t * t; }

}  // namespace

Vec3 vortex_velocity(const Vec3& x) {
  return {bump(x[0]) * bump1(x[1]), -bump(x[1]) * bump1(x[0]), 0.0};
}

double vortex_pressure(const Vec3& x) { return x[0] * (1.0 - x[0]); }

Vec3 vortex_body_force(const Vec3& x) {
  return {-bump2(x[0]) * bump1(x[1]) - bump(x[0]) * bump3(x[1]) +
              (1.0 - 2.0 * x[0]),
          bump2(x[1]) * bump1(x[0]) + bump(x[1]) * bump3(x[0]), 0.0};
}

double vortex_divergence(const Vec3& x) {
  return bump1(x[0]) * bump1(x[1]) - bump1(x[1]) * bump1(x[0]);
}

}  // namespace stokesdd
