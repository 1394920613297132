#pragma once

#include <vector>

#include "stokesdd/types.hpp"

namespace stokesdd {

/// Quadrature point on the reference tetrahedron {x,y,z >= 0, x+y+z <= 1}.
/// Weights sum to one; integrate f over a physical tet T as
/// |T| * sum_q w_q f(x_q).
struct QuadPoint {
  Vec3 xi;
  double weight;
};

/// Smallest symmetric rule exact for polynomials up to `degree` (max 6).
const std::vector<QuadPoint>& tet_quadrature(int degree);

}  // namespace stokesdd
