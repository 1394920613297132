#include "stokesdd/quadrature.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace stokesdd {

namespace {

/// Expands a barycentric orbit: all distinct permutations of the four given
/// barycentric values, each with the same weight. The point stores the last
/// three coordinates; the first is implied.
void add_orbit(std::vector<QuadPoint>& pts, std::array<double, 4> bary,
               double w) {
  std::sort(bary.begin(), bary.end());
  do {
    pts.push_back({{bary[1], bary[2], bary[3]}, w});
  } while (std::next_permutation(bary.begin(), bary.end()));
}

std::vector<QuadPoint> make_degree1() {
  return {{{0.25, 0.25, 0.25}, 1.0}};
}

std::vector<QuadPoint> make_degree2() {
  std::vector<QuadPoint> pts;
  const double a = 0.58541019662496845446;
  const double b = 0.13819660112501051518;
  add_orbit(pts, {a, b, b, b}, 0.25);
  return pts;
}

std::vector<QuadPoint> make_degree5() {
  std::vector<QuadPoint> pts;
  const double b1 = 0.31088591926330050000;
  const double b2 = 0.09273525031089122640;
  const double c = 0.04550370412564964949;
  add_orbit(pts, {1.0 - 3.0 * b1, b1, b1, b1}, 0.11268792571801585080);
  add_orbit(pts, {1.0 - 3.0 * b2, b2, b2, b2}, 0.07349304311636194954);
  add_orbit(pts, {c, c, 0.5 - c, 0.5 - c}, 0.04254602077708146643);
  return pts;
}

std::vector<QuadPoint> make_degree6() {
  std::vector<QuadPoint> pts;
  const double b1 = 0.21460287125915202929;
  const double b2 = 0.04067395853461135312;
  const double b3 = 0.32233789014227551034;
  const double a4 = 0.06366100187501752529;
  const double c4 = 0.60300566479164914137;
  add_orbit(pts, {1.0 - 3.0 * b1, b1, b1, b1}, 0.03992275025816749210);
  add_orbit(pts, {1.0 - 3.0 * b2, b2, b2, b2}, 0.01007721105532064294);
  add_orbit(pts, {1.0 - 3.0 * b3, b3, b3, b3}, 0.05535718154365472210);
  add_orbit(pts, {a4, a4, 1.0 - 2.0 * a4 - c4, c4}, 0.04821428571428571429);
  return pts;
}

}  // namespace

const std::vector<QuadPoint>& tet_quadrature(int degree) {
  static const std::vector<QuadPoint> d1 = make_degree1();
  static const std::vector<QuadPoint> d2 = make_degree2();
  static const std::vector<QuadPoint> d5 = make_degree5();
  static const std::vector<QuadPoint> d6 = make_degree6();
  if (degree <= 1) return d1;
  if (degree == 2) return d2;
  if (degree <= 5) return d5;
  if (degree == 6) return d6;
  throw std::invalid_argument("tet_quadrature: no rule beyond degree 6");
}

}  // namespace stokesdd
