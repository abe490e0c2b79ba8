#ifndef BEAMLAB_HERMITE_HPP
#define BEAMLAB_HERMITE_HPP

#include <array>

#include "beamlab/damping.hpp"

namespace beamlab {

// Cubic Hermite element on [x0,x1] with value+slope degrees of freedom at
// each end: the minimal C^1 (H^2-conforming) choice for fourth-order forms.
// Local DOF order: (u0, u0', u1, u1'). xi = (x-x0)/h in [0,1].
namespace hermite {

inline std::array<double, 4> shape(double xi, double h) {
  const double xi2 = xi * xi, xi3 = xi2 * xi;
  return {1.0 - 3.0 * xi2 + 2.0 * xi3, h * (xi - 2.0 * xi2 + xi3),
          3.0 * xi2 - 2.0 * xi3, h * (xi3 - xi2)};
}

// d/dx
inline std::array<double, 4> shape_d1(double xi, double h) {
  const double xi2 = xi * xi;
  return {(-6.0 * xi + 6.0 * xi2) / h, 1.0 - 4.0 * xi + 3.0 * xi2,
          (6.0 * xi - 6.0 * xi2) / h, 3.0 * xi2 - 2.0 * xi};
}

// d2/dx2
inline std::array<double, 4> shape_d2(double xi, double h) {
  return {(-6.0 + 12.0 * xi) / (h * h), (-4.0 + 6.0 * xi) / h,
          (6.0 - 12.0 * xi) / (h * h), (6.0 * xi - 2.0) / h};
}

using ElementMatrix = std::array<std::array<double, 4>, 4>;

// integral of N_i N_j over the element
ElementMatrix mass_element(double h);

// integral of N_i'' N_j'' over the element
ElementMatrix stiffness_element(double h);

// integral of b(x) N_i'' N_j'' over [x0,x1], each entry to quad_tol.
// Throws Error(numeric) naming the element when the quadrature fails.
ElementMatrix damping_element(const DampingProfile& profile, double x0,
                              double x1, double quad_tol);

} // namespace hermite
} // namespace beamlab

#endif
