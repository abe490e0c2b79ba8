#include "beamlab/hermite.hpp"

#include <cmath>
#include <sstream>

#include "beamlab/error.hpp"
#include "beamlab/quadrature.hpp"

namespace beamlab {
namespace hermite {

ElementMatrix mass_element(double h) {
  // shape products are degree 6: 4-point Gauss is exact
  const GaussRule& rule = gauss_rule(4);
  ElementMatrix m{};
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double xi = 0.5 * (rule.nodes[q] + 1.0);
    const double w = 0.5 * rule.weights[q] * h;
    const auto n = shape(xi, h);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) m[i][j] += w * n[i] * n[j];
  }
  return m;
}

ElementMatrix stiffness_element(double h) {
  // second derivatives are linear in xi: 2-point Gauss is exact
  const GaussRule& rule = gauss_rule(2);
  ElementMatrix k{};
  for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
    const double xi = 0.5 * (rule.nodes[q] + 1.0);
    const double w = 0.5 * rule.weights[q] * h;
    const auto d2 = shape_d2(xi, h);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) k[i][j] += w * d2[i] * d2[j];
  }
  return k;
}

ElementMatrix damping_element(const DampingProfile& profile, double x0,
                              double x1, double quad_tol) {
  ElementMatrix d{};
  if (x1 <= 0.0) return d; // b vanishes on (-1,0]
  const double h = x1 - x0;
  try {
    for (int i = 0; i < 4; ++i) {
      for (int j = i; j < 4; ++j) {
        auto f = [&](double x) {
          const double xi = (x - x0) / h;
          const auto d2 = shape_d2(xi, h);
          return eval_damping(profile, x) * d2[i] * d2[j];
        };
        // x^alpha has unbounded derivatives at 0 for alpha < 1: the element
        // touching the interface gets dyadic bisection toward 0
        const double v = (x0 == 0.0)
                             ? integrate_singular_left(f, x1, quad_tol)
                             : integrate_adaptive(f, x0, x1, quad_tol);
        d[i][j] = v;
        d[j][i] = v;
      }
    }
  } catch (const Error& e) {
    std::ostringstream msg;
    msg << "damping quadrature failed on element [" << x0 << "," << x1
        << "] (alpha=" << profile.alpha << "): " << e.what();
    throw Error(ErrorCode::numeric, msg.str());
  }
  return d;
}

} // namespace hermite
} // namespace beamlab
