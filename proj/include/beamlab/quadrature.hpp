#ifndef BEAMLAB_QUADRATURE_HPP
#define BEAMLAB_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace beamlab {

// Gauss-Legendre rule on [-1,1]. Nodes/weights are computed once per order by
// Newton iteration on the Legendre recurrence and cached.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussRule& gauss_rule(int order);

// Fixed-order Gauss integration of f over [a,b].
double integrate_gauss(const std::function<double(double)>& f, double a,
                       double b, int order);

// Adaptive bisection with a 15-point Gauss base rule. The error indicator is
// the difference between one-panel and two-panel estimates; intervals are
// split until the indicator is below the local absolute tolerance.
// Throws Error(numeric) when max_depth is exceeded before convergence.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double abs_tol, int max_depth = 64);

// Integrate f over (0,b] when f may blow up at 0 (integrable power-type
// singularity). The interval is pre-split into dyadic slices shrinking toward
// 0 and each slice is integrated adaptively with a geometrically decaying
// share of the tolerance budget.
double integrate_singular_left(const std::function<double(double)>& f,
                               double b, double abs_tol);

} // namespace beamlab

#endif
