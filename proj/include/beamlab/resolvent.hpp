#ifndef BEAMLAB_RESOLVENT_HPP
#define BEAMLAB_RESOLVENT_HPP

#include <cstdint>
#include <utility>

#include "beamlab/assembly.hpp"

namespace beamlab {

struct ResolventSample {
  double lambda = 0.0;
  double norm = 0.0; // operator norm of (i*lambda - A_h)^{-1} in the G-norm
  int iterations = 0;
  bool converged = false;
  double residual = 0.0; // Rayleigh-quotient residual certificate
};

struct GammaFit {
  double gamma_num = 0.0;
  std::pair<double, double> lambda_window{0.0, 0.0};
  double residual = 0.0; // RMS of the log-log fit residuals
  int samples_used = 0;
};

inline constexpr std::uint64_t kResolventSeed = 0x1ab5eedull;

// Discrete resolvent (i*lambda - A_h)^{-1} at a fixed real lambda. The
// second-order reduced system (K - lambda^2 M + i lambda D) u = rhs is
// factored once; v is recovered exactly from v = i*lambda*u - f. One step of
// iterative refinement keeps the solve residual near roundoff.
class ResolventOperator {
public:
  ResolventOperator(const AssembledSystem& sys, double lambda);

  double lambda() const { return lambda_; }
  bool singular() const { return singular_; }

  // U = (i*lambda - A_h)^{-1} F
  ComplexState apply(const ComplexState& f) const;
  // G-adjoint companion: W = R^H F in coefficient coordinates
  ComplexState apply_conj_transpose(const ComplexState& f) const;

private:
  CVec solve_refined(const CVec& rhs, bool adjoint) const;

  const AssembledSystem& sys_;
  double lambda_;
  BandMatrix<std::complex<double>> s_;
  BandLU<std::complex<double>> lu_;
  bool singular_ = false;
};

// Apply the forward operator (i*lambda - A_h) to U; used for residual
// certificates and round-trip checks.
ComplexState forward_apply(const AssembledSystem& sys, double lambda,
                           const ComplexState& u);

// Convenience single solve.
ComplexState resolvent_apply(const AssembledSystem& sys, double lambda,
                             const ComplexState& f);

// Largest G-singular value of the resolvent by power iteration on the
// G-selfadjoint operator G^{-1} R^H G R. Deterministic seeded start vector.
ResolventSample resolvent_norm(const AssembledSystem& sys, double lambda,
                               double tol = 1e-6, int max_iter = 20000,
                               std::uint64_t seed = kResolventSeed);

std::vector<double> log_spaced(double lo, double hi, int count);

// One sample per lambda, ascending; per-sample failures are reported in the
// samples themselves (converged=false), never abort the sweep.
std::vector<ResolventSample> sweep(const AssembledSystem& sys,
                                   const std::vector<double>& lambda_grid,
                                   double tol = 1e-6, int max_iter = 20000,
                                   int jobs = 1,
                                   std::uint64_t seed = kResolventSeed);

// Least-squares slope of log(norm) vs log(lambda) over converged samples.
GammaFit fit_gamma(const std::vector<ResolventSample>& samples);

} // namespace beamlab

#endif
