#ifndef BEAMLAB_TIMESTEP_HPP
#define BEAMLAB_TIMESTEP_HPP

#include <utility>

#include "beamlab/assembly.hpp"

namespace beamlab {

// Energy/dissipation history of a simulation. dissipation[i] is the sampled
// quadratic form v^T D v at t_i.
struct Trajectory {
  std::vector<double> times;
  std::vector<double> energies;
  std::vector<double> dissipation;

  std::size_t size() const { return times.size(); }
};

struct DecayFit {
  double exponent = 0.0;  // r in E(t) ~ prefactor * (1+t)^{-r}
  double prefactor = 0.0;
  std::pair<double, double> window{0.0, 0.0};
  double residual = 0.0; // RMS of the log-log fit residuals
  int samples_used = 0;
};

// Implicit midpoint rule for U' = A_h U with A_h U = (v, -M^{-1}(Ku + Dv)).
// A-stable, contractive in the G-norm for this dissipative system, and an
// exact G-isometry when D = 0. The shifted system matrix
// M + (dt/2) D + (dt^2/4) K is factored once and reused across steps.
class MidpointStepper {
public:
  MidpointStepper(const AssembledSystem& sys, double dt);

  double dt() const { return dt_; }
  RealState step(const RealState& s) const;

private:
  const AssembledSystem& sys_;
  double dt_;
  BandMatrix<double> rhs_op_; // M - (dt/2) D - (dt^2/4) K
  BandLU<double> lu_;
};

struct SimulationResult {
  Trajectory trajectory;
  RealState final_state;
};

// Integrate from (u0,v0) to time T with fixed step dt (ceil(T/dt) steps).
// Aborts with Error(numeric) naming the step index if the state degenerates.
SimulationResult simulate(const AssembledSystem& sys, const Vec& u0,
                          const Vec& v0, double time_horizon, double dt);

// Default smooth clamped-compatible data: u0 interpolates (1-x^2)^2, v0 = 0.
RealState default_initial_state(const AssembledSystem& sys);

// Least-squares slope of log E against log(1+t) over the window given as
// fractions of the final time. Samples below 1e-12 * E(0) are excluded.
DecayFit fit_decay(const Trajectory& traj,
                   std::pair<double, double> window_fractions = {0.1, 1.0});

// True when energies are nonincreasing up to a per-step relative slack.
bool energies_nonincreasing(const Trajectory& traj, double rel_slack = 1e-10);

} // namespace beamlab

#endif
