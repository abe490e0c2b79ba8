#include "beamlab/timestep.hpp"

#include <cmath>
#include <sstream>

namespace beamlab {

MidpointStepper::MidpointStepper(const AssembledSystem& sys, double dt)
    : sys_(sys), dt_(dt) {
  if (!(dt > 0.0))
    throw Error(ErrorCode::argument, "MidpointStepper: dt must be > 0");
  const double q = 0.25 * dt * dt;
  // S = M + (dt/2) D + (dt^2/4) K is SPD for dt > 0: factorization cannot fail
  BandMatrix<double> s = band_combine(sys.M(), 1.0, sys.K(), q);
  band_axpy(s, 0.5 * dt, sys.D());
  lu_ = BandLU<double>(std::move(s));
  if (lu_.singular())
    throw Error(ErrorCode::numeric, "MidpointStepper: midpoint system singular");
  rhs_op_ = band_combine(sys.M(), 1.0, sys.K(), -q);
  band_axpy(rhs_op_, -0.5 * dt, sys.D());
}

RealState MidpointStepper::step(const RealState& s) const {
  // [M + (dt/2)D + (dt^2/4)K] v1 = [M - (dt/2)D - (dt^2/4)K] v0 - dt K u0
  Vec rhs = rhs_op_.matvec(s.v);
  const Vec ku = sys_.K().matvec(s.u);
  for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] -= dt_ * ku[i];
  Vec v1 = lu_.solve(std::move(rhs));
  Vec u1 = s.u;
  for (std::size_t i = 0; i < u1.size(); ++i)
    u1[i] += 0.5 * dt_ * (s.v[i] + v1[i]);
  return RealState(std::move(u1), std::move(v1));
}

RealState default_initial_state(const AssembledSystem& sys) {
  const auto value = [](double x) {
    const double t = 1.0 - x * x;
    return t * t;
  };
  const auto slope = [](double x) { return -4.0 * x * (1.0 - x * x); };
  RealState s(sys.n());
  s.u = sys.interpolate(value, slope);
  return s;
}

SimulationResult simulate(const AssembledSystem& sys, const Vec& u0,
                          const Vec& v0, double time_horizon, double dt) {
  if (!(time_horizon > dt))
    throw Error(ErrorCode::argument, "simulate: time_horizon must exceed dt");
  MidpointStepper stepper(sys, dt);
  const int n_steps = static_cast<int>(std::ceil(time_horizon / dt));

  SimulationResult result;
  Trajectory& traj = result.trajectory;
  traj.times.reserve(n_steps + 1);
  traj.energies.reserve(n_steps + 1);
  traj.dissipation.reserve(n_steps + 1);

  RealState state(u0, v0);
  traj.times.push_back(0.0);
  traj.energies.push_back(energy(sys, state));
  traj.dissipation.push_back(dissipation_rate(sys, state));

  for (int k = 1; k <= n_steps; ++k) {
    state = stepper.step(state);
    const double e = energy(sys, state);
    if (!std::isfinite(e)) {
      std::ostringstream msg;
      msg << "simulate: state degenerated at step " << k << " (t=" << k * dt
          << ")";
      throw Error(ErrorCode::numeric, msg.str());
    }
    traj.times.push_back(k * dt);
    traj.energies.push_back(e);
    traj.dissipation.push_back(dissipation_rate(sys, state));
  }
  result.final_state = std::move(state);
  return result;
}

DecayFit fit_decay(const Trajectory& traj,
                   std::pair<double, double> window_fractions) {
  if (traj.size() < 2)
    throw Error(ErrorCode::argument, "fit_decay: trajectory too short");
  if (!(window_fractions.first < window_fractions.second))
    throw Error(ErrorCode::argument, "fit_decay: degenerate window");
  const double t_end = traj.times.back();
  const double t0 = window_fractions.first * t_end;
  const double t1 = window_fractions.second * t_end;
  const double e0 = traj.energies.front();
  const double floor = 1e-12 * e0;

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double t = traj.times[i];
    const double e = traj.energies[i];
    if (t < t0 || t > t1 || !(e > floor)) continue;
    const double x = std::log1p(t);
    const double y = std::log(e);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m < 16)
    throw Error(ErrorCode::numeric,
                "fit_decay: fewer than 16 usable samples in window");
  const double denom = m * sxx - sx * sx;
  if (!(std::abs(denom) > 0))
    throw Error(ErrorCode::numeric, "fit_decay: degenerate abscissae");
  const double slope = (m * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / m;

  double ss = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double t = traj.times[i];
    const double e = traj.energies[i];
    if (t < t0 || t > t1 || !(e > floor)) continue;
    const double r = std::log(e) - (intercept + slope * std::log1p(t));
    ss += r * r;
  }

  DecayFit fit;
  fit.exponent = -slope;
  fit.prefactor = std::exp(intercept);
  fit.window = {t0, t1};
  fit.residual = std::sqrt(ss / m);
  fit.samples_used = m;
  return fit;
}

bool energies_nonincreasing(const Trajectory& traj, double rel_slack) {
  for (std::size_t i = 1; i < traj.size(); ++i)
    if (traj.energies[i] > traj.energies[i - 1] * (1.0 + rel_slack))
      return false;
  return true;
}

} // namespace beamlab
