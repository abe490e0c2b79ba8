#include <doctest.h>

#include <cmath>

#include "beamlab/rng.hpp"
#include "beamlab/timestep.hpp"
#include "support/oracles.hpp"

using namespace beamlab;

namespace {

RealState random_smooth_state(const AssembledSystem& sys, std::uint64_t seed) {
  // interpolate a smooth random combination of clamped-compatible bumps
  Rng rng(seed);
  const double a = rng.normal(), b = rng.normal(), c = rng.normal();
  auto val = [=](double x) {
    const double t = 1 - x * x;
    return t * t * (a + b * x + c * x * x);
  };
  auto slp = [=](double x) {
    const double t = 1 - x * x;
    return -4 * x * t * (a + b * x + c * x * x) + t * t * (b + 2 * c * x);
  };
  RealState s(sys.n());
  s.u = sys.interpolate(val, slp);
  Rng rng2(seed + 1);
  const double d = rng2.normal(), e = rng2.normal();
  auto val2 = [=](double x) {
    const double t = 1 - x * x;
    return t * t * (d + e * x);
  };
  auto slp2 = [=](double x) {
    const double t = 1 - x * x;
    return -4 * x * t * (d + e * x) + t * t * e;
  };
  s.v = sys.interpolate(val2, slp2);
  return s;
}

} // namespace

TEST_CASE("zero state stays zero") {
  const auto sys = assemble(build_mesh(8, 1.0),
                            DampingProfile::pure_power(1.0, 1.0), 1e-10);
  MidpointStepper stepper(sys, 0.01);
  const RealState next = stepper.step(RealState(sys.n()));
  for (double u : next.u) CHECK(u == 0.0);
  for (double v : next.v) CHECK(v == 0.0);
}

TEST_CASE("undamped step is a G-isometry") {
  const auto sys = assemble(build_mesh(32, 1.0),
                            DampingProfile::pure_power(1.0, 0.0), 1e-10);
  const RealState s0 = random_smooth_state(sys, 21);
  MidpointStepper stepper(sys, 0.01);
  const double e0 = energy(sys, s0);
  const double e1 = energy(sys, stepper.step(s0));
  CHECK(std::abs(e1 - e0) <= 1e-12 * e0);
}

TEST_CASE("midpoint dissipation identity holds exactly per step") {
  // dE = -dt * v_mid^T D v_mid is an algebraic identity of the scheme
  const auto sys = assemble(build_mesh(64, 1.0),
                            DampingProfile::pure_power(1.0, 1.0), 1e-10);
  RealState s = random_smooth_state(sys, 33);
  const double dt = 1e-2;
  const double scale = energy(sys, s);
  MidpointStepper stepper(sys, dt);
  for (int k = 0; k < 20; ++k) {
    const RealState s1 = stepper.step(s);
    RealState mid(sys.n());
    for (int i = 0; i < sys.n(); ++i) mid.v[i] = 0.5 * (s.v[i] + s1.v[i]);
    const double de = energy(sys, s1) - energy(sys, s);
    CHECK(std::abs(de + dt * dissipation_rate(sys, mid)) <= 1e-10 * scale);
    s = s1;
  }
}

TEST_CASE("sampled-dissipation residual is second order globally") {
  // with the trapezoid of the stored per-sample dissipation the defect is
  // O(dt^3) per step, O(dt^2) summed: halving dt divides the total by ~4
  const auto sys = assemble(build_mesh(16, 1.0),
                            DampingProfile::pure_power(1.0, 1.0), 1e-10);
  const RealState s0 = default_initial_state(sys);
  auto global_residual = [&](double dt) {
    const auto res = simulate(sys, s0.u, s0.v, 2.0, dt);
    const auto& tr = res.trajectory;
    double r = 0.0;
    for (std::size_t i = 1; i < tr.size(); ++i)
      r += std::abs(tr.energies[i] - tr.energies[i - 1] +
                    dt * 0.5 * (tr.dissipation[i] + tr.dissipation[i - 1]));
    return r;
  };
  const double r1 = global_residual(1e-3);
  const double r2 = global_residual(5e-4);
  const double r3 = global_residual(2.5e-4);
  CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.15));
  CHECK(r2 / r3 == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("undamped simulation conserves energy over many steps") {
  const auto sys = assemble(build_mesh(16, 1.0),
                            DampingProfile::pure_power(1.0, 0.0), 1e-10);
  const RealState s0 = default_initial_state(sys);
  const auto res = simulate(sys, s0.u, s0.v, 10.0, 1e-3);
  const double e0 = res.trajectory.energies.front();
  for (double e : res.trajectory.energies)
    CHECK(std::abs(e - e0) <= 1e-10 * e0);
}

TEST_CASE("damped simulation strictly dissipates") {
  const auto sys = assemble(build_mesh(32, 1.0),
                            DampingProfile::pure_power(1.0, 1.0), 1e-10);
  const RealState s0 = default_initial_state(sys);
  const auto res = simulate(sys, s0.u, s0.v, 2.0, 1e-3);
  const auto& e = res.trajectory.energies;
  CHECK(e.back() < e.front());
  CHECK(energies_nonincreasing(res.trajectory));
  for (std::size_t i = 1; i < e.size(); ++i) CHECK(e[i] < e[i - 1]);
  // ceil(T/dt)+1 samples, final state returned alongside
  CHECK(res.trajectory.size() == 2001);
  CHECK(energy(sys, res.final_state) == doctest::Approx(e.back()).epsilon(1e-14));
}

TEST_CASE("eigenmode oscillates at the generalized eigenfrequency") {
  const auto sys = assemble(build_mesh(32, 1.0),
                            DampingProfile::pure_power(1.0, 0.0), 1e-10);
  const auto pair = oracles::smallest_eigenpair(sys);
  const double omega = std::sqrt(pair.value);
  RealState s(sys.n());
  s.u = pair.vector;

  // kinetic energy peaks every half period; track the first few maxima
  const double dt = 2e-4;
  MidpointStepper stepper(sys, dt);
  std::vector<double> kin;
  for (int k = 0; k < static_cast<int>(3.2 * 2 * M_PI / omega / dt); ++k) {
    s = stepper.step(s);
    kin.push_back(kinetic_energy(sys, s));
  }
  std::vector<double> peak_times;
  for (std::size_t i = 1; i + 1 < kin.size(); ++i)
    if (kin[i] > kin[i - 1] && kin[i] > kin[i + 1])
      peak_times.push_back((i + 1) * dt);
  REQUIRE(peak_times.size() >= 4);
  double spacing = 0.0;
  for (std::size_t i = 1; i < peak_times.size(); ++i)
    spacing += peak_times[i] - peak_times[i - 1];
  spacing /= (peak_times.size() - 1);
  CHECK(spacing == doctest::Approx(M_PI / omega).epsilon(0.01));
}

TEST_CASE("decay fit recovers synthetic power laws") {
  Trajectory traj;
  for (int i = 0; i <= 1000; ++i) {
    const double t = 1.0 + 99.0 * i / 1000.0;
    traj.times.push_back(t);
    traj.energies.push_back(std::pow(1.0 + t, -2.0));
    traj.dissipation.push_back(0.0);
  }
  const DecayFit fit = fit_decay(traj, {0.0, 1.0});
  CHECK(fit.exponent == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(fit.residual <= 1e-10);

  Trajectory flat;
  for (int i = 0; i <= 100; ++i) {
    flat.times.push_back(i * 0.1);
    flat.energies.push_back(3.5);
    flat.dissipation.push_back(0.0);
  }
  CHECK(fit_decay(flat, {0.0, 1.0}).exponent == doctest::Approx(0.0));
}

TEST_CASE("decay fit error paths") {
  Trajectory traj;
  for (int i = 0; i <= 30; ++i) {
    traj.times.push_back(i * 1.0);
    traj.energies.push_back(std::exp(-i));
    traj.dissipation.push_back(0.0);
  }
  CHECK_THROWS_AS(fit_decay(traj, {0.9, 0.2}), Error); // reversed window
  // all but a few samples under the 1e-12*E0 floor
  Trajectory tiny;
  for (int i = 0; i <= 30; ++i) {
    tiny.times.push_back(i * 1.0);
    tiny.energies.push_back(i == 0 ? 1.0 : 1e-300);
    tiny.dissipation.push_back(0.0);
  }
  CHECK_THROWS_AS(fit_decay(tiny, {0.0, 1.0}), Error);
}

TEST_CASE("default initial data interpolates the clamped bump") {
  const auto sys = assemble(build_mesh(8, 1.0),
                            DampingProfile::pure_power(1.0, 1.0), 1e-10);
  const RealState s = default_initial_state(sys);
  for (int node = 1; node < sys.mesh().n_nodes() - 1; ++node) {
    const double x = sys.mesh().nodes[node];
    const double t = 1 - x * x;
    CHECK(sys.eval(s.u, x) == doctest::Approx(t * t).epsilon(1e-14));
  }
  CHECK(energy(sys, s) > 0.0);
}

TEST_CASE("simulate validates its horizon") {
  const auto sys = assemble(build_mesh(8, 1.0),
                            DampingProfile::pure_power(1.0, 1.0), 1e-10);
  const RealState s = default_initial_state(sys);
  CHECK_THROWS_AS(simulate(sys, s.u, s.v, 0.5, 1.0), Error);
}
