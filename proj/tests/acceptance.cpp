// Acceptance suite: one line per criterion. Run with no arguments for the
// whole suite, or with a criterion number to run one.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "beamlab/assembly.hpp"
#include "beamlab/ineq.hpp"
#include "beamlab/ratecalc.hpp"
#include "beamlab/resolvent.hpp"
#include "beamlab/timestep.hpp"

using namespace beamlab;

namespace {

struct Criterion {
  int id;
  const char* title;
  bool (*run)(std::string& detail);
};

bool contains(const std::vector<std::string>& v, const char* needle) {
  for (const auto& s : v)
    if (s.find(needle) != std::string::npos) return true;
  return false;
}

// 1: gamma*tau == 2, one-sided branch limits, peak 5/2 at 5/3
bool criterion1(std::string& detail) {
  bool ok = true;
  double worst = 0.0;
  for (int i = 1; i <= 50; ++i) {
    const double a = 5.0 * i / 51.0;
    worst = std::max(worst, std::abs(gamma_closed(a) * tau_closed(a) - 2.0));
  }
  ok &= worst <= 1e-12;
  const BranchValues b1 = tau_one_sided(5.0 / 3.0);
  const BranchValues b2 = tau_one_sided(3.0);
  ok &= std::abs(b1.left - b1.right) <= 1e-12;
  ok &= std::abs(b2.left - b2.right) <= 1e-12;
  ok &= std::abs(tau_closed(5.0 / 3.0) - 2.5) <= 1e-12;
  double peak = 0.0;
  for (int i = 1; i < 5000; ++i) peak = std::max(peak, tau_closed(5.0 * i / 5000.0));
  ok &= peak <= 2.5 + 1e-12;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "max |gamma*tau-2| = %.2e, branch jumps %.2e / %.2e, peak %.15g",
                worst, std::abs(b1.left - b1.right), std::abs(b2.left - b2.right),
                peak);
  detail = buf;
  return ok;
}

// 2: optimizer matches the closed form and the documented active sets
bool criterion2(std::string& detail) {
  const double alphas[] = {0.5,  1.0,         1.5,  5.0 / 3 - 0.01,
                           5.0 / 3 + 0.01, 2.0, 2.5, 3.0 - 0.01,
                           3.5,  4.0,         4.5};
  bool ok = true;
  double worst = 0.0;
  std::string bad_active;
  for (double a : alphas) {
    const RateResult r = optimize_gamma(a);
    const double err = std::abs(r.gamma_star - gamma_closed(a));
    worst = std::max(worst, err);
    if (err > 5e-3) ok = false;
    bool active_ok = true;
    if (a < 5.0 / 3.0)
      active_ok = contains(r.active_constraints, "(3-alpha)*delta") &&
                  contains(r.active_constraints, "(beta-1)*delta+2");
    else if (a < 3.0 + 1e-9)
      active_ok = contains(r.active_constraints, "(beta-1)*delta+2") &&
                  contains(r.active_constraints, "(alpha+3)*delta-2");
    else
      active_ok = contains(r.active_constraints, "(alpha+3)*delta-2") &&
                  contains(r.active_constraints, "interval lower bound");
    if (!active_ok) {
      ok = false;
      bad_active += " alpha=" + std::to_string(a);
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "max |gamma_num - gamma_closed| = %.2e%s",
                worst,
                bad_active.empty() ? "" : (", bad active set at" + bad_active).c_str());
  detail = buf;
  return ok;
}

// 3: exact conservation for kappa=0 and the discrete dissipation identity
bool criterion3(std::string& detail) {
  bool ok = true;
  const auto undamped = assemble(build_mesh(64, 1.0),
                                 DampingProfile::pure_power(1.0, 0.0), 1e-10);
  const RealState s0 = default_initial_state(undamped);
  const auto cons = simulate(undamped, s0.u, s0.v, 10.0, 1e-3); // 1e4 steps
  double drift = 0.0;
  const double e0 = cons.trajectory.energies.front();
  for (double e : cons.trajectory.energies)
    drift = std::max(drift, std::abs(e - e0) / e0);
  ok &= drift <= 1e-10;

  const auto damped = assemble(build_mesh(64, 1.0),
                               DampingProfile::pure_power(1.0, 1.0), 1e-10);
  const RealState d0 = default_initial_state(damped);
  auto run_residual = [&](double dt) {
    const auto res = simulate(damped, d0.u, d0.v, 2.0, dt);
    const auto& tr = res.trajectory;
    double r = 0.0;
    bool strict = true;
    for (std::size_t i = 1; i < tr.size(); ++i) {
      r += std::abs(tr.energies[i] - tr.energies[i - 1] +
                    dt * 0.5 * (tr.dissipation[i] + tr.dissipation[i - 1]));
      strict &= tr.energies[i] < tr.energies[i - 1];
    }
    return std::pair<double, bool>(r, strict);
  };
  const auto [r1, strict1] = run_residual(2e-3);
  const auto [r2, strict2] = run_residual(1e-3);
  const double ratio = r1 / r2;
  ok &= strict1 && strict2;
  ok &= ratio >= 3.4 && ratio <= 4.6;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "kappa=0 drift %.2e, dissipation residual ratio %.3g, strict "
                "decrease %s",
                drift, ratio, (strict1 && strict2) ? "yes" : "NO");
  detail = buf;
  return ok;
}

// 4: strong stability proxy on the graded mesh
bool criterion4(std::string& detail) {
  const auto sys = assemble(build_mesh(256, 1.03),
                            DampingProfile::pure_power(1.0, 1.0), 1e-10);
  const RealState s0 = default_initial_state(sys);
  const auto res = simulate(sys, s0.u, s0.v, 200.0, 0.02);
  const double ratio =
      res.trajectory.energies.back() / res.trajectory.energies.front();
  const DecayFit fit = fit_decay(res.trajectory);
  const bool ok = ratio < 1e-2 && fit.exponent > 0.0 &&
                  energies_nonincreasing(res.trajectory);
  char buf[160];
  std::snprintf(buf, sizeof buf, "E(T)/E(0) = %.3e, fitted r = %.3g", ratio,
                fit.exponent);
  detail = buf;
  return ok;
}

// 5: resolvent growth probe (implemented exactly as specified)
bool criterion5(std::string& detail) {
  const auto sys512 = assemble(build_mesh(512, 1.02),
                               DampingProfile::pure_power(1.0, 1.0), 1e-10);
  const auto grid = log_spaced(1e2, std::pow(10.0, 3.5), 25);
  const auto samples = sweep(sys512, grid, 1e-5, 50000, 2);
  const GammaFit fit = fit_gamma(samples);
  const double target = gamma_closed(1.0);
  const bool gamma_ok = std::abs(fit.gamma_num - target) <= 0.35;
  const bool residual_ok = fit.residual <= 0.2;

  // mesh-consistency at a fixed interior frequency
  const double lam = std::pow(10.0, 2.5);
  double norms[3];
  int idx = 0;
  for (int n : {128, 256, 512}) {
    const auto sys = assemble(build_mesh(n, 1.02),
                              DampingProfile::pure_power(1.0, 1.0), 1e-10);
    norms[idx++] = resolvent_norm(sys, lam, 1e-5, 50000).norm;
  }
  const bool mesh_ok = std::abs(norms[2] - norms[1]) < std::abs(norms[1] - norms[0]);

  char buf[240];
  std::snprintf(buf, sizeof buf,
                "gamma_num = %.3f (target %.3f +- 0.35: %s), fit residual = "
                "%.3f (<= 0.2: %s), mesh consistency |d512-256|=%.2e < "
                "|d256-128|=%.2e: %s",
                fit.gamma_num, target, gamma_ok ? "ok" : "FAIL", fit.residual,
                residual_ok ? "ok" : "FAIL", std::abs(norms[2] - norms[1]),
                std::abs(norms[1] - norms[0]), mesh_ok ? "ok" : "FAIL");
  detail = buf;
  return gamma_ok && residual_ok && mesh_ok;
}

// 6: Hardy bracket over seeded families plus side-condition sharpness
bool criterion6(std::string& detail) {
  bool ok = true;
  const std::pair<double, double> cases[] = {
      {0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}, {2.5, 0.5}};
  std::string parts;
  for (std::size_t i = 0; i < 4; ++i) {
    TestFunctionFamily family;
    family.kind = TestFunctionFamily::Kind::spline;
    family.count = 200;
    family.seed = 424242 + i;
    const HardyReport rep = check_hardy(family, cases[i].first, cases[i].second);
    const bool bracket = rep.max_ratio <= 2.0 * rep.K + 1e-9;
    ok &= bracket;
    char buf[80];
    std::snprintf(buf, sizeof buf, " (%g,%g): %.3f<=%.3f%s", cases[i].first,
                  cases[i].second, rep.max_ratio, 2.0 * rep.K,
                  bracket ? "" : " FAIL");
    parts += buf;
  }
  const double sharp = hardy_sharpness_ratio(3.0, 0.0);
  ok &= sharp > 1e3;
  char buf[80];
  std::snprintf(buf, sizeof buf, "; (3,0) concentration ratio %.3g", sharp);
  parts += buf;
  detail = "ratios vs 2K:" + parts;
  return ok;
}

// 7: interpolation inequality, dilation invariance and the linear witness
bool criterion7(std::string& detail) {
  TestFunctionFamily family;
  family.kind = TestFunctionFamily::Kind::polynomial;
  family.count = 100;
  family.seed = 424342;
  family.enforce_zero_at_one = false;
  std::vector<TestFn> fns = family.generate();
  fns.insert(fns.begin(), TestFn::linear());
  const InterpolationReport unit = check_interpolation(fns, 0.0, 1.0);
  const InterpolationReport big = check_interpolation(fns, 0.0, 10.0);
  double worst = 0.0;
  for (std::size_t i = 0; i < unit.ratios.size(); ++i)
    worst = std::max(worst, std::abs(unit.ratios[i] - big.ratios[i]));
  const bool ok = worst <= 1e-9 && unit.empirical_K >= 3.0 - 1e-9;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "dilation mismatch %.2e, empirical K = %.6g (witness 3)", worst,
                unit.empirical_K);
  detail = buf;
  return ok;
}

// 8: figure-1 curve shape
bool criterion8(std::string& detail) {
  const auto grid = default_alpha_grid();
  const auto table = figure1_table(grid);
  bool shape_ok = table.size() == 100;
  double peak_alpha = 0.0, peak = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table[i].tau > peak) {
      peak = table[i].tau;
      peak_alpha = table[i].alpha;
    }
    if (i == 0) continue;
    if (table[i].alpha <= 5.0 / 3.0 && !(table[i].tau > table[i - 1].tau))
      shape_ok = false;
    if (table[i - 1].alpha >= 5.0 / 3.0 && !(table[i].tau < table[i - 1].tau))
      shape_ok = false;
  }
  shape_ok &= peak_alpha == 5.0 / 3.0;
  const BranchValues at3 = tau_one_sided(3.0);
  shape_ok &= std::abs(at3.left - at3.right) <= 1e-12;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "peak tau %.3f at alpha %.6f, jump at 3 = %.2e", peak,
                peak_alpha, std::abs(at3.left - at3.right));
  detail = buf;
  return shape_ok;
}

const Criterion kCriteria[] = {
    {1, "closed-form rate table", criterion1},
    {2, "optimizer vs case analysis", criterion2},
    {3, "energy law", criterion3},
    {4, "strong stability proxy", criterion4},
    {5, "resolvent growth probe", criterion5},
    {6, "hardy suite", criterion6},
    {7, "interpolation suite", criterion7},
    {8, "figure-1 reproduction", criterion8},
};

} // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);
  int failures = 0;
  for (const Criterion& c : kCriteria) {
    if (only != 0 && c.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::printf("[%s] criterion %d: %s (%.1fs) -- %s\n", ok ? "PASS" : "FAIL",
                c.id, c.title, secs, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  return failures;
}
