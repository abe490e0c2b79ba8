#include "beamlab/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "beamlab/assembly.hpp"
#include "beamlab/error.hpp"
#include "beamlab/ineq.hpp"
#include "beamlab/ratecalc.hpp"
#include "beamlab/resolvent.hpp"
#include "beamlab/timestep.hpp"
#include "beamlab/version.hpp"

namespace beamlab {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class ArtifactWriter {
public:
  ArtifactWriter(const fs::path& dir, Manifest& manifest)
      : dir_(dir), manifest_(manifest) {}

  void write(const std::string& name, const std::string& body) {
    std::ofstream out(dir_ / name, std::ios::binary);
    if (!out)
      throw Error(ErrorCode::io, "cannot write artifact '" + name + "'");
    out << body;
    manifest_.artifacts.push_back({name, body.size(), fnv1a64_hex(body)});
  }

private:
  fs::path dir_;
  Manifest& manifest_;
};

std::map<std::string, std::string> config_to_map(const BeamConfig& cfg) {
  return {{"alpha", fmt(cfg.profile.alpha)},
          {"kappa", fmt(cfg.profile.kappa)},
          {"n_elements", std::to_string(cfg.n_elements)},
          {"grading", fmt(cfg.grading)},
          {"quad_tol", fmt(cfg.quad_tol)},
          {"time_horizon", fmt(cfg.time_horizon)},
          {"dt", fmt(cfg.dt)}};
}

AssembledSystem build_system(const BeamConfig& cfg) {
  return assemble(build_mesh(cfg.n_elements, cfg.grading), cfg.profile,
                  cfg.quad_tol);
}

void run_simulate(const BeamConfig& cfg, ArtifactWriter& w, int /*jobs*/) {
  const AssembledSystem sys = build_system(cfg);
  const RealState s0 = default_initial_state(sys);
  const SimulationResult res =
      simulate(sys, s0.u, s0.v, cfg.time_horizon, cfg.dt);
  const Trajectory& traj = res.trajectory;

  std::ostringstream csv;
  csv << "t,energy,dissipation\n";
  for (std::size_t i = 0; i < traj.size(); ++i)
    csv << fmt(traj.times[i]) << "," << fmt(traj.energies[i]) << ","
        << fmt(traj.dissipation[i]) << "\n";
  w.write("trajectory.csv", csv.str());

  json summary;
  summary["energy_initial"] = traj.energies.front();
  summary["energy_final"] = traj.energies.back();
  summary["energies_nonincreasing"] = energies_nonincreasing(traj);
  try {
    const DecayFit fit = fit_decay(traj);
    summary["decay_fit"] = {{"exponent", fit.exponent},
                            {"prefactor", fit.prefactor},
                            {"window", {fit.window.first, fit.window.second}},
                            {"residual", fit.residual},
                            {"samples_used", fit.samples_used}};
  } catch (const Error& e) {
    summary["decay_fit"] = {{"error", e.what()}};
  }
  w.write("simulate_summary.json", summary.dump(2) + "\n");

  // triplet export of the assembled operators for external cross-checks
  w.write("mass.mtx", triplet_string(sys.M()));
  w.write("stiffness.mtx", triplet_string(sys.K()));
  w.write("damping.mtx", triplet_string(sys.D()));
}

void run_resolvent(const BeamConfig& cfg, ArtifactWriter& w, int jobs,
                   Manifest& manifest) {
  const AssembledSystem sys = build_system(cfg);
  const double lo = 1e2, hi = std::pow(10.0, 3.5);
  const int count = 25;
  const double tol = 1e-5;
  const int max_iter = 50000;
  const std::vector<double> grid = log_spaced(lo, hi, count);
  const std::vector<ResolventSample> samples =
      sweep(sys, grid, tol, max_iter, jobs);

  std::ostringstream csv;
  csv << "lambda,norm,iterations,converged\n";
  for (const auto& s : samples)
    csv << fmt(s.lambda) << "," << fmt(s.norm) << "," << s.iterations << ","
        << (s.converged ? 1 : 0) << "\n";
  w.write("sweep.csv", csv.str());

  json summary;
  const double resolvable = std::pow(cfg.n_elements / 10.0, 2.0);
  summary["window"] = {lo, hi};
  summary["window_note"] =
      "resolvable lambda is roughly (n_elements/10)^2; re-derive the window "
      "when changing the mesh";
  summary["resolvable_lambda_estimate"] = resolvable;
  summary["mesh"] = {{"n_elements", cfg.n_elements},
                     {"grading", cfg.grading},
                     {"n_dof", sys.n()}};
  summary["seed"] = kResolventSeed;
  summary["power_iteration_tol"] = tol;
  try {
    const GammaFit fit = fit_gamma(samples);
    summary["gamma_num"] = fit.gamma_num;
    summary["fit_window"] = {fit.lambda_window.first, fit.lambda_window.second};
    summary["residual"] = fit.residual;
    summary["samples_used"] = fit.samples_used;
  } catch (const Error& e) {
    summary["fit_error"] = e.what();
  }
  manifest.seed = kResolventSeed;
  w.write("resolvent_summary.json", summary.dump(2) + "\n");
}

std::string figure1_csv(const std::vector<Figure1Row>& rows) {
  std::ostringstream csv;
  csv << "alpha,tau\n";
  for (const auto& r : rows) csv << fmt(r.alpha) << "," << fmt(r.tau) << "\n";
  return csv.str();
}

json figure1_metadata() {
  json meta;
  const BranchValues at_a = tau_one_sided(5.0 / 3.0);
  const BranchValues at_b = tau_one_sided(3.0);
  meta["branch_points"] = {5.0 / 3.0, 3.0};
  meta["tau_one_sided_at_5_3"] = {at_a.left, at_a.right};
  meta["tau_one_sided_at_3"] = {at_b.left, at_b.right};
  return meta;
}

void run_figure1(ArtifactWriter& w) {
  const auto rows = figure1_table(default_alpha_grid());
  w.write("figure1.csv", figure1_csv(rows));
  w.write("figure1_meta.json", figure1_metadata().dump(2) + "\n");
}

void run_rates(ArtifactWriter& w) {
  const std::vector<double> grid = default_alpha_grid();
  w.write("figure1.csv", figure1_csv(figure1_table(grid)));

  json rates = json::array();
  for (double a : grid) {
    const RateResult r = optimize_gamma(a);
    json item;
    item["alpha"] = a;
    item["gamma_star"] = r.gamma_star;
    item["delta_star"] = r.delta_star;
    item["gamma_closed"] = gamma_closed(a);
    item["tau_closed"] = tau_closed(a);
    item["branch"] = to_string(r.branch);
    item["active_constraints"] = r.active_constraints;
    item["eta_sensitivity"] = r.eta_sensitivity;
    rates.push_back(item);
  }
  json doc;
  doc["branch_points"] = figure1_metadata();
  doc["rates"] = rates;
  w.write("rates.json", doc.dump(2) + "\n");
}

void run_ineq(ArtifactWriter& w, Manifest& manifest) {
  const std::uint64_t base_seed = 424242;
  manifest.seed = base_seed;
  json doc;
  json hardy_cases = json::array();
  const std::vector<std::pair<double, double>> cases = {
      {0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}, {2.5, 0.5}};
  for (std::size_t i = 0; i < cases.size(); ++i) {
    TestFunctionFamily family;
    family.kind = TestFunctionFamily::Kind::spline;
    family.count = 200;
    family.seed = base_seed + i;
    family.enforce_zero_at_one = true;
    const HardyReport rep = check_hardy(family, cases[i].first, cases[i].second);
    json item;
    item["alpha"] = cases[i].first;
    item["beta"] = cases[i].second;
    item["K"] = rep.K;
    item["2K"] = 2.0 * rep.K;
    item["max_ratio"] = rep.max_ratio;
    item["bracket_holds"] = rep.max_ratio <= 2.0 * rep.K + 1e-9;
    item["seed"] = rep.seed;
    item["samples"] = rep.samples;
    item["skipped"] = rep.skipped;
    hardy_cases.push_back(item);
  }
  doc["hardy"] = hardy_cases;

  doc["hardy_sharpness"] = {{"alpha", 3.0},
                            {"beta", 0.0},
                            {"max_ratio", hardy_sharpness_ratio(3.0, 0.0)}};

  TestFunctionFamily interp_family;
  interp_family.kind = TestFunctionFamily::Kind::polynomial;
  interp_family.count = 100;
  interp_family.seed = base_seed + 100;
  interp_family.enforce_zero_at_one = false;
  std::vector<TestFn> fns = interp_family.generate();
  fns.insert(fns.begin(), TestFn::linear());
  const InterpolationReport unit = check_interpolation(fns, 0.0, 1.0);
  const InterpolationReport dilated = check_interpolation(fns, 0.0, 10.0);
  double worst_mismatch = 0.0;
  for (std::size_t i = 0; i < unit.ratios.size(); ++i)
    worst_mismatch = std::max(
        worst_mismatch, std::abs(unit.ratios[i] - dilated.ratios[i]));
  doc["interpolation"] = {{"empirical_K", unit.empirical_K},
                          {"empirical_K_dilated", dilated.empirical_K},
                          {"max_dilation_mismatch", worst_mismatch},
                          {"samples", unit.samples},
                          {"seed", interp_family.seed}};
  w.write("ineq_report.json", doc.dump(2) + "\n");
}

} // namespace

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string fnv1a64_hex(const std::string& data) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(data)));
  return buf;
}

Manifest run(const ExperimentSpec& spec) {
  const auto t0 = std::chrono::steady_clock::now();

  BeamConfig cfg;
  if (!spec.config_path.empty()) cfg = load_config_file(spec.config_path);
  for (const auto& [key, value] : spec.overrides)
    apply_override(cfg, key, value);
  const std::vector<std::string> violations = validate_config(cfg);
  if (!violations.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& v : violations) msg += "\n  - " + v;
    throw Error(ErrorCode::config, msg);
  }

  std::error_code ec;
  fs::create_directories(spec.out_dir, ec);
  if (ec)
    throw Error(ErrorCode::io,
                "cannot create output directory '" + spec.out_dir + "'");

  Manifest manifest;
  manifest.command = spec.command;
  manifest.config = config_to_map(cfg);
  ArtifactWriter writer(spec.out_dir, manifest);

  if (spec.command == "simulate")
    run_simulate(cfg, writer, spec.jobs);
  else if (spec.command == "resolvent")
    run_resolvent(cfg, writer, spec.jobs, manifest);
  else if (spec.command == "rates")
    run_rates(writer);
  else if (spec.command == "ineq")
    run_ineq(writer, manifest);
  else if (spec.command == "figure1")
    run_figure1(writer);
  else
    throw Error(ErrorCode::config, "unknown command '" + spec.command + "'");

  const auto t1 = std::chrono::steady_clock::now();
  manifest.wall_time_ms =
      std::chrono::duration<double, std::milli>(t1 - t0).count();

  json m;
  m["command"] = manifest.command;
  m["version"] = kVersion;
  m["config"] = manifest.config;
  m["seed"] = manifest.seed;
  m["wall_time_ms"] = manifest.wall_time_ms;
  json arts = json::array();
  for (const auto& a : manifest.artifacts)
    arts.push_back({{"name", a.name}, {"bytes", a.bytes}, {"fnv1a64", a.fnv1a64}});
  m["artifacts"] = arts;
  std::ofstream out(fs::path(spec.out_dir) / "manifest.json");
  if (!out) throw Error(ErrorCode::io, "cannot write manifest.json");
  out << m.dump(2) << "\n";
  return manifest;
}

} // namespace beamlab
