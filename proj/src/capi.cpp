#include "beamlab.h"

#include <cstring>
#include <string>

#include "beamlab/assembly.hpp"
#include "beamlab/damping.hpp"
#include "beamlab/error.hpp"
#include "beamlab/experiments.hpp"
#include "beamlab/ineq.hpp"
#include "beamlab/ratecalc.hpp"
#include "beamlab/resolvent.hpp"
#include "beamlab/timestep.hpp"
#include "beamlab/version.hpp"

using namespace beamlab;

namespace {

thread_local std::string g_last_error;

blab_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::argument: return BLAB_ERR_ARGUMENT;
    case ErrorCode::config: return BLAB_ERR_CONFIG;
    case ErrorCode::numeric: return BLAB_ERR_NUMERIC;
    case ErrorCode::io: return BLAB_ERR_IO;
  }
  return BLAB_ERR_NUMERIC;
}

template <typename Fn>
blab_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return BLAB_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return BLAB_ERR_NUMERIC;
  }
}

blab_status need(bool ok, const char* what) {
  if (ok) return BLAB_OK;
  g_last_error = what;
  return BLAB_ERR_ARGUMENT;
}

} // namespace

struct blab_config {
  BeamConfig cfg;
};

struct blab_system {
  BeamConfig cfg;
  AssembledSystem sys;
};

struct blab_trajectory {
  Trajectory traj;
};

extern "C" {

const char* blab_version(void) { return kVersion; }

const char* blab_last_error(void) { return g_last_error.c_str(); }

blab_status blab_config_create(blab_config** out) {
  if (need(out != nullptr, "out is NULL")) return BLAB_ERR_ARGUMENT;
  return guarded([&] { *out = new blab_config{}; });
}

blab_status blab_config_load(const char* path, blab_config** out) {
  if (need(path != nullptr && out != nullptr, "path/out is NULL"))
    return BLAB_ERR_ARGUMENT;
  return guarded([&] { *out = new blab_config{load_config_file(path)}; });
}

blab_status blab_config_set(blab_config* cfg, const char* key,
                            const char* value) {
  if (need(cfg && key && value, "cfg/key/value is NULL"))
    return BLAB_ERR_ARGUMENT;
  return guarded([&] { apply_override(cfg->cfg, key, value); });
}

blab_status blab_config_get(const blab_config* cfg, const char* key,
                            double* out) {
  if (need(cfg && key && out, "cfg/key/out is NULL")) return BLAB_ERR_ARGUMENT;
  return guarded([&] {
    const std::string k = key;
    const BeamConfig& c = cfg->cfg;
    if (k == "alpha") *out = c.profile.alpha;
    else if (k == "kappa") *out = c.profile.kappa;
    else if (k == "n_elements") *out = c.n_elements;
    else if (k == "grading") *out = c.grading;
    else if (k == "quad_tol") *out = c.quad_tol;
    else if (k == "time_horizon") *out = c.time_horizon;
    else if (k == "dt") *out = c.dt;
    else throw Error(ErrorCode::config, "config: unknown key '" + k + "'");
  });
}

int blab_config_validate(const blab_config* cfg, char* msg, size_t msg_len) {
  if (!cfg) return -1;
  const auto violations = validate_config(cfg->cfg);
  if (msg && msg_len > 0) {
    std::string joined;
    for (const auto& v : violations) {
      if (!joined.empty()) joined += "\n";
      joined += v;
    }
    std::strncpy(msg, joined.c_str(), msg_len - 1);
    msg[msg_len - 1] = '\0';
  }
  return static_cast<int>(violations.size());
}

void blab_config_free(blab_config* cfg) { delete cfg; }

blab_status blab_damping_eval(const blab_config* cfg, double x, double* out) {
  if (need(cfg && out, "cfg/out is NULL")) return BLAB_ERR_ARGUMENT;
  return guarded([&] { *out = eval_damping(cfg->cfg.profile, x); });
}

blab_status blab_system_build(const blab_config* cfg, blab_system** out) {
  if (need(cfg && out, "cfg/out is NULL")) return BLAB_ERR_ARGUMENT;
  return guarded([&] {
    const auto violations = validate_config(cfg->cfg);
    if (!violations.empty())
      throw Error(ErrorCode::config,
                  "invalid configuration: " + violations.front());
    const BeamConfig& c = cfg->cfg;
    *out = new blab_system{
        c, assemble(build_mesh(c.n_elements, c.grading), c.profile, c.quad_tol)};
  });
}

size_t blab_system_ndof(const blab_system* sys) {
  return sys ? static_cast<size_t>(sys->sys.n()) : 0;
}

blab_status blab_system_export_matrix(const blab_system* sys,
                                      const char* which, const char* path) {
  if (need(sys && which && path, "sys/which/path is NULL"))
    return BLAB_ERR_ARGUMENT;
  return guarded([&] {
    const std::string w = which;
    if (w == "mass") export_triplets(sys->sys.M(), path);
    else if (w == "stiffness") export_triplets(sys->sys.K(), path);
    else if (w == "damping") export_triplets(sys->sys.D(), path);
    else throw Error(ErrorCode::argument, "unknown matrix '" + w + "'");
  });
}

void blab_system_free(blab_system* sys) { delete sys; }

blab_status blab_simulate(const blab_system* sys, blab_trajectory** out) {
  if (need(sys && out, "sys/out is NULL")) return BLAB_ERR_ARGUMENT;
  return guarded([&] {
    const RealState s0 = default_initial_state(sys->sys);
    SimulationResult res =
        simulate(sys->sys, s0.u, s0.v, sys->cfg.time_horizon, sys->cfg.dt);
    *out = new blab_trajectory{std::move(res.trajectory)};
  });
}

size_t blab_trajectory_length(const blab_trajectory* traj) {
  return traj ? traj->traj.size() : 0;
}

blab_status blab_trajectory_get(const blab_trajectory* traj, size_t i,
                                double* t, double* energy,
                                double* dissipation) {
  if (need(traj != nullptr, "traj is NULL")) return BLAB_ERR_ARGUMENT;
  if (need(i < traj->traj.size(), "index out of range"))
    return BLAB_ERR_ARGUMENT;
  if (t) *t = traj->traj.times[i];
  if (energy) *energy = traj->traj.energies[i];
  if (dissipation) *dissipation = traj->traj.dissipation[i];
  return BLAB_OK;
}

blab_status blab_fit_decay(const blab_trajectory* traj, double window_lo_frac,
                           double window_hi_frac, double* exponent,
                           double* prefactor, double* residual) {
  if (need(traj != nullptr, "traj is NULL")) return BLAB_ERR_ARGUMENT;
  return guarded([&] {
    const DecayFit fit =
        fit_decay(traj->traj, {window_lo_frac, window_hi_frac});
    if (exponent) *exponent = fit.exponent;
    if (prefactor) *prefactor = fit.prefactor;
    if (residual) *residual = fit.residual;
  });
}

void blab_trajectory_free(blab_trajectory* traj) { delete traj; }

blab_status blab_resolvent_norm(const blab_system* sys, double lambda,
                                double tol, int max_iter, double* norm_out,
                                int* iterations_out, int* converged_out) {
  if (need(sys && norm_out, "sys/norm_out is NULL")) return BLAB_ERR_ARGUMENT;
  return guarded([&] {
    const ResolventSample s = resolvent_norm(sys->sys, lambda, tol, max_iter);
    *norm_out = s.norm;
    if (iterations_out) *iterations_out = s.iterations;
    if (converged_out) *converged_out = s.converged ? 1 : 0;
  });
}

blab_status blab_tau(double alpha, double* out) {
  if (need(out != nullptr, "out is NULL")) return BLAB_ERR_ARGUMENT;
  return guarded([&] { *out = tau_closed(alpha); });
}

blab_status blab_gamma(double alpha, double* out) {
  if (need(out != nullptr, "out is NULL")) return BLAB_ERR_ARGUMENT;
  return guarded([&] { *out = gamma_closed(alpha); });
}

blab_status blab_optimize_gamma(double alpha, double resolution,
                                double* gamma_star, double* delta_star) {
  if (need(gamma_star != nullptr, "gamma_star is NULL"))
    return BLAB_ERR_ARGUMENT;
  return guarded([&] {
    const RateResult r = optimize_gamma(alpha, resolution);
    *gamma_star = r.gamma_star;
    if (delta_star) *delta_star = r.delta_star;
  });
}

blab_status blab_hardy_constant(double alpha, double beta, double L,
                                double* k_out) {
  if (need(k_out != nullptr, "k_out is NULL")) return BLAB_ERR_ARGUMENT;
  return guarded([&] { *k_out = hardy_constant({alpha, beta, L}).value; });
}

blab_status blab_run(const char* command, const char* config_path,
                     const char* out_dir, const char* const* overrides,
                     size_t n_overrides, int jobs) {
  if (need(command && out_dir, "command/out_dir is NULL"))
    return BLAB_ERR_ARGUMENT;
  return guarded([&] {
    ExperimentSpec spec;
    spec.command = command;
    spec.config_path = config_path ? config_path : "";
    spec.out_dir = out_dir;
    spec.jobs = jobs > 0 ? jobs : 1;
    for (size_t i = 0; i < n_overrides; ++i) {
      const std::string kv = overrides[i];
      const std::size_t eq = kv.find('=');
      if (eq == std::string::npos)
        throw Error(ErrorCode::config,
                    "override '" + kv + "' is not of the form key=value");
      spec.overrides.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
    }
    run(spec);
  });
}

} // extern "C"
