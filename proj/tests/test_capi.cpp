#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>

#include "beamlab.h"

namespace fs = std::filesystem;

TEST_CASE("version and error reporting") {
  CHECK(std::string(blab_version()).find('.') != std::string::npos);
  double out = 0.0;
  CHECK(blab_tau(7.0, &out) == BLAB_ERR_ARGUMENT);
  CHECK(std::string(blab_last_error()).find("(0,5)") != std::string::npos);
  CHECK(blab_tau(1.0, nullptr) == BLAB_ERR_ARGUMENT);
}

TEST_CASE("closed forms through the C surface") {
  double tau = 0.0, gamma = 0.0;
  REQUIRE(blab_tau(5.0 / 3.0, &tau) == BLAB_OK);
  CHECK(tau == doctest::Approx(2.5));
  REQUIRE(blab_gamma(4.0, &gamma) == BLAB_OK);
  CHECK(gamma == doctest::Approx(1.5));

  double gamma_star = 0.0, delta_star = 0.0;
  REQUIRE(blab_optimize_gamma(2.0, 1e-3, &gamma_star, &delta_star) == BLAB_OK);
  CHECK(gamma_star == doctest::Approx(6.0 / 7.0).epsilon(5e-3));
  CHECK(delta_star == doctest::Approx(4.0 / 7.0).epsilon(5e-3));

  double k = 0.0;
  REQUIRE(blab_hardy_constant(0.0, 0.0, 1.0, &k) == BLAB_OK);
  CHECK(k == doctest::Approx(0.25).epsilon(1e-7));
  REQUIRE(blab_hardy_constant(3.0, 0.0, 1.0, &k) == BLAB_OK);
  CHECK(std::isinf(k));
}

TEST_CASE("config lifecycle") {
  blab_config* cfg = nullptr;
  REQUIRE(blab_config_create(&cfg) == BLAB_OK);
  CHECK(blab_config_set(cfg, "alpha", "2.5") == BLAB_OK);
  double v = 0.0;
  CHECK(blab_config_get(cfg, "alpha", &v) == BLAB_OK);
  CHECK(v == 2.5);
  CHECK(blab_config_set(cfg, "bogus", "1") == BLAB_ERR_CONFIG);
  CHECK(std::string(blab_last_error()).find("bogus") != std::string::npos);

  CHECK(blab_config_validate(cfg, nullptr, 0) == 0);
  CHECK(blab_config_set(cfg, "alpha", "9") == BLAB_OK);
  char msg[256];
  CHECK(blab_config_validate(cfg, msg, sizeof msg) == 1);
  CHECK(std::string(msg).find("(0,5)") != std::string::npos);

  double b = -1.0;
  CHECK(blab_config_set(cfg, "alpha", "2") == BLAB_OK);
  CHECK(blab_damping_eval(cfg, -0.25, &b) == BLAB_OK);
  CHECK(b == 0.0);
  CHECK(blab_damping_eval(cfg, 0.5, &b) == BLAB_OK);
  CHECK(b == doctest::Approx(0.25));
  blab_config_free(cfg);
}

TEST_CASE("system, simulation and resolvent through the C surface") {
  blab_config* cfg = nullptr;
  REQUIRE(blab_config_create(&cfg) == BLAB_OK);
  REQUIRE(blab_config_set(cfg, "n_elements", "16") == BLAB_OK);
  REQUIRE(blab_config_set(cfg, "time_horizon", "2") == BLAB_OK);
  REQUIRE(blab_config_set(cfg, "dt", "0.01") == BLAB_OK);

  blab_system* sys = nullptr;
  REQUIRE(blab_system_build(cfg, &sys) == BLAB_OK);
  CHECK(blab_system_ndof(sys) == 2u * 17 - 4);

  blab_trajectory* traj = nullptr;
  REQUIRE(blab_simulate(sys, &traj) == BLAB_OK);
  const size_t len = blab_trajectory_length(traj);
  CHECK(len == 201);
  double t0, e0, d0, t_end, e_end, d_end;
  REQUIRE(blab_trajectory_get(traj, 0, &t0, &e0, &d0) == BLAB_OK);
  REQUIRE(blab_trajectory_get(traj, len - 1, &t_end, &e_end, &d_end) == BLAB_OK);
  CHECK(t0 == 0.0);
  CHECK(e_end < e0);
  CHECK(blab_trajectory_get(traj, len, &t0, &e0, &d0) == BLAB_ERR_ARGUMENT);

  double r = 0.0, pre = 0.0, res = 0.0;
  REQUIRE(blab_fit_decay(traj, 0.1, 1.0, &r, &pre, &res) == BLAB_OK);
  CHECK(r > 0.0);
  blab_trajectory_free(traj);

  double norm = 0.0;
  int iters = 0, conv = 0;
  REQUIRE(blab_resolvent_norm(sys, 10.0, 1e-6, 20000, &norm, &iters, &conv) ==
          BLAB_OK);
  CHECK(conv == 1);
  CHECK(norm > 0.0);

  const fs::path p = fs::temp_directory_path() / "beamlab_capi_mass.mtx";
  REQUIRE(blab_system_export_matrix(sys, "mass", p.string().c_str()) == BLAB_OK);
  CHECK(fs::exists(p));
  CHECK(blab_system_export_matrix(sys, "nope", p.string().c_str()) ==
        BLAB_ERR_ARGUMENT);
  fs::remove(p);
  blab_system_free(sys);
  blab_config_free(cfg);
}

TEST_CASE("experiment driver exit statuses") {
  const fs::path out = fs::temp_directory_path() / "beamlab_capi_run";
  fs::remove_all(out);
  const char* overrides[] = {"kappa=0", "n_elements=8", "time_horizon=1",
                             "dt=0.05"};
  CHECK(blab_run("simulate", nullptr, out.string().c_str(), overrides, 4, 1) ==
        BLAB_OK);
  CHECK(fs::exists(out / "trajectory.csv"));
  CHECK(fs::exists(out / "manifest.json"));

  const char* bad[] = {"who=1"};
  CHECK(blab_run("simulate", nullptr, out.string().c_str(), bad, 1, 1) ==
        BLAB_ERR_CONFIG);
  CHECK(blab_run("nope", nullptr, out.string().c_str(), nullptr, 0, 1) ==
        BLAB_ERR_CONFIG);
  CHECK(blab_run(nullptr, nullptr, out.string().c_str(), nullptr, 0, 1) ==
        BLAB_ERR_ARGUMENT);
}
