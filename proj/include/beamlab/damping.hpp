#ifndef BEAMLAB_DAMPING_HPP
#define BEAMLAB_DAMPING_HPP

#include <string>
#include <utility>
#include <vector>

namespace beamlab {

// Damping coefficient b on (-1,1): identically zero on (-1,0], degenerating
// toward the interface like kappa*x^alpha on (0,1).
struct DampingProfile {
  enum class Form { pure_power, user_table };

  double alpha = 1.0;  // degeneracy exponent, must lie in (0,5)
  double kappa = 1.0;  // amplitude, >= 0
  Form form = Form::pure_power;

  // user_table only: samples (x, a(x)) on [0,1], linearly interpolated.
  // Must be nondecreasing, nonnegative, start at (0,0) and end at x=1.
  std::vector<std::pair<double, double>> table;

  static DampingProfile pure_power(double alpha, double kappa) {
    DampingProfile p;
    p.alpha = alpha;
    p.kappa = kappa;
    return p;
  }

  static DampingProfile user_table(double alpha,
                                   std::vector<std::pair<double, double>> samples);
};

// b(x) for x in [-1,1]. Zero for x <= 0. Throws Error(argument) on
// non-finite x or x outside [-1,1].
double eval_damping(const DampingProfile& profile, double x);

// Structural checks on a profile; returns human-readable violations.
std::vector<std::string> validate_profile(const DampingProfile& profile);

struct BeamConfig {
  DampingProfile profile;
  int n_elements = 64;       // total over (-1,1), must be even and >= 4
  double grading = 1.0;      // geometric grading toward x=0, >= 1
  double quad_tol = 1e-10;   // per-entry damping quadrature tolerance
  double time_horizon = 20.0;
  double dt = 1e-2;
};

// Every invariant checked; empty result means the configuration is valid.
std::vector<std::string> validate_config(const BeamConfig& cfg);

// Flat key-value configuration text. Recognized keys: alpha, kappa,
// n_elements, grading, quad_tol, time_horizon, dt. Lines are "key = value";
// '#' starts a comment. Unknown keys raise Error(config).
BeamConfig parse_config_text(const std::string& text);
BeamConfig load_config_file(const std::string& path);

// Apply a single "key=value" override to an existing configuration.
void apply_override(BeamConfig& cfg, const std::string& key,
                    const std::string& value);

} // namespace beamlab

#endif
