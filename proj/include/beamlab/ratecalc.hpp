#ifndef BEAMLAB_RATECALC_HPP
#define BEAMLAB_RATECALC_HPP

#include <string>
#include <vector>

namespace beamlab {

// Closed-form energy-decay exponent tau(alpha), piecewise over (0,5) with
// branch points 5/3 and 3 (evaluated from the left branch by convention).
double tau_closed(double alpha);

// Resolvent growth exponent gamma(alpha) = 2 / tau(alpha), in closed form.
double gamma_closed(double alpha);

// One-sided branch values at a point: {left-branch value, right-branch value}
// (equal to the one-sided limits; each branch formula is continuous).
struct BranchValues {
  double left;
  double right;
};
BranchValues tau_one_sided(double alpha_branch_point);

enum class RateBranch { case1, case2a, case2b, case3, case4 };
std::string to_string(RateBranch b);

// The minimax program over (gamma, delta, beta, beta0) for a fixed alpha:
// gamma must dominate a family of linear functions of delta whose slopes
// involve alpha and the weight exponents, delta is confined to admissible
// regimes, and the weight exponents carry their own admissibility rules.
class RateProgram {
public:
  explicit RateProgram(double alpha);

  double alpha() const { return alpha_; }

  struct Constraint {
    std::string id;   // self-describing, e.g. "(3-alpha)*delta"
    double slope;     // gamma >= slope * delta + intercept
    double intercept;
  };

  // Linear constraint family for given weight exponents (beta' = beta).
  std::vector<Constraint> constraints(double beta, double beta0) const;

  // Admissible delta intervals (closures of the open regimes):
  // [alpha/(alpha+2), 1/alpha] when alpha < 2, and [max(1/2,1/alpha), inf).
  struct DeltaInterval {
    double lo;
    double hi; // upper search bound for the unbounded regime
    bool lo_strict;
    bool hi_strict;
  };
  std::vector<DeltaInterval> delta_intervals(double search_hi = 2.0) const;

  // beta0 admissibility. The alpha=1 rule accepts any beta0 > -1 (the closure
  // of the neighboring rules); the canonical pinned value at alpha=1 is 0.
  bool beta0_admissible(double beta0, std::string* why = nullptr) const;
  // beta (= beta') admissibility: -1 < beta < 1, and beta >= alpha-4 when
  // alpha > 3 (threading the two-step weight chains through their minima).
  bool beta_admissible(double beta, std::string* why = nullptr) const;
  bool delta_admissible(double delta, std::string* why = nullptr) const;

  // Extremal admissible weight exponents used by the optimizer (open bounds
  // approached within eta).
  double pinned_beta0(double eta) const;
  double pinned_beta(double eta) const;

private:
  double alpha_;
};

struct FeasibilityPoint {
  double gamma;
  double delta;
  double beta;
  double beta0;
};

struct FeasibilityReport {
  bool feasible = false;
  std::vector<std::string> violated;
};

// Diagnostic evaluation of every constraint at a point. Non-strict
// inequalities are honored as written; strict ones with margin 1e-12.
FeasibilityReport feasible(const RateProgram& prog, const FeasibilityPoint& p);

struct RateResult {
  double alpha = 0.0;
  double gamma_star = 0.0; // infimum of gamma over the program
  double delta_star = 0.0;
  RateBranch branch = RateBranch::case1;
  std::vector<std::string> active_constraints; // ids, plus "delta=..." bounds
  double eta = 1e-6;
  double eta_sensitivity = 0.0; // |gamma*(2 eta) - gamma*(eta)|
};

// Two-stage search: weight exponents pinned to their admissible extremes,
// then gamma(delta) = max of the linear family minimized by golden section
// over each admissible delta interval. Strict bounds are treated as
// closures; the reported gamma_star is the infimum.
RateResult optimize_gamma(double alpha, double resolution = 1e-3);

struct Figure1Row {
  double alpha;
  double tau;
};

// tau(alpha) table over the given grid (each alpha must lie in (0,5)).
std::vector<Figure1Row> figure1_table(const std::vector<double>& alpha_grid);

// Default 100-point grid: 98 uniform points on [0.05,4.95] plus the branch
// points 5/3 and 3, sorted.
std::vector<double> default_alpha_grid();

} // namespace beamlab

#endif
