#include "beamlab/ratecalc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "beamlab/error.hpp"

namespace beamlab {

namespace {

constexpr double kBranchA = 5.0 / 3.0;
constexpr double kBranchB = 3.0;
constexpr double kStrictMargin = 1e-12;

void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 5.0))
    throw Error(ErrorCode::argument, "alpha must lie in open interval (0,5)");
}

} // namespace

double tau_closed(double alpha) {
  require_alpha(alpha);
  if (alpha <= kBranchA) return (5.0 - alpha) / (3.0 - alpha);
  if (alpha <= kBranchB) return (5.0 + alpha) / (1.0 + alpha);
  return 4.0 / (alpha - 1.0);
}

double gamma_closed(double alpha) {
  require_alpha(alpha);
  if (alpha <= kBranchA) return 2.0 * (3.0 - alpha) / (5.0 - alpha);
  if (alpha <= kBranchB) return 2.0 * (1.0 + alpha) / (5.0 + alpha);
  return (alpha - 1.0) / 2.0;
}

BranchValues tau_one_sided(double a) {
  BranchValues out{0.0, 0.0};
  if (a == kBranchA) {
    out.left = (5.0 - a) / (3.0 - a);
    out.right = (5.0 + a) / (1.0 + a);
  } else if (a == kBranchB) {
    out.left = (5.0 + a) / (1.0 + a);
    out.right = 4.0 / (a - 1.0);
  } else {
    out.left = out.right = tau_closed(a);
  }
  return out;
}

std::string to_string(RateBranch b) {
  switch (b) {
    case RateBranch::case1: return "case1";
    case RateBranch::case2a: return "case2a";
    case RateBranch::case2b: return "case2b";
    case RateBranch::case3: return "case3";
    case RateBranch::case4: return "case4";
  }
  return "?";
}

RateProgram::RateProgram(double alpha) : alpha_(alpha) { require_alpha(alpha); }

std::vector<RateProgram::Constraint> RateProgram::constraints(
    double beta, double beta0) const {
  const double a = alpha_;
  const double bp = beta; // beta' identified with beta
  return {
      {"(1+beta_prime)*delta", 1.0 + bp, 0.0},
      {"(1+beta0)*delta", 1.0 + beta0, 0.0},
      {"(alpha+1)*delta-2", a + 1.0, -2.0},
      {"(1-alpha)*delta", 1.0 - a, 0.0},
      {"(beta_prime-1)*delta+2", bp - 1.0, 2.0},
      {"(alpha+3)*delta-2", a + 3.0, -2.0},
      {"(3-alpha)*delta", 3.0 - a, 0.0},
      {"alpha*delta-2", a, -2.0},
      {"(beta-1)*delta+2", beta - 1.0, 2.0},
  };
}

std::vector<RateProgram::DeltaInterval> RateProgram::delta_intervals(
    double search_hi) const {
  std::vector<DeltaInterval> out;
  if (alpha_ < 2.0)
    out.push_back({alpha_ / (alpha_ + 2.0), 1.0 / alpha_, true, true});
  const double lo = std::max(0.5, 1.0 / alpha_);
  out.push_back({lo, std::max(search_hi, lo + 1.0), alpha_ < 2.0 ? false : true,
                 false});
  return out;
}

bool RateProgram::beta0_admissible(double beta0, std::string* why) const {
  if (alpha_ > 1.0 && !(beta0 >= alpha_ - 2.0)) {
    if (why) *why = "beta0 must be >= alpha-2 for alpha > 1";
    return false;
  }
  if (!(beta0 > -1.0 + kStrictMargin)) {
    if (why) *why = "beta0 must be > -1";
    return false;
  }
  return true;
}

bool RateProgram::beta_admissible(double beta, std::string* why) const {
  if (!(beta > -1.0 + kStrictMargin && beta < 1.0 - kStrictMargin)) {
    if (why) *why = "beta must lie in (-1,1)";
    return false;
  }
  if (alpha_ > 3.0 && !(beta >= alpha_ - 4.0)) {
    if (why) *why = "beta must be >= alpha-4 for alpha > 3";
    return false;
  }
  return true;
}

bool RateProgram::delta_admissible(double delta, std::string* why) const {
  const bool regime1 = alpha_ < 2.0 &&
                       delta > alpha_ / (alpha_ + 2.0) + kStrictMargin &&
                       delta < 1.0 / alpha_ - kStrictMargin;
  const bool regime2 = delta > 0.5 + kStrictMargin && delta >= 1.0 / alpha_;
  if (regime1 || regime2) return true;
  if (why)
    *why = "delta outside both admissible regimes "
           "(alpha/(alpha+2),1/alpha) and (1/2,inf)/\\[1/alpha,inf)";
  return false;
}

double RateProgram::pinned_beta0(double eta) const {
  if (alpha_ < 1.0) return -1.0 + eta;
  if (alpha_ == 1.0) return 0.0;
  return alpha_ - 2.0;
}

double RateProgram::pinned_beta(double eta) const {
  if (alpha_ <= 3.0) return -1.0 + eta;
  return alpha_ - 4.0;
}

FeasibilityReport feasible(const RateProgram& prog, const FeasibilityPoint& p) {
  FeasibilityReport report;
  std::string why;
  if (!prog.delta_admissible(p.delta, &why)) report.violated.push_back(why);
  if (!prog.beta_admissible(p.beta, &why)) report.violated.push_back(why);
  if (!prog.beta0_admissible(p.beta0, &why)) report.violated.push_back(why);
  for (const auto& c : prog.constraints(p.beta, p.beta0)) {
    const double bound = c.slope * p.delta + c.intercept;
    if (!(p.gamma >= bound))
      report.violated.push_back("gamma >= " + c.id + " violated");
  }
  report.feasible = report.violated.empty();
  return report;
}

namespace {

double max_constraint(const std::vector<RateProgram::Constraint>& cs,
                      double delta) {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& c : cs) m = std::max(m, c.slope * delta + c.intercept);
  return m;
}

struct IntervalOpt {
  double gamma;
  double delta;
};

// golden-section minimization of the convex piecewise-linear envelope
IntervalOpt minimize_on(const std::vector<RateProgram::Constraint>& cs,
                        double lo, double hi, double tol) {
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = max_constraint(cs, x1), f2 = max_constraint(cs, x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = max_constraint(cs, x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = max_constraint(cs, x2);
    }
  }
  const double mid = 0.5 * (a + b);
  const double fm = max_constraint(cs, mid);
  // endpoints can carry the infimum (closure of a strict regime bound)
  const double fa = max_constraint(cs, lo), fb = max_constraint(cs, hi);
  IntervalOpt best{fm, mid};
  if (fa < best.gamma) best = {fa, lo};
  if (fb < best.gamma) best = {fb, hi};
  return best;
}

RateResult optimize_with_eta(double alpha, double resolution, double eta) {
  RateProgram prog(alpha);
  const double beta = prog.pinned_beta(eta);
  const double beta0 = prog.pinned_beta0(eta);
  const auto cs = prog.constraints(beta, beta0);
  const double tol = std::min(resolution, 1e-10);

  RateResult result;
  result.alpha = alpha;
  result.eta = eta;
  bool first = true;
  for (const auto& iv : prog.delta_intervals()) {
    const IntervalOpt opt = minimize_on(cs, iv.lo, iv.hi, tol);
    if (first || opt.gamma < result.gamma_star) {
      result.gamma_star = opt.gamma;
      result.delta_star = opt.delta;
      first = false;
    }
  }
  if (first)
    throw Error(ErrorCode::numeric, "optimize_gamma: empty feasible region");

  const double act_tol = 64.0 * std::max(tol, 1e-12);
  for (const auto& c : cs) {
    const double v = c.slope * result.delta_star + c.intercept;
    if (std::abs(v - result.gamma_star) <= act_tol)
      result.active_constraints.push_back(c.id);
  }
  for (const auto& iv : prog.delta_intervals()) {
    if (std::abs(result.delta_star - iv.lo) <= act_tol) {
      std::ostringstream id;
      id << "delta=" << iv.lo << " (interval lower bound)";
      result.active_constraints.push_back(id.str());
    }
    if (std::abs(result.delta_star - iv.hi) <= act_tol)
      result.active_constraints.push_back("delta (interval upper bound)");
  }
  return result;
}

} // namespace

RateResult optimize_gamma(double alpha, double resolution) {
  require_alpha(alpha);
  if (!(resolution > 0.0 && resolution <= 1e-3))
    throw Error(ErrorCode::argument,
                "optimize_gamma: resolution must lie in (0,1e-3]");
  const double eta = 1e-6;
  RateResult result = optimize_with_eta(alpha, resolution, eta);
  const RateResult doubled = optimize_with_eta(alpha, resolution, 2.0 * eta);
  result.eta_sensitivity = std::abs(doubled.gamma_star - result.gamma_star);

  if (alpha <= 1.0)
    result.branch = RateBranch::case1;
  else if (alpha < kBranchA)
    result.branch = RateBranch::case2a;
  else if (alpha < 2.0)
    result.branch = RateBranch::case2b;
  else if (alpha <= 3.0)
    result.branch = RateBranch::case3;
  else
    result.branch = RateBranch::case4;
  return result;
}

std::vector<Figure1Row> figure1_table(const std::vector<double>& alpha_grid) {
  std::vector<Figure1Row> rows;
  rows.reserve(alpha_grid.size());
  for (double a : alpha_grid) rows.push_back({a, tau_closed(a)});
  return rows;
}

std::vector<double> default_alpha_grid() {
  std::vector<double> grid;
  grid.reserve(100);
  for (int i = 0; i < 98; ++i)
    grid.push_back(0.05 + (4.95 - 0.05) * i / 97.0);
  grid.push_back(kBranchA);
  grid.push_back(kBranchB);
  std::sort(grid.begin(), grid.end());
  return grid;
}

} // namespace beamlab
