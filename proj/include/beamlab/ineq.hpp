#ifndef BEAMLAB_INEQ_HPP
#define BEAMLAB_INEQ_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace beamlab {

// Weighted Hardy inequality data: int_0^L x^beta |y|^2 <= C int_0^L
// x^alpha |y'|^2 for y(L)=0, with the bracket constant
//   K = sup_s (int_0^s t^beta dt)(int_s^L t^-alpha dt),  K <= C <= 2K.
struct HardyCase {
  double alpha = 0.0; // right-hand weight exponent, >= 0
  double beta = 0.0;  // left-hand weight exponent, > -1
  double L = 1.0;
};

struct HardyConstant {
  double value = 0.0; // +infinity when the side conditions fail
  bool finite = false;
  double arg_sup = 0.0;          // maximizing s (0 when the sup sits at s->0)
  std::string failed_condition;  // set when not finite
};

// Closed antiderivatives reduce K to a 1-D maximization of
// s^{beta+1}/(beta+1) * (L^{1-alpha}-s^{1-alpha})/(1-alpha) (log form at
// alpha=1), solved to relative tolerance 1e-8.
HardyConstant hardy_constant(const HardyCase& c);

// A smooth test function on [0,1] with exact derivatives.
struct TestFn {
  std::string name;
  std::function<double(double)> value;
  std::function<double(double)> d1;
  std::function<double(double)> d2;

  static TestFn linear(); // f(x) = x
  static TestFn constant(double c);
};

// Seeded families of smooth test functions on [0,1]. With
// enforce_zero_at_one, every member satisfies y(1)=0 exactly.
struct TestFunctionFamily {
  enum class Kind { polynomial, spline, random_fourier };
  Kind kind = Kind::spline;
  int count = 100;
  std::uint64_t seed = 1;
  bool enforce_zero_at_one = true;

  std::vector<TestFn> generate() const;
};

struct HardyReport {
  double max_ratio = 0.0;
  int arg_max = -1; // sample index of the maximum
  int skipped = 0;  // samples with vanishing denominator
  int samples = 0;
  double K = 0.0;
  std::uint64_t seed = 0;
};

// ratio int_0^1 x^beta |y|^2 / int_0^1 x^alpha |y'|^2 per sample (adaptive
// quadrature, tolerance 1e-10); throws Error(argument) when (alpha,beta) is
// inadmissible for the bracket.
HardyReport check_hardy(const std::vector<TestFn>& fns, double alpha,
                        double beta);
HardyReport check_hardy(const TestFunctionFamily& family, double alpha,
                        double beta);

// Max ratio over a mollified concentration family (1-x)*max(x,eps)^{-s}
// with eps shrinking geometrically; grows without bound exactly when the
// admissibility side condition fails.
double hardy_sharpness_ratio(double alpha, double beta, int levels = 9);

struct InterpolationReport {
  double empirical_K = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
  std::vector<double> ratios;
};

// ratio ||f'||^2 / ((d-c)^2 ||f''||^2 + (d-c)^{-2} ||f||^2) on (c,d) for each
// family member mapped from [0,1]; scale-invariant by construction.
InterpolationReport check_interpolation(const std::vector<TestFn>& family,
                                        double c, double d);

} // namespace beamlab

#endif
