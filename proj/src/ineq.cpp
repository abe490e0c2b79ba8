#include "beamlab/ineq.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "beamlab/error.hpp"
#include "beamlab/quadrature.hpp"
#include "beamlab/rng.hpp"

namespace beamlab {

namespace {

// integrand of the K-sup: A(s) * B(s)
double hardy_objective(double s, double alpha, double beta, double L) {
  const double a_part = std::pow(s, beta + 1.0) / (beta + 1.0);
  double b_part;
  if (alpha == 1.0)
    b_part = std::log(L / s);
  else
    b_part = (std::pow(L, 1.0 - alpha) - std::pow(s, 1.0 - alpha)) /
             (1.0 - alpha);
  return a_part * b_part;
}

} // namespace

HardyConstant hardy_constant(const HardyCase& c) {
  HardyConstant out;
  if (!(c.L > 0.0))
    throw Error(ErrorCode::argument, "hardy_constant: L must be > 0");
  if (!(c.alpha >= 0.0))
    throw Error(ErrorCode::argument, "hardy_constant: alpha must be >= 0");
  if (!(c.beta > -1.0)) {
    out.value = std::numeric_limits<double>::infinity();
    out.failed_condition = "beta must be > -1";
    return out;
  }
  if (c.alpha > 1.0 && c.beta < c.alpha - 2.0) {
    out.value = std::numeric_limits<double>::infinity();
    out.failed_condition = "beta >= alpha-2 required when alpha > 1";
    return out;
  }

  // log-spaced scan catches suprema approached at s -> 0 (the equality case
  // beta = alpha-2), then golden-section refinement around the best sample
  const int n_scan = 4000;
  double best = 0.0, best_s = 0.0;
  for (int i = 0; i <= n_scan; ++i) {
    const double t = static_cast<double>(i) / n_scan;
    const double s = c.L * std::pow(10.0, -14.0 * (1.0 - t));
    const double v = hardy_objective(s, c.alpha, c.beta, c.L);
    if (v > best) {
      best = v;
      best_s = s;
    }
  }
  // refine in log coordinates
  double lo = std::max(best_s / 10.0, c.L * 1e-15);
  double hi = std::min(best_s * 10.0, c.L);
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = std::log(lo), b = std::log(hi);
  auto f = [&](double t) {
    return -hardy_objective(std::exp(t), c.alpha, c.beta, c.L);
  };
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200 && (b - a) > 1e-12; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    }
  }
  const double s_ref = std::exp(0.5 * (a + b));
  const double v_ref = hardy_objective(s_ref, c.alpha, c.beta, c.L);
  if (v_ref > best) {
    best = v_ref;
    best_s = s_ref;
  }
  out.value = best;
  out.finite = true;
  out.arg_sup = best_s;
  return out;
}

TestFn TestFn::linear() {
  TestFn f;
  f.name = "linear";
  f.value = [](double x) { return x; };
  f.d1 = [](double) { return 1.0; };
  f.d2 = [](double) { return 0.0; };
  return f;
}

TestFn TestFn::constant(double c) {
  TestFn f;
  f.name = "constant";
  f.value = [c](double) { return c; };
  f.d1 = [](double) { return 0.0; };
  f.d2 = [](double) { return 0.0; };
  return f;
}

namespace {

TestFn make_polynomial(Rng& rng, bool zero_at_one) {
  // p(x) = sum c_k x^k, degree 5; multiplied by (1-x) when pinned at 1
  auto coeffs = std::make_shared<std::vector<double>>();
  for (int k = 0; k < 6; ++k) coeffs->push_back(rng.normal());
  TestFn f;
  f.name = "polynomial";
  if (zero_at_one) {
    f.value = [coeffs](double x) {
      double p = 0.0, xk = 1.0;
      for (double c : *coeffs) {
        p += c * xk;
        xk *= x;
      }
      return (1.0 - x) * p;
    };
    f.d1 = [coeffs](double x) {
      double p = 0.0, dp = 0.0, xk = 1.0;
      for (std::size_t k = 0; k < coeffs->size(); ++k) {
        if (k > 0) dp += (*coeffs)[k] * k * std::pow(x, k - 1.0);
        p += (*coeffs)[k] * xk;
        xk *= x;
      }
      return -p + (1.0 - x) * dp;
    };
    f.d2 = [coeffs](double x) {
      double dp = 0.0, d2p = 0.0;
      for (std::size_t k = 1; k < coeffs->size(); ++k) {
        dp += (*coeffs)[k] * k * std::pow(x, k - 1.0);
        if (k > 1) d2p += (*coeffs)[k] * k * (k - 1.0) * std::pow(x, k - 2.0);
      }
      return -2.0 * dp + (1.0 - x) * d2p;
    };
  } else {
    f.value = [coeffs](double x) {
      double p = 0.0, xk = 1.0;
      for (double c : *coeffs) {
        p += c * xk;
        xk *= x;
      }
      return p;
    };
    f.d1 = [coeffs](double x) {
      double dp = 0.0;
      for (std::size_t k = 1; k < coeffs->size(); ++k)
        dp += (*coeffs)[k] * k * std::pow(x, k - 1.0);
      return dp;
    };
    f.d2 = [coeffs](double x) {
      double d2p = 0.0;
      for (std::size_t k = 2; k < coeffs->size(); ++k)
        d2p += (*coeffs)[k] * k * (k - 1.0) * std::pow(x, k - 2.0);
      return d2p;
    };
  }
  return f;
}

TestFn make_fourier(Rng& rng, bool zero_at_one) {
  auto coeffs = std::make_shared<std::vector<double>>();
  for (int k = 0; k < 6; ++k) coeffs->push_back(rng.normal());
  const double pi = 3.14159265358979323846;
  TestFn f;
  f.name = "random_fourier";
  if (zero_at_one) {
    // sin(k*pi*(1-x)/2) vanishes at x=1 for every k
    f.value = [coeffs, pi](double x) {
      double s = 0.0;
      for (std::size_t k = 1; k <= coeffs->size(); ++k)
        s += (*coeffs)[k - 1] * std::sin(0.5 * k * pi * (1.0 - x));
      return s;
    };
    f.d1 = [coeffs, pi](double x) {
      double s = 0.0;
      for (std::size_t k = 1; k <= coeffs->size(); ++k)
        s += (*coeffs)[k - 1] * (-0.5 * k * pi) *
             std::cos(0.5 * k * pi * (1.0 - x));
      return s;
    };
    f.d2 = [coeffs, pi](double x) {
      double s = 0.0;
      for (std::size_t k = 1; k <= coeffs->size(); ++k)
        s += (*coeffs)[k - 1] * (-0.25 * k * k * pi * pi) *
             std::sin(0.5 * k * pi * (1.0 - x));
      return s;
    };
  } else {
    f.value = [coeffs, pi](double x) {
      double s = 0.0;
      for (std::size_t k = 1; k <= coeffs->size(); ++k)
        s += (*coeffs)[k - 1] * std::cos(k * pi * x);
      return s;
    };
    f.d1 = [coeffs, pi](double x) {
      double s = 0.0;
      for (std::size_t k = 1; k <= coeffs->size(); ++k)
        s += (*coeffs)[k - 1] * (-k * pi) * std::sin(k * pi * x);
      return s;
    };
    f.d2 = [coeffs, pi](double x) {
      double s = 0.0;
      for (std::size_t k = 1; k <= coeffs->size(); ++k)
        s += (*coeffs)[k - 1] * (-k * k * pi * pi) * std::cos(k * pi * x);
      return s;
    };
  }
  return f;
}

// natural cubic spline through random values at uniform knots
struct SplineData {
  std::vector<double> x, y, ypp;
};

TestFn make_spline(Rng& rng, bool zero_at_one) {
  const int m = 8;
  auto sd = std::make_shared<SplineData>();
  sd->x.resize(m);
  sd->y.resize(m);
  for (int i = 0; i < m; ++i) {
    sd->x[i] = static_cast<double>(i) / (m - 1);
    sd->y[i] = rng.normal();
  }
  if (zero_at_one) sd->y[m - 1] = 0.0;

  // tridiagonal solve for natural-spline second derivatives
  std::vector<double> a(m, 0.0), b(m, 0.0), c(m, 0.0), r(m, 0.0);
  sd->ypp.assign(m, 0.0);
  b[0] = b[m - 1] = 1.0;
  for (int i = 1; i < m - 1; ++i) {
    const double h0 = sd->x[i] - sd->x[i - 1];
    const double h1 = sd->x[i + 1] - sd->x[i];
    a[i] = h0 / 6.0;
    b[i] = (h0 + h1) / 3.0;
    c[i] = h1 / 6.0;
    r[i] = (sd->y[i + 1] - sd->y[i]) / h1 - (sd->y[i] - sd->y[i - 1]) / h0;
  }
  for (int i = 1; i < m; ++i) {
    const double w = a[i] / b[i - 1];
    b[i] -= w * c[i - 1];
    r[i] -= w * r[i - 1];
  }
  sd->ypp[m - 1] = r[m - 1] / b[m - 1];
  for (int i = m - 2; i >= 0; --i)
    sd->ypp[i] = (r[i] - c[i] * sd->ypp[i + 1]) / b[i];

  auto segment = [sd](double x) {
    const int m = static_cast<int>(sd->x.size());
    int i = static_cast<int>(std::floor(x * (m - 1)));
    return std::clamp(i, 0, m - 2);
  };
  TestFn f;
  f.name = "spline";
  f.value = [sd, segment](double x) {
    const int i = segment(x);
    const double h = sd->x[i + 1] - sd->x[i];
    const double A = (sd->x[i + 1] - x) / h, B = (x - sd->x[i]) / h;
    return A * sd->y[i] + B * sd->y[i + 1] +
           ((A * A * A - A) * sd->ypp[i] + (B * B * B - B) * sd->ypp[i + 1]) *
               h * h / 6.0;
  };
  f.d1 = [sd, segment](double x) {
    const int i = segment(x);
    const double h = sd->x[i + 1] - sd->x[i];
    const double A = (sd->x[i + 1] - x) / h, B = (x - sd->x[i]) / h;
    return (sd->y[i + 1] - sd->y[i]) / h +
           ((1.0 - 3.0 * A * A) * sd->ypp[i] + (3.0 * B * B - 1.0) *
            sd->ypp[i + 1]) * h / 6.0;
  };
  f.d2 = [sd, segment](double x) {
    const int i = segment(x);
    const double h = sd->x[i + 1] - sd->x[i];
    const double A = (sd->x[i + 1] - x) / h, B = (x - sd->x[i]) / h;
    return A * sd->ypp[i] + B * sd->ypp[i + 1];
  };
  return f;
}

} // namespace

std::vector<TestFn> TestFunctionFamily::generate() const {
  Rng rng(seed);
  std::vector<TestFn> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    switch (kind) {
      case Kind::polynomial:
        out.push_back(make_polynomial(rng, enforce_zero_at_one));
        break;
      case Kind::spline:
        out.push_back(make_spline(rng, enforce_zero_at_one));
        break;
      case Kind::random_fourier:
        out.push_back(make_fourier(rng, enforce_zero_at_one));
        break;
    }
  }
  return out;
}

namespace {

double weighted_sq_integral(const std::function<double(double)>& g,
                            double exponent, double tol) {
  auto f = [&](double x) {
    const double v = g(x);
    return std::pow(x, exponent) * v * v;
  };
  if (exponent < 0.0) return integrate_singular_left(f, 1.0, tol);
  return integrate_adaptive(f, 0.0, 1.0, tol);
}

} // namespace

HardyReport check_hardy(const std::vector<TestFn>& fns, double alpha,
                        double beta) {
  HardyCase hc{alpha, beta, 1.0};
  const HardyConstant K = hardy_constant(hc);
  if (!K.finite)
    throw Error(ErrorCode::argument,
                "check_hardy: inadmissible (alpha,beta): " + K.failed_condition);

  HardyReport report;
  report.K = K.value;
  const double tol = 1e-10;
  for (std::size_t i = 0; i < fns.size(); ++i) {
    const double den = weighted_sq_integral(fns[i].d1, alpha, tol);
    if (den < 1e-14) {
      ++report.skipped;
      continue;
    }
    const double num = weighted_sq_integral(fns[i].value, beta, tol);
    const double ratio = num / den;
    ++report.samples;
    if (ratio > report.max_ratio) {
      report.max_ratio = ratio;
      report.arg_max = static_cast<int>(i);
    }
  }
  return report;
}

HardyReport check_hardy(const TestFunctionFamily& family, double alpha,
                        double beta) {
  HardyReport report = check_hardy(family.generate(), alpha, beta);
  report.seed = family.seed;
  return report;
}

double hardy_sharpness_ratio(double alpha, double beta, int levels) {
  // exponent in the open divergence window ((beta+1)/2, (alpha-1)/2);
  // midpoint keeps both integrals integrable while the ratio blows up as
  // eps -> 0
  if (!(alpha > 1.0 && beta < alpha - 2.0))
    throw Error(ErrorCode::argument,
                "hardy_sharpness_ratio: side condition must fail (beta < "
                "alpha-2, alpha > 1)");
  const double s = 0.5 * ((beta + 1.0) / 2.0 + (alpha - 1.0) / 2.0);
  const double tol = 1e-6; // the probe only needs ratios to a few digits
  double worst = 0.0;
  for (int j = 1; j <= levels; ++j) {
    const double eps = std::pow(10.0, -j);
    auto y = [&](double x) {
      return (1.0 - x) * std::pow(std::max(x, eps), -s);
    };
    auto yp = [&](double x) {
      if (x <= eps) return -std::pow(eps, -s);
      return -std::pow(x, -s) - s * (1.0 - x) * std::pow(x, -s - 1.0);
    };
    // the mollified sample has a kink at eps: integrate each side separately
    auto both_sides = [&](const std::function<double(double)>& f) {
      return integrate_singular_left(f, eps, tol) +
             integrate_adaptive(f, eps, 1.0, tol);
    };
    const double num = both_sides([&](double x) {
      const double v = y(x);
      return std::pow(x, beta) * v * v;
    });
    const double den = both_sides([&](double x) {
      const double v = yp(x);
      return std::pow(x, alpha) * v * v;
    });
    if (den > 0.0) worst = std::max(worst, num / den);
  }
  return worst;
}

InterpolationReport check_interpolation(const std::vector<TestFn>& family,
                                        double c, double d) {
  if (!(c < d))
    throw Error(ErrorCode::argument, "check_interpolation: degenerate interval");
  InterpolationReport report;
  const double len = d - c;
  const double tol = 1e-11;
  for (const auto& fn : family) {
    // family members live on [0,1]; map t in (c,d) to x = (t-c)/len
    auto f1_sq = [&](double t) {
      const double v = fn.d1((t - c) / len) / len;
      return v * v;
    };
    auto f2_sq = [&](double t) {
      const double v = fn.d2((t - c) / len) / (len * len);
      return v * v;
    };
    auto f0_sq = [&](double t) {
      const double v = fn.value((t - c) / len);
      return v * v;
    };
    // tolerances follow the natural scaling of each norm so the ratio error
    // stays uniform under dilation
    const double n1 = integrate_adaptive(f1_sq, c, d, tol / len);
    const double n2 = integrate_adaptive(f2_sq, c, d, tol / (len * len * len));
    const double n0 = integrate_adaptive(f0_sq, c, d, tol * len);
    const double denom = len * len * n2 + n0 / (len * len);
    const double ratio = denom > 0.0 ? n1 / denom : 0.0;
    if (!std::isfinite(ratio))
      throw Error(ErrorCode::numeric, "check_interpolation: ratio not finite");
    report.ratios.push_back(ratio);
    report.empirical_K = std::max(report.empirical_K, ratio);
    ++report.samples;
  }
  return report;
}

} // namespace beamlab
