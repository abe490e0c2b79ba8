#include "beamlab/resolvent.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "beamlab/rng.hpp"

namespace beamlab {

namespace {

using Complex = std::complex<double>;

CVec band_cmatvec(const BandMatrix<double>& a, const CVec& x) {
  return band_matvec_complex(a, x);
}

// solve a real SPD band system for a complex right-hand side
CVec solve_real(const BandLU<double>& lu, const CVec& b) {
  Vec re(b.size()), im(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    re[i] = b[i].real();
    im[i] = b[i].imag();
  }
  re = lu.solve(std::move(re));
  im = lu.solve(std::move(im));
  CVec out(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = Complex(re[i], im[i]);
  return out;
}

} // namespace

ResolventOperator::ResolventOperator(const AssembledSystem& sys, double lambda)
    : sys_(sys), lambda_(lambda),
      s_(band_combine(sys.K(), Complex(1.0), sys.M(),
                      Complex(-lambda * lambda))) {
  band_axpy(s_, Complex(0.0, lambda), sys.D());
  lu_ = BandLU<Complex>(s_);
  singular_ = lu_.singular();
}

CVec ResolventOperator::solve_refined(const CVec& rhs, bool adjoint) const {
  auto apply_s = [&](const CVec& x) {
    if (!adjoint) return s_.matvec(x);
    CVec xc(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) xc[i] = std::conj(x[i]);
    CVec y = s_.matvec_transpose(xc);
    for (auto& v : y) v = std::conj(v);
    return y;
  };
  CVec x = adjoint ? solve_adjoint(lu_, rhs) : lu_.solve(rhs);
  // one step of iterative refinement
  const CVec ax = apply_s(x);
  CVec r(rhs.size());
  for (std::size_t i = 0; i < rhs.size(); ++i) r[i] = rhs[i] - ax[i];
  const CVec dx = adjoint ? solve_adjoint(lu_, r) : lu_.solve(r);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += dx[i];
  return x;
}

ComplexState ResolventOperator::apply(const ComplexState& f) const {
  if (singular_)
    throw Error(ErrorCode::numeric,
                "resolvent solve: system singular at lambda=" +
                    std::to_string(lambda_));
  const Complex il(0.0, lambda_);
  // rhs = M g + i*lambda*M f + D f
  CVec rhs = band_cmatvec(sys_.M(), f.v);
  const CVec mf = band_cmatvec(sys_.M(), f.u);
  const CVec df = band_cmatvec(sys_.D(), f.u);
  for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] += il * mf[i] + df[i];
  CVec u = solve_refined(rhs, false);
  CVec v(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) v[i] = il * u[i] - f.u[i];
  return ComplexState(std::move(u), std::move(v));
}

ComplexState ResolventOperator::apply_conj_transpose(const ComplexState& w) const {
  if (singular_)
    throw Error(ErrorCode::numeric,
                "resolvent adjoint solve: system singular at lambda=" +
                    std::to_string(lambda_));
  const Complex il(0.0, lambda_);
  // R = C2 S^{-1} B + C0 with B = [i*l*M + D, M], C2 = [I; i*l*I],
  // C0 = [0 0; -I 0]; hence R^H w = B^H S^{-H} (w_u - i*l*w_v) + (-w_v, 0).
  CVec rhs(w.u.size());
  for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = w.u[i] - il * w.v[i];
  const CVec z = solve_refined(rhs, true);
  const CVec mz = band_cmatvec(sys_.M(), z);
  const CVec dz = band_cmatvec(sys_.D(), z);
  CVec out_u(z.size());
  for (std::size_t i = 0; i < z.size(); ++i)
    out_u[i] = dz[i] - il * mz[i] - w.v[i];
  return ComplexState(std::move(out_u), mz);
}

ComplexState forward_apply(const AssembledSystem& sys, double lambda,
                           const ComplexState& s) {
  const Complex il(0.0, lambda);
  CVec fu(s.u.size()), fv(s.v.size());
  const CVec ku = band_cmatvec(sys.K(), s.u);
  const CVec dv = band_cmatvec(sys.D(), s.v);
  CVec w(ku.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = ku[i] + dv[i];
  const CVec minv_w = solve_real(sys.lu_M(), w);
  for (std::size_t i = 0; i < fu.size(); ++i) {
    fu[i] = il * s.u[i] - s.v[i];
    fv[i] = il * s.v[i] + minv_w[i];
  }
  return ComplexState(std::move(fu), std::move(fv));
}

ComplexState resolvent_apply(const AssembledSystem& sys, double lambda,
                             const ComplexState& f) {
  return ResolventOperator(sys, lambda).apply(f);
}

ResolventSample resolvent_norm(const AssembledSystem& sys, double lambda,
                               double tol, int max_iter, std::uint64_t seed) {
  if (!(tol > 0.0 && tol <= 1e-4))
    throw Error(ErrorCode::argument, "resolvent_norm: tol must be in (0,1e-4]");
  ResolventSample sample;
  sample.lambda = lambda;

  ResolventOperator op(sys, lambda);
  if (op.singular()) {
    // Discrete spectrum on the imaginary axis (undamped resonance): report
    // a divergent norm instead of aborting.
    sample.norm = std::numeric_limits<double>::infinity();
    sample.converged = false;
    return sample;
  }

  const int n = sys.n();
  Rng rng(seed);
  ComplexState x(n);
  for (int i = 0; i < n; ++i) {
    x.u[i] = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    x.v[i] = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  }
  auto g_normalize = [&](ComplexState& s) {
    const double nrm = std::sqrt(sys.g_norm_sq(s));
    for (auto& c : s.u) c /= nrm;
    for (auto& c : s.v) c /= nrm;
    return nrm;
  };
  g_normalize(x);

  double rho = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    const ComplexState y = op.apply(x);
    const double rho_new = sys.g_norm_sq(y); // = ||R x||_G^2 for ||x||_G = 1
    // w = R^H G y;  t = G^{-1} w is the next iterate (before normalization)
    ComplexState gy(n);
    gy.u = band_cmatvec(sys.K(), y.u);
    gy.v = band_cmatvec(sys.M(), y.v);
    const ComplexState w = op.apply_conj_transpose(gy);
    ComplexState t(n);
    t.u = solve_real(sys.lu_K(), w.u);
    t.v = solve_real(sys.lu_M(), w.v);

    // Rayleigh residual ||T x - rho x||_G with T x = t
    ComplexState diff(n);
    for (int i = 0; i < n; ++i) {
      diff.u[i] = t.u[i] - rho_new * x.u[i];
      diff.v[i] = t.v[i] - rho_new * x.v[i];
    }
    const double res = std::sqrt(sys.g_norm_sq(diff));

    const double delta = std::abs(rho_new - rho);
    rho = rho_new;
    x = t;
    g_normalize(x);

    if (res <= tol * rho && delta <= tol * rho) {
      sample.norm = std::sqrt(rho);
      sample.iterations = it;
      sample.converged = true;
      sample.residual = res / rho;
      return sample;
    }
  }
  sample.norm = std::sqrt(rho);
  sample.iterations = max_iter;
  sample.converged = false;
  sample.residual = std::numeric_limits<double>::quiet_NaN();
  return sample;
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  if (!(lo > 0.0 && hi > lo) || count < 2)
    throw Error(ErrorCode::argument, "log_spaced: bad range");
  std::vector<double> out(count);
  const double llo = std::log10(lo), lhi = std::log10(hi);
  for (int i = 0; i < count; ++i)
    out[i] = std::pow(10.0, llo + (lhi - llo) * i / (count - 1));
  return out;
}

std::vector<ResolventSample> sweep(const AssembledSystem& sys,
                                   const std::vector<double>& lambda_grid,
                                   double tol, int max_iter, int jobs,
                                   std::uint64_t seed) {
  if (lambda_grid.size() < 8)
    throw Error(ErrorCode::argument, "sweep: need at least 8 grid points");
  for (std::size_t i = 1; i < lambda_grid.size(); ++i)
    if (!(lambda_grid[i] > lambda_grid[i - 1]))
      throw Error(ErrorCode::argument, "sweep: grid must be ascending");

  std::vector<ResolventSample> samples(lambda_grid.size());
  auto work = [&](std::size_t i) {
    try {
      samples[i] = resolvent_norm(sys, lambda_grid[i], tol, max_iter, seed);
    } catch (const Error&) {
      samples[i].lambda = lambda_grid[i];
      samples[i].converged = false;
      samples[i].norm = std::numeric_limits<double>::quiet_NaN();
    }
  };

  if (jobs <= 1) {
    for (std::size_t i = 0; i < samples.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int n_threads = std::min<std::size_t>(jobs, samples.size());
    for (int t = 0; t < n_threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < samples.size();
             i = next.fetch_add(1))
          work(i);
      });
    for (auto& th : pool) th.join();
  }
  return samples;
}

GammaFit fit_gamma(const std::vector<ResolventSample>& samples) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  double lo = 0, hi = 0;
  for (const auto& s : samples) {
    if (!s.converged || !(s.norm > 0.0) || !std::isfinite(s.norm)) continue;
    const double x = std::log(s.lambda);
    const double y = std::log(s.norm);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    if (m == 0) lo = s.lambda;
    hi = s.lambda;
    ++m;
  }
  if (m < 6)
    throw Error(ErrorCode::numeric, "fit_gamma: fewer than 6 converged samples");
  const double denom = m * sxx - sx * sx;
  const double slope = (m * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / m;

  double ss = 0.0;
  for (const auto& s : samples) {
    if (!s.converged || !(s.norm > 0.0) || !std::isfinite(s.norm)) continue;
    const double r =
        std::log(s.norm) - (intercept + slope * std::log(s.lambda));
    ss += r * r;
  }

  GammaFit fit;
  fit.gamma_num = slope;
  fit.lambda_window = {lo, hi};
  fit.residual = std::sqrt(ss / m);
  fit.samples_used = m;
  return fit;
}

} // namespace beamlab
