#ifndef BEAMLAB_LINALG_HPP
#define BEAMLAB_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <utility>
#include <vector>

#include "beamlab/error.hpp"

namespace beamlab {

using Vec = std::vector<double>;
using CVec = std::vector<std::complex<double>>;

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// conjugate-linear in the first argument: sum conj(a_i) b_i
inline std::complex<double> cdot(const CVec& a, const CVec& b) {
  std::complex<double> s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

inline double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

// Band matrix in LAPACK-style column storage. kl sub- and ku super-diagonals
// are addressable, plus kl extra super-diagonal rows of fill-in space so the
// same object can be factored in place with partial pivoting.
template <typename T>
class BandMatrix {
public:
  BandMatrix() = default;
  BandMatrix(int n, int kl, int ku)
      : n_(n), kl_(kl), ku_(ku), ldab_(2 * kl + ku + 1),
        a_(static_cast<std::size_t>(ldab_) * n, T(0)) {}

  int rows() const { return n_; }
  int kl() const { return kl_; }
  int ku() const { return ku_; }

  bool in_band(int i, int j) const {
    return i >= 0 && i < n_ && j >= 0 && j < n_ && i - j <= kl_ &&
           j - i <= ku_ + kl_;
  }

  // valid for j - (ku+kl) <= i <= j + kl
  T& at(int i, int j) { return a_[idx(i, j)]; }
  const T& at(int i, int j) const { return a_[idx(i, j)]; }

  // value with zero outside the stored band
  T get(int i, int j) const { return in_band(i, j) ? a_[idx(i, j)] : T(0); }

  void add(int i, int j, T v) { a_[idx(i, j)] += v; }

  std::vector<T> matvec(const std::vector<T>& x) const {
    std::vector<T> y(n_, T(0));
    for (int j = 0; j < n_; ++j) {
      const int ilo = std::max(0, j - ku_ - kl_);
      const int ihi = std::min(n_ - 1, j + kl_);
      for (int i = ilo; i <= ihi; ++i) y[i] += a_[idx(i, j)] * x[j];
    }
    return y;
  }

  std::vector<T> matvec_transpose(const std::vector<T>& x) const {
    std::vector<T> y(n_, T(0));
    for (int j = 0; j < n_; ++j) {
      const int ilo = std::max(0, j - ku_ - kl_);
      const int ihi = std::min(n_ - 1, j + kl_);
      for (int i = ilo; i <= ihi; ++i) y[j] += a_[idx(i, j)] * x[i];
    }
    return y;
  }

private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(j) * ldab_ + (kl_ + ku_ + i - j);
  }

  int n_ = 0, kl_ = 0, ku_ = 0, ldab_ = 0;
  std::vector<T> a_;

  template <typename U>
  friend class BandLU;
};

// c0*A + c1*B entrywise, same band profile required.
template <typename T, typename S>
BandMatrix<T> band_combine(const BandMatrix<S>& a, T c0, const BandMatrix<S>& b,
                           T c1) {
  BandMatrix<T> out(a.rows(), a.kl(), a.ku());
  for (int j = 0; j < a.rows(); ++j) {
    const int ilo = std::max(0, j - a.ku());
    const int ihi = std::min(a.rows() - 1, j + a.kl());
    for (int i = ilo; i <= ihi; ++i)
      out.at(i, j) = c0 * T(a.at(i, j)) + c1 * T(b.at(i, j));
  }
  return out;
}

template <typename T, typename S>
void band_axpy(BandMatrix<T>& y, T c, const BandMatrix<S>& x) {
  for (int j = 0; j < y.rows(); ++j) {
    const int ilo = std::max(0, j - y.ku());
    const int ihi = std::min(y.rows() - 1, j + y.kl());
    for (int i = ilo; i <= ihi; ++i) y.at(i, j) += c * T(x.at(i, j));
  }
}

// LU factorization of a band matrix with partial pivoting (gbtrf-style).
template <typename T>
class BandLU {
public:
  BandLU() = default;

  explicit BandLU(BandMatrix<T> a) : m_(std::move(a)) { factor(); }

  bool singular() const { return singular_; }
  double min_pivot() const { return min_pivot_; }

  // Solve A x = b.
  std::vector<T> solve(std::vector<T> b) const {
    require_ok();
    const int n = m_.n_, kl = m_.kl_, ku = m_.ku_;
    for (int j = 0; j < n; ++j) {
      if (piv_[j] != j) std::swap(b[j], b[piv_[j]]);
      const int ihi = std::min(n - 1, j + kl);
      for (int i = j + 1; i <= ihi; ++i) b[i] -= m_.at(i, j) * b[j];
    }
    for (int j = n - 1; j >= 0; --j) {
      b[j] /= m_.at(j, j);
      const int ilo = std::max(0, j - kl - ku);
      for (int i = ilo; i < j; ++i) b[i] -= m_.at(i, j) * b[j];
    }
    return b;
  }

  // Solve A^T x = b.
  std::vector<T> solve_transpose(std::vector<T> b) const {
    require_ok();
    const int n = m_.n_, kl = m_.kl_, ku = m_.ku_;
    // U^T is lower triangular: forward substitution.
    for (int j = 0; j < n; ++j) {
      const int ilo = std::max(0, j - kl - ku);
      for (int i = ilo; i < j; ++i) b[j] -= m_.at(i, j) * b[i];
      b[j] /= m_.at(j, j);
    }
    // L^T with interleaved row swaps in reverse order.
    for (int j = n - 1; j >= 0; --j) {
      const int ihi = std::min(n - 1, j + kl);
      for (int i = j + 1; i <= ihi; ++i) b[j] -= m_.at(i, j) * b[i];
      if (piv_[j] != j) std::swap(b[j], b[piv_[j]]);
    }
    return b;
  }

private:
  void require_ok() const {
    if (singular_)
      throw Error(ErrorCode::numeric, "band LU: matrix is numerically singular");
  }

  void factor() {
    const int n = m_.n_, kl = m_.kl_, ku = m_.ku_;
    piv_.resize(n);
    min_pivot_ = std::numeric_limits<double>::infinity();
    double max_entry = 0.0;
    for (int j = 0; j < n; ++j) {
      const int ilo = std::max(0, j - ku);
      const int ihi = std::min(n - 1, j + kl);
      for (int i = ilo; i <= ihi; ++i)
        max_entry = std::max(max_entry, std::abs(m_.at(i, j)));
    }
    for (int j = 0; j < n; ++j) {
      const int ihi = std::min(n - 1, j + kl);
      int jp = j;
      double best = std::abs(m_.at(j, j));
      for (int i = j + 1; i <= ihi; ++i) {
        const double v = std::abs(m_.at(i, j));
        if (v > best) {
          best = v;
          jp = i;
        }
      }
      piv_[j] = jp;
      const int khi = std::min(n - 1, j + kl + ku);
      if (jp != j)
        for (int k = j; k <= khi; ++k) std::swap(m_.at(j, k), m_.at(jp, k));
      const double pivot = std::abs(m_.at(j, j));
      min_pivot_ = std::min(min_pivot_, pivot);
      // only an exact (to extreme scaling) breakdown counts as singular;
      // graded meshes legitimately produce wide pivot ranges
      if (pivot <= 1e-300 * std::max(1.0, max_entry)) {
        singular_ = true;
        return;
      }
      for (int i = j + 1; i <= ihi; ++i) {
        m_.at(i, j) /= m_.at(j, j);
        const T mult = m_.at(i, j);
        for (int k = j + 1; k <= khi; ++k) m_.at(i, k) -= mult * m_.at(j, k);
      }
    }
  }

  BandMatrix<T> m_;
  std::vector<int> piv_;
  bool singular_ = false;
  double min_pivot_ = 0.0;
};

// y = A x for a real band matrix applied to a complex vector
inline CVec band_matvec_complex(const BandMatrix<double>& a, const CVec& x) {
  CVec y(x.size(), std::complex<double>(0));
  for (int j = 0; j < a.rows(); ++j) {
    const int ilo = std::max(0, j - a.ku());
    const int ihi = std::min(a.rows() - 1, j + a.kl());
    for (int i = ilo; i <= ihi; ++i) y[i] += a.at(i, j) * x[j];
  }
  return y;
}

// Solve A^H x = b via A^T conj(x) = conj(b).
inline CVec solve_adjoint(const BandLU<std::complex<double>>& lu, CVec b) {
  for (auto& v : b) v = std::conj(v);
  CVec y = lu.solve_transpose(std::move(b));
  for (auto& v : y) v = std::conj(v);
  return y;
}

} // namespace beamlab

#endif
