#ifndef BEAMLAB_STATE_HPP
#define BEAMLAB_STATE_HPP

#include <complex>
#include <vector>

namespace beamlab {

// Paired displacement/velocity coefficients in the reduced (clamped) DOF
// space. Clamped boundary DOFs are absent by construction.
template <typename T>
struct State {
  std::vector<T> u;
  std::vector<T> v;

  State() = default;
  State(std::size_t n) : u(n, T(0)), v(n, T(0)) {}
  State(std::vector<T> u_, std::vector<T> v_)
      : u(std::move(u_)), v(std::move(v_)) {}

  std::size_t size() const { return u.size(); }
};

using RealState = State<double>;
using ComplexState = State<std::complex<double>>;

} // namespace beamlab

#endif
