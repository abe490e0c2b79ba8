#ifndef BEAMLAB_ASSEMBLY_HPP
#define BEAMLAB_ASSEMBLY_HPP

#include <functional>
#include <memory>
#include <string>

#include "beamlab/damping.hpp"
#include "beamlab/linalg.hpp"
#include "beamlab/mesh.hpp"
#include "beamlab/state.hpp"

namespace beamlab {

// Bookkeeping for clamped-end DOF elimination (u = u' = 0 at x = +-1).
struct DofMap {
  int n_full = 0;    // 2 * n_nodes
  int n_reduced = 0; // n_full - 4
  std::vector<int> full_to_reduced; // -1 for eliminated DOFs
  std::vector<int> reduced_to_full;

  static DofMap clamped(int n_nodes);
  int node_value_dof(int node) const { return full_to_reduced[2 * node]; }
  int node_slope_dof(int node) const { return full_to_reduced[2 * node + 1]; }
};

// Assembled discrete operator: mass M (int u phi), stiffness K
// (int u'' phi''), damping D (int b u'' phi''), all after boundary
// elimination. The energy Gram matrix is block-diag(K, M) and is applied
// implicitly. Immutable after assembly.
class AssembledSystem {
public:
  AssembledSystem(Mesh mesh, DampingProfile profile, double quad_tol);

  const Mesh& mesh() const { return mesh_; }
  const DampingProfile& profile() const { return profile_; }
  const DofMap& dofs() const { return dofs_; }
  int n() const { return dofs_.n_reduced; }

  const BandMatrix<double>& M() const { return m_; }
  const BandMatrix<double>& K() const { return k_; }
  const BandMatrix<double>& D() const { return d_; }

  const BandLU<double>& lu_M() const { return lu_m_; }
  const BandLU<double>& lu_K() const { return lu_k_; }

  // squared G-norm: u^H K u + v^H M v (real for the symmetric forms)
  double g_norm_sq(const RealState& s) const;
  double g_norm_sq(const ComplexState& s) const;

  // Hermite interpolant of (value, slope) data onto the reduced DOF vector;
  // values at the clamped ends are dropped (they must be compatible).
  Vec interpolate(const std::function<double(double)>& value,
                  const std::function<double(double)>& slope) const;

  // Point evaluation of a reduced coefficient vector and its second
  // derivative. At interior nodes the value is taken from the left element
  // for x equal to a node (the field is C^1, so only w'' can differ).
  double eval(const Vec& coeff, double x) const;
  double eval_d2(const Vec& coeff, double x, bool from_left = false) const;

private:
  Mesh mesh_;
  DampingProfile profile_;
  DofMap dofs_;
  BandMatrix<double> m_, k_, d_;
  BandLU<double> lu_m_, lu_k_;
};

AssembledSystem assemble(const Mesh& mesh, const DampingProfile& profile,
                         double quad_tol);

// E = 1/2 (u^T K u + v^T M v)
double energy(const AssembledSystem& sys, const RealState& s);
// potential/kinetic split of the same quadratic form
double potential_energy(const AssembledSystem& sys, const RealState& s);
double kinetic_energy(const AssembledSystem& sys, const RealState& s);
// v^T D v = discrete int b |v''|^2
double dissipation_rate(const AssembledSystem& sys, const RealState& s);

// Coordinate triplet export: one-line header "rows cols nnz", then
// "row col value" per stored nonzero, row-major, full double precision.
std::string triplet_string(const BandMatrix<double>& a);
void export_triplets(const BandMatrix<double>& a, const std::string& path);

} // namespace beamlab

#endif
