#include "beamlab/assembly.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "beamlab/hermite.hpp"

namespace beamlab {

DofMap DofMap::clamped(int n_nodes) {
  DofMap map;
  map.n_full = 2 * n_nodes;
  map.full_to_reduced.assign(map.n_full, -1);
  int r = 0;
  for (int node = 1; node < n_nodes - 1; ++node) {
    map.full_to_reduced[2 * node] = r++;
    map.full_to_reduced[2 * node + 1] = r++;
  }
  map.n_reduced = r;
  map.reduced_to_full.resize(r);
  for (int f = 0; f < map.n_full; ++f)
    if (map.full_to_reduced[f] >= 0) map.reduced_to_full[map.full_to_reduced[f]] = f;
  return map;
}

namespace {

void scatter(BandMatrix<double>& a, const DofMap& dofs, int node_left,
             const hermite::ElementMatrix& el) {
  const int full[4] = {2 * node_left, 2 * node_left + 1, 2 * node_left + 2,
                       2 * node_left + 3};
  for (int i = 0; i < 4; ++i) {
    const int ri = dofs.full_to_reduced[full[i]];
    if (ri < 0) continue;
    for (int j = 0; j < 4; ++j) {
      const int rj = dofs.full_to_reduced[full[j]];
      if (rj < 0) continue;
      a.add(ri, rj, el[i][j]);
    }
  }
}

} // namespace

AssembledSystem::AssembledSystem(Mesh mesh, DampingProfile profile,
                                 double quad_tol)
    : mesh_(std::move(mesh)), profile_(std::move(profile)),
      dofs_(DofMap::clamped(mesh_.n_nodes())),
      m_(dofs_.n_reduced, 3, 3), k_(dofs_.n_reduced, 3, 3),
      d_(dofs_.n_reduced, 3, 3) {
  for (int e = 0; e < mesh_.n_elements; ++e) {
    const double x0 = mesh_.element_left(e);
    const double x1 = mesh_.element_right(e);
    const double h = x1 - x0;
    scatter(m_, dofs_, e, hermite::mass_element(h));
    scatter(k_, dofs_, e, hermite::stiffness_element(h));
    scatter(d_, dofs_, e, hermite::damping_element(profile_, x0, x1, quad_tol));
  }
  lu_m_ = BandLU<double>(m_);
  lu_k_ = BandLU<double>(k_);
}

AssembledSystem assemble(const Mesh& mesh, const DampingProfile& profile,
                         double quad_tol) {
  return AssembledSystem(mesh, profile, quad_tol);
}

double AssembledSystem::g_norm_sq(const RealState& s) const {
  return dot(s.u, k_.matvec(s.u)) + dot(s.v, m_.matvec(s.v));
}

double AssembledSystem::g_norm_sq(const ComplexState& s) const {
  return cdot(s.u, band_matvec_complex(k_, s.u)).real() +
         cdot(s.v, band_matvec_complex(m_, s.v)).real();
}

Vec AssembledSystem::interpolate(const std::function<double(double)>& value,
                                 const std::function<double(double)>& slope) const {
  Vec out(dofs_.n_reduced, 0.0);
  for (int node = 1; node < mesh_.n_nodes() - 1; ++node) {
    out[dofs_.full_to_reduced[2 * node]] = value(mesh_.nodes[node]);
    out[dofs_.full_to_reduced[2 * node + 1]] = slope(mesh_.nodes[node]);
  }
  return out;
}

namespace {

std::array<double, 4> local_coeff(const DofMap& dofs, const Vec& coeff,
                                  int e) {
  std::array<double, 4> c{};
  const int full[4] = {2 * e, 2 * e + 1, 2 * e + 2, 2 * e + 3};
  for (int i = 0; i < 4; ++i) {
    const int r = dofs.full_to_reduced[full[i]];
    c[i] = r >= 0 ? coeff[r] : 0.0;
  }
  return c;
}

} // namespace

double AssembledSystem::eval(const Vec& coeff, double x) const {
  const int e = mesh_.locate(x);
  const double h = mesh_.element_size(e);
  const double xi = (x - mesh_.element_left(e)) / h;
  const auto c = local_coeff(dofs_, coeff, e);
  const auto n = hermite::shape(xi, h);
  return c[0] * n[0] + c[1] * n[1] + c[2] * n[2] + c[3] * n[3];
}

double AssembledSystem::eval_d2(const Vec& coeff, double x, bool from_left) const {
  int e = mesh_.locate(x);
  if (from_left && e > 0 && x == mesh_.element_left(e)) --e;
  const double h = mesh_.element_size(e);
  const double xi = (x - mesh_.element_left(e)) / h;
  const auto c = local_coeff(dofs_, coeff, e);
  const auto d2 = hermite::shape_d2(xi, h);
  return c[0] * d2[0] + c[1] * d2[1] + c[2] * d2[2] + c[3] * d2[3];
}

namespace {

void check_dims(const AssembledSystem& sys, const RealState& s,
                const char* where) {
  if (s.u.size() != static_cast<std::size_t>(sys.n()) ||
      s.v.size() != static_cast<std::size_t>(sys.n()))
    throw Error(ErrorCode::argument,
                std::string(where) + ": state dimension mismatch");
}

} // namespace

double potential_energy(const AssembledSystem& sys, const RealState& s) {
  check_dims(sys, s, "potential_energy");
  return 0.5 * dot(s.u, sys.K().matvec(s.u));
}

double kinetic_energy(const AssembledSystem& sys, const RealState& s) {
  check_dims(sys, s, "kinetic_energy");
  return 0.5 * dot(s.v, sys.M().matvec(s.v));
}

double energy(const AssembledSystem& sys, const RealState& s) {
  return potential_energy(sys, s) + kinetic_energy(sys, s);
}

double dissipation_rate(const AssembledSystem& sys, const RealState& s) {
  check_dims(sys, s, "dissipation_rate");
  return dot(s.v, sys.D().matvec(s.v));
}

std::string triplet_string(const BandMatrix<double>& a) {
  struct Entry {
    int i, j;
    double v;
  };
  std::vector<Entry> entries;
  for (int i = 0; i < a.rows(); ++i) {
    const int jlo = std::max(0, i - a.kl());
    const int jhi = std::min(a.rows() - 1, i + a.ku());
    for (int j = jlo; j <= jhi; ++j) {
      const double v = a.get(i, j);
      if (v != 0.0) entries.push_back({i, j, v});
    }
  }
  std::ostringstream out;
  char buf[64];
  out << a.rows() << " " << a.rows() << " " << entries.size() << "\n";
  for (const auto& t : entries) {
    out << t.i << " " << t.j;
    std::snprintf(buf, sizeof buf, " %.17g\n", t.v);
    out << buf;
  }
  return out.str();
}

void export_triplets(const BandMatrix<double>& a, const std::string& path) {
  std::ofstream out(path);
  if (!out)
    throw Error(ErrorCode::io, "export_triplets: cannot open '" + path + "'");
  out << triplet_string(a);
}

} // namespace beamlab
