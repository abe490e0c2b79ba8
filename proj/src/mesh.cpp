#include "beamlab/mesh.hpp"

#include <algorithm>
#include <cmath>

#include "beamlab/error.hpp"

namespace beamlab {

namespace {

// Nodes of (0,1) with m elements whose sizes grow away from 0 by the factor g.
std::vector<double> unit_half_nodes(int m, double g) {
  std::vector<double> xs(m + 1);
  xs[0] = 0.0;
  if (g == 1.0) {
    for (int k = 1; k < m; ++k) xs[k] = static_cast<double>(k) / m;
  } else {
    // h * (1 + g + ... + g^{m-1}) = 1
    const double h = (g - 1.0) / (std::pow(g, m) - 1.0);
    double x = 0.0, hk = h;
    for (int k = 1; k < m; ++k) {
      x += hk;
      hk *= g;
      xs[k] = x;
    }
  }
  xs[m] = 1.0;
  return xs;
}

} // namespace

int Mesh::locate(double x) const {
  auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
  int e = static_cast<int>(it - nodes.begin()) - 1;
  return std::clamp(e, 0, n_elements - 1);
}

Mesh build_mesh(int n_elements, double grading) {
  if (n_elements < 4)
    throw Error(ErrorCode::argument, "build_mesh: n_elements must be >= 4");
  if (n_elements % 2 != 0)
    throw Error(ErrorCode::argument, "build_mesh: n_elements must be even");
  if (!(grading >= 1.0))
    throw Error(ErrorCode::argument, "build_mesh: grading must be >= 1");

  const int m = n_elements / 2;
  const std::vector<double> right = unit_half_nodes(m, grading);
  // stiffness entries scale like 1/h^3: reject meshes whose smallest element
  // cannot be represented sanely in double precision
  if (!(right[1] >= 1e-12))
    throw Error(ErrorCode::argument,
                "build_mesh: grading too strong for n_elements (smallest "
                "element below 1e-12)");

  Mesh mesh;
  mesh.n_elements = n_elements;
  mesh.grading = grading;
  mesh.nodes.reserve(n_elements + 1);
  // left half mirrors the right half, so sizes also shrink toward 0
  for (int k = m; k >= 1; --k) mesh.nodes.push_back(-right[k]);
  for (int k = 0; k <= m; ++k) mesh.nodes.push_back(right[k]);
  mesh.interface_index = m;
  return mesh;
}

} // namespace beamlab
