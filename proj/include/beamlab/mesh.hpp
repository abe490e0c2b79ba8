#ifndef BEAMLAB_MESH_HPP
#define BEAMLAB_MESH_HPP

#include <vector>

namespace beamlab {

// 1-D mesh of (-1,1). The interface x=0 is always a node, and element sizes
// on each half shrink geometrically toward 0 with the given grading factor
// (grading 1 = uniform).
struct Mesh {
  std::vector<double> nodes; // strictly increasing, nodes.front()=-1, back()=1
  int n_elements = 0;
  double grading = 1.0;
  int interface_index = 0; // nodes[interface_index] == 0

  int n_nodes() const { return static_cast<int>(nodes.size()); }
  double element_left(int e) const { return nodes[e]; }
  double element_right(int e) const { return nodes[e + 1]; }
  double element_size(int e) const { return nodes[e + 1] - nodes[e]; }
  // index of the element containing x (ties resolved to the left element)
  int locate(double x) const;
};

Mesh build_mesh(int n_elements, double grading);

} // namespace beamlab

#endif
