#pragma once
// Vertex-centered discrete fields u: grid node -> R^M on an interval or a
// 2-D box. A grid with nx cells has nx+1 nodes per axis at x_i = lo + i h.
// Storage is node-major, component-minor: data[(j*(nx+1) + i)*M + c].
// `fixed` marks Dirichlet nodes whose values minimizers must not touch.
//
// Dumps: <name>.f64 holds the raw little-endian doubles in storage order and
// <name>.hdr is a small text header (key=value per line) describing dtype,
// layout, dims, spacing, and origin.

#include <cstdint>
#include <string>
#include <vector>

#include "wellpath/geometry.hpp"

namespace wellpath {

struct Field {
  int space_dim = 1;
  int state_dim = 1;
  int nx = 0;       // cells along x
  int ny = 0;       // cells along y (0 in 1-D)
  Vec lo{}, hi{};
  std::vector<double> data;
  std::vector<std::uint8_t> fixed;

  static Field make_1d(double lo, double hi, int cells, int state_dim = 1);
  static Field make_2d(Vec lo, Vec hi, int cells_x, int cells_y, int state_dim = 1);

  int nodes_x() const { return nx + 1; }
  int nodes_y() const { return space_dim == 2 ? ny + 1 : 1; }
  int node_count() const { return nodes_x() * nodes_y(); }
  double hx() const { return (hi[0] - lo[0]) / nx; }
  double hy() const { return (hi[1] - lo[1]) / ny; }
  double measure() const;

  int node_index(int i, int j = 0) const { return j * nodes_x() + i; }
  Vec get(int i, int j = 0) const;
  void set(int i, int j, const Vec& v);
  Vec node_pos(int i, int j = 0) const;

  // Trapezoid weight of a node in units of h^N (1/2 per boundary axis).
  double trap_weight(int i, int j = 0) const;

  // Integral of u over the box (tensor trapezoid rule; identical to summing
  // cell averages) and the corresponding mean value.
  Vec mass() const;
  Vec mean() const;
};

void write_field_dump(const Field& field, const std::string& path_base);
Field read_field_dump(const std::string& path_base);

}  // namespace wellpath
