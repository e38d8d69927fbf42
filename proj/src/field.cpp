#include "wellpath/field.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "wellpath/errors.hpp"

namespace wellpath {

Field Field::make_1d(double lo, double hi, int cells, int state_dim) {
  if (cells < 1) fail_param("field needs at least one cell");
  if (!(hi > lo)) fail_param("field interval is degenerate");
  if (state_dim < 1 || state_dim > 3) fail_param("field state dimension must be 1, 2, or 3");
  Field f;
  f.space_dim = 1;
  f.state_dim = state_dim;
  f.nx = cells;
  f.lo = Vec{lo};
  f.hi = Vec{hi};
  f.data.assign(static_cast<std::size_t>(f.node_count()) * state_dim, 0.0);
  f.fixed.assign(static_cast<std::size_t>(f.node_count()), 0);
  return f;
}

Field Field::make_2d(Vec lo, Vec hi, int cells_x, int cells_y, int state_dim) {
  if (cells_x < 1 || cells_y < 1) fail_param("field needs at least one cell per axis");
  if (!(hi[0] > lo[0] && hi[1] > lo[1])) fail_param("field box is degenerate");
  if (state_dim < 1 || state_dim > 3) fail_param("field state dimension must be 1, 2, or 3");
  Field f;
  f.space_dim = 2;
  f.state_dim = state_dim;
  f.nx = cells_x;
  f.ny = cells_y;
  f.lo = lo;
  f.hi = hi;
  f.data.assign(static_cast<std::size_t>(f.node_count()) * state_dim, 0.0);
  f.fixed.assign(static_cast<std::size_t>(f.node_count()), 0);
  return f;
}

double Field::measure() const {
  return space_dim == 2 ? (hi[0] - lo[0]) * (hi[1] - lo[1]) : (hi[0] - lo[0]);
}

Vec Field::get(int i, int j) const {
  const std::size_t base = static_cast<std::size_t>(node_index(i, j)) * state_dim;
  Vec v;
  for (int c = 0; c < state_dim; ++c) v[c] = data[base + static_cast<std::size_t>(c)];
  return v;
}

void Field::set(int i, int j, const Vec& v) {
  const std::size_t base = static_cast<std::size_t>(node_index(i, j)) * state_dim;
  for (int c = 0; c < state_dim; ++c) data[base + static_cast<std::size_t>(c)] = v[c];
}

Vec Field::node_pos(int i, int j) const {
  Vec x{lo[0] + hx() * i};
  if (space_dim == 2) x[1] = lo[1] + hy() * j;
  return x;
}

double Field::trap_weight(int i, int j) const {
  double w = (i == 0 || i == nx) ? 0.5 : 1.0;
  if (space_dim == 2) w *= (j == 0 || j == ny) ? 0.5 : 1.0;
  return w;
}

Vec Field::mass() const {
  const double cell = space_dim == 2 ? hx() * hy() : hx();
  Vec total{};
  for (int j = 0; j < nodes_y(); ++j)
    for (int i = 0; i < nodes_x(); ++i) total += (trap_weight(i, j) * cell) * get(i, j);
  return total;
}

Vec Field::mean() const { return (1.0 / measure()) * mass(); }

void write_field_dump(const Field& field, const std::string& path_base) {
  {
    std::ofstream raw(path_base + ".f64", std::ios::binary);
    if (!raw) fail_io("cannot open " + path_base + ".f64 for writing");
    raw.write(reinterpret_cast<const char*>(field.data.data()),
              static_cast<std::streamsize>(field.data.size() * sizeof(double)));
    if (!raw) fail_io("short write on " + path_base + ".f64");
  }
  std::ostringstream hdr;
  hdr << "dtype=f64le\n";
  hdr << "order=node_major_component_minor\n";
  hdr << "space_dim=" << field.space_dim << "\n";
  hdr << "state_dim=" << field.state_dim << "\n";
  hdr << "cells_x=" << field.nx << "\n";
  if (field.space_dim == 2) hdr << "cells_y=" << field.ny << "\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", field.lo[0]);
  hdr << "origin_x=" << buf << "\n";
  if (field.space_dim == 2) {
    std::snprintf(buf, sizeof buf, "%.17g", field.lo[1]);
    hdr << "origin_y=" << buf << "\n";
  }
  std::snprintf(buf, sizeof buf, "%.17g", field.hx());
  hdr << "spacing_x=" << buf << "\n";
  if (field.space_dim == 2) {
    std::snprintf(buf, sizeof buf, "%.17g", field.hy());
    hdr << "spacing_y=" << buf << "\n";
  }
  hdr << "count=" << field.data.size() << "\n";
  std::ofstream h(path_base + ".hdr");
  if (!h) fail_io("cannot open " + path_base + ".hdr for writing");
  h << hdr.str();
  if (!h) fail_io("short write on " + path_base + ".hdr");
}

Field read_field_dump(const std::string& path_base) {
  std::ifstream h(path_base + ".hdr");
  if (!h) fail_io("cannot open " + path_base + ".hdr");
  int space_dim = 0, state_dim = 0, cells_x = 0, cells_y = 0;
  double ox = 0.0, oy = 0.0, sx = 0.0, sy = 0.0;
  std::size_t count = 0;
  std::string line;
  while (std::getline(h, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = line.substr(0, eq);
    const std::string val = line.substr(eq + 1);
    if (key == "space_dim") space_dim = std::stoi(val);
    else if (key == "state_dim") state_dim = std::stoi(val);
    else if (key == "cells_x") cells_x = std::stoi(val);
    else if (key == "cells_y") cells_y = std::stoi(val);
    else if (key == "origin_x") ox = std::stod(val);
    else if (key == "origin_y") oy = std::stod(val);
    else if (key == "spacing_x") sx = std::stod(val);
    else if (key == "spacing_y") sy = std::stod(val);
    else if (key == "count") count = static_cast<std::size_t>(std::stoull(val));
    else if (key == "dtype" && val != "f64le") fail_io("unsupported dump dtype: " + val);
  }
  if (space_dim < 1 || space_dim > 2 || cells_x < 1 || state_dim < 1)
    fail_io("malformed field header: " + path_base + ".hdr");

  Field f = space_dim == 2
                ? Field::make_2d(Vec{ox, oy}, Vec{ox + sx * cells_x, oy + sy * cells_y},
                                 cells_x, cells_y, state_dim)
                : Field::make_1d(ox, ox + sx * cells_x, cells_x, state_dim);
  if (count != f.data.size()) fail_io("field header count mismatch: " + path_base);
  std::ifstream raw(path_base + ".f64", std::ios::binary);
  if (!raw) fail_io("cannot open " + path_base + ".f64");
  raw.read(reinterpret_cast<char*>(f.data.data()),
           static_cast<std::streamsize>(f.data.size() * sizeof(double)));
  if (raw.gcount() != static_cast<std::streamsize>(f.data.size() * sizeof(double)))
    fail_io("short read on " + path_base + ".f64");
  return f;
}

}  // namespace wellpath
