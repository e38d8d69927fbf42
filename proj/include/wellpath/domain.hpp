#pragma once
// Spatial domain: an axis-aligned box in dimension 1 or 2, optionally
// partitioned into subdomains each carrying its own well field. In 1-D the
// partition is a sorted list of interior breakpoints; in 2-D it is a single
// polyline that splits the box into two sides.

#include <vector>

#include "wellpath/geometry.hpp"

namespace wellpath {

struct SpatialDomain {
  int dim = 1;  // 1 or 2
  Vec lo{0.0};
  Vec hi{1.0};

  // 1-D partition: strictly increasing breakpoints strictly inside (lo, hi).
  std::vector<double> breakpoints;

  // 2-D partition: a simple polyline whose endpoints lie on the box boundary.
  // Points on/left of the line belong to subdomain 0, right to subdomain 1.
  std::vector<Vec> split_line;

  int subdomain_count() const;
  int subdomain_at(const Vec& x) const;  // ties resolve to the lower index
  bool contains(const Vec& x) const;
  double measure() const;  // length (1-D) or area (2-D)

  // Throws invalid_spec when the box is degenerate, breakpoints are not
  // strictly increasing interior points, or the split line self-intersects or
  // fails to reach the boundary.
  void validate() const;
};

// Convenience constructors for the two supported dimensions.
SpatialDomain make_interval(double lo, double hi, std::vector<double> breakpoints = {});
SpatialDomain make_box2(Vec lo, Vec hi, std::vector<Vec> split_line = {});

}  // namespace wellpath
