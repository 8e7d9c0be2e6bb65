#include "maxte/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "maxte/csv.hpp"
#include "maxte/errors.hpp"

namespace maxte {

CartesianGrid make_grid(int n, double half_width) {
  if (n < 2 || !(half_width > 0.0)) {
    throw std::invalid_argument("grid needs n >= 2 and positive half width");
  }
  CartesianGrid g;
  g.nx = g.ny = n;
  g.xmin = g.ymin = -half_width;
  g.xmax = g.ymax = half_width;
  return g;
}

int NodeClassification::count(NodeLabel which) const {
  return static_cast<int>(std::count(labels.begin(), labels.end(), which));
}

NodeClassification classify(const CartesianGrid& grid, const DiskDomain& dom) {
  if (!(dom.radius > 0.0)) {
    throw std::invalid_argument("disk radius must be positive");
  }
  const double h = std::max(grid.hx(), grid.hy());
  const double clearance = 2.0 * h;
  if (dom.center(0) - dom.radius - grid.xmin < clearance ||
      grid.xmax - (dom.center(0) + dom.radius) < clearance ||
      dom.center(1) - dom.radius - grid.ymin < clearance ||
      grid.ymax - (dom.center(1) + dom.radius) < clearance) {
    throw DomainTouchesBounds(
        "disk comes within two mesh widths of the rectangle edge; enlarge "
        "the rectangle or shrink the disk");
  }

  NodeClassification cls;
  cls.labels.assign(grid.num_nodes(), NodeLabel::Exterior);
  std::vector<char> inside(grid.num_nodes(), 0);
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      inside[grid.node(i, j)] = dom.contains(grid.point(i, j)) ? 1 : 0;
    }
  }
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const int n = grid.node(i, j);
      if (!inside[n]) continue;
      // The clearance check guarantees every inside node has four in-range
      // neighbours.
      const bool all_in = inside[grid.node(i - 1, j)] &&
                          inside[grid.node(i + 1, j)] &&
                          inside[grid.node(i, j - 1)] &&
                          inside[grid.node(i, j + 1)];
      cls.labels[n] = all_in ? NodeLabel::Interior : NodeLabel::Irregular;
    }
  }
  return cls;
}

BoundarySampling make_boundary_sampling(const DiskDomain& dom,
                                        std::size_t nb) {
  if (nb < 1) {
    throw std::invalid_argument("at least one boundary sample required");
  }
  if (!(dom.radius > 0.0)) {
    throw std::invalid_argument("disk radius must be positive");
  }
  BoundarySampling bs;
  bs.points.reserve(nb);
  bs.normals.reserve(nb);
  bs.arc_weights.assign(nb, 2.0 * std::numbers::pi * dom.radius /
                                static_cast<double>(nb));
  bs.thetas.reserve(nb);
  for (std::size_t j = 0; j < nb; ++j) {
    const double theta =
        2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(nb);
    const Vec2 nu(std::cos(theta), std::sin(theta));
    bs.thetas.push_back(theta);
    bs.normals.push_back(nu);
    bs.points.push_back(dom.center + dom.radius * nu);
  }
  return bs;
}

void write_csv(std::ostream& os, const CartesianGrid& grid,
               const NodeClassification& cls) {
  os << "i,j,x1,x2,label\n";
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      csv_row(os, i, j, grid.x(i), grid.y(j),
              static_cast<int>(cls.labels[grid.node(i, j)]));
    }
  }
}

void write_csv(std::ostream& os, const RealField2D& field) {
  os << "i,j,x1,x2,value\n";
  for (int j = 0; j < field.grid.ny; ++j) {
    for (int i = 0; i < field.grid.nx; ++i) {
      csv_row(os, i, j, field.grid.x(i), field.grid.y(j), field(i, j));
    }
  }
}

}  // namespace maxte
