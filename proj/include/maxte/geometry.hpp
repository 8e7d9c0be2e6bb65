#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "maxte/types.hpp"

namespace maxte {

// Uniform tensor grid over a rectangle, node (i, j) at
// (xmin + i hx, ymin + j hy), flat index i + nx * j.
struct CartesianGrid {
  int nx = 0;
  int ny = 0;
  double xmin = 0.0, xmax = 0.0;
  double ymin = 0.0, ymax = 0.0;

  double hx() const { return (xmax - xmin) / (nx - 1); }
  double hy() const { return (ymax - ymin) / (ny - 1); }
  double x(int i) const { return xmin + i * hx(); }
  double y(int j) const { return ymin + j * hy(); }
  Vec2 point(int i, int j) const { return Vec2(x(i), y(j)); }
  int num_nodes() const { return nx * ny; }
  int node(int i, int j) const { return i + nx * j; }
  bool in_range(int i, int j) const {
    return i >= 0 && i < nx && j >= 0 && j < ny;
  }
};

// Square grid with n nodes per side on [-half_width, half_width]^2.
CartesianGrid make_grid(int n, double half_width);

struct DiskDomain {
  Vec2 center = Vec2::Zero();
  double radius = 0.0;

  bool contains(const Vec2& p) const {
    return (p - center).squaredNorm() < radius * radius;
  }
};

enum class NodeLabel : std::uint8_t { Exterior = 0, Interior = 1, Irregular = 2 };

// Per-node labels: Interior nodes have all four axis neighbours inside the
// disk, Irregular nodes are inside with at least one neighbour outside,
// everything else is Exterior.
struct NodeClassification {
  std::vector<NodeLabel> labels;

  NodeLabel label(int node) const { return labels[node]; }
  bool defined(int node) const { return labels[node] != NodeLabel::Exterior; }
  int count(NodeLabel which) const;
};

// Throws DomainTouchesBounds unless the disk keeps a clearance of at least
// two mesh widths from every rectangle edge; the embedded-boundary stencils
// and the normal-derivative interpolation both reach that far.
NodeClassification classify(const CartesianGrid& grid, const DiskDomain& dom);

// nb equispaced points on the circle with outward unit normals, uniform arc
// weights 2 pi r / nb, angles theta_j = 2 pi j / nb.
struct BoundarySampling {
  std::vector<Vec2> points;
  std::vector<Vec2> normals;
  std::vector<double> arc_weights;
  std::vector<double> thetas;

  std::size_t size() const { return points.size(); }
};

BoundarySampling make_boundary_sampling(const DiskDomain& dom,
                                        std::size_t nb);

// Real scalar field on a grid (conductivity, reconstructions).
struct RealField2D {
  CartesianGrid grid;
  std::vector<double> values;

  double operator()(int i, int j) const { return values[grid.node(i, j)]; }
};

// Columns: i,j,x1,x2,label (0 exterior, 1 interior, 2 irregular).
void write_csv(std::ostream& os, const CartesianGrid& grid,
               const NodeClassification& cls);

// Columns: i,j,x1,x2,value.
void write_csv(std::ostream& os, const RealField2D& field);

}  // namespace maxte
