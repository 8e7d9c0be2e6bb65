#pragma once

#include <Eigen/SparseCore>
#include <functional>
#include <memory>
#include <ostream>
#include <utility>
#include <vector>

#include "maxte/geometry.hpp"
#include "maxte/types.hpp"

namespace maxte {

using BoundaryFn = std::function<Complex(const Vec2&)>;

// Complex scalar field on a grid. Values live on interior and irregular
// nodes (defined mask), exterior entries stay zero. boundary_value carries
// the Dirichlet data of the solve that produced the field; the normal
// derivative extractor needs it for the boundary endpoint of its stencil.
struct ComplexField2D {
  CartesianGrid grid;
  std::vector<Complex> values;
  std::vector<char> defined;
  BoundaryFn boundary_value;

  Complex operator()(int i, int j) const { return values[grid.node(i, j)]; }
  bool is_defined(int i, int j) const {
    return defined[grid.node(i, j)] != 0;
  }
};

// Discrete Helmholtz operator -Lap - (omega^2 eps0 mu0 + i omega mu0 sigma)
// on the disk, Dirichlet data imposed at the exact circle intersections of
// the grid lines (Shortley-Weller arms). The sparse LU factorization is
// computed on the first solve and reused for every later right-hand side.
class HelmholtzOperator {
 public:
  HelmholtzOperator(const CartesianGrid& grid, const DiskDomain& dom,
                    double omega, double eps0, double mu0,
                    const RealField2D& sigma);

  HelmholtzOperator(const HelmholtzOperator&) = delete;
  HelmholtzOperator& operator=(const HelmholtzOperator&) = delete;
  HelmholtzOperator(HelmholtzOperator&&) = default;

  const CartesianGrid& grid() const { return grid_; }
  const DiskDomain& domain() const { return dom_; }
  const NodeClassification& classification() const { return cls_; }
  double omega() const { return omega_; }
  double mu0() const { return mu0_; }
  double k() const { return k_; }
  int num_unknowns() const { return num_unknowns_; }

  ComplexField2D solve_dirichlet(const BoundaryFn& g) const;

  // One factorization, one dense multi-column triangular sweep per batch.
  std::vector<ComplexField2D> solve_dirichlet_many(
      const std::vector<BoundaryFn>& gs) const;

 private:
  struct BoundaryCoupling {
    int row;
    Vec2 point;
    double coeff;
  };

  void assemble(const RealField2D& sigma);
  void ensure_factorized() const;

  CartesianGrid grid_;
  DiskDomain dom_;
  NodeClassification cls_;
  double omega_, eps0_, mu0_, k_;
  int num_unknowns_ = 0;
  std::vector<int> unknown_index_;  // per node, -1 outside
  std::vector<int> unknown_node_;   // per unknown, flat node index
  Eigen::SparseMatrix<Complex> matrix_;
  std::vector<BoundaryCoupling> couplings_;

  struct Factorization;
  mutable std::shared_ptr<Factorization> fact_;
};

// Spec'd entry point; identical to constructing the operator directly.
HelmholtzOperator assemble_helmholtz(const CartesianGrid& grid,
                                     const DiskDomain& dom, double omega,
                                     double eps0, double mu0,
                                     const RealField2D& sigma);

// Quadratic tensor Lagrange interpolation on the 3x3 node block nearest q
// whose nodes are all defined; the block is shifted inward when the centred
// one sticks out of the disk. Throws InterpolationOutOfDomain when no such
// block exists within a few rings.
Complex interp_biquadratic(const ComplexField2D& field, const Vec2& q);

// Outward normal derivative at each boundary sample by the one-sided
// three-point rule (3 u0 - 4 u1 + u2) / (2h) along the inward normal, u0
// from the field's Dirichlet data, u1 and u2 interpolated at depths h, 2h.
std::vector<Complex> neumann_trace(const ComplexField2D& field,
                                   const DiskDomain& dom,
                                   const BoundarySampling& sampling);

// TE magnetic components H1 = (i omega mu0)^-1 d2 E3,
// H2 = -(i omega mu0)^-1 d1 E3 by centred differences, falling back to
// one-sided stencils next to the boundary.
std::pair<ComplexField2D, ComplexField2D> magnetic_fields(
    const ComplexField2D& e3, double omega, double mu0);

// Columns: i,j,x1,x2,re,im.
void write_csv(std::ostream& os, const ComplexField2D& field);

}  // namespace maxte
