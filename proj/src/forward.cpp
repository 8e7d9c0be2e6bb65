#include "maxte/forward.hpp"

#include <Eigen/SparseLU>
#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "maxte/csv.hpp"
#include "maxte/errors.hpp"

namespace maxte {

struct HelmholtzOperator::Factorization {
  Eigen::SparseLU<Eigen::SparseMatrix<Complex>, Eigen::COLAMDOrdering<int>> lu;
};

HelmholtzOperator::HelmholtzOperator(const CartesianGrid& grid,
                                     const DiskDomain& dom, double omega,
                                     double eps0, double mu0,
                                     const RealField2D& sigma)
    : grid_(grid),
      dom_(dom),
      cls_(classify(grid, dom)),
      omega_(omega),
      eps0_(eps0),
      mu0_(mu0),
      k_(omega * std::sqrt(eps0 * mu0)) {
  if (!(omega > 0.0) || !(eps0 > 0.0) || !(mu0 > 0.0)) {
    throw std::invalid_argument("omega, eps0, mu0 must be positive");
  }
  if (sigma.grid.nx != grid.nx || sigma.grid.ny != grid.ny) {
    throw DimensionMismatch("sigma field lives on a different grid");
  }
  assemble(sigma);
}

namespace {

// Fraction t in (0, 1] of the arm from p towards p + e at which the segment
// crosses the circle; p is strictly inside, p + e is not.
double crossing_fraction(const Vec2& p, const Vec2& e, const DiskDomain& dom) {
  const Vec2 u = p - dom.center;
  const double a2 = e.squaredNorm();
  const double b = u.dot(e);
  const double c = u.squaredNorm() - dom.radius * dom.radius;
  const double disc = b * b - a2 * c;  // c < 0 inside, so disc > 0
  return (-b + std::sqrt(disc)) / a2;
}

}  // namespace

void HelmholtzOperator::assemble(const RealField2D& sigma) {
  unknown_index_.assign(grid_.num_nodes(), -1);
  for (int j = 0; j < grid_.ny; ++j) {
    for (int i = 0; i < grid_.nx; ++i) {
      const int n = grid_.node(i, j);
      if (cls_.labels[n] != NodeLabel::Exterior) {
        unknown_index_[n] = num_unknowns_++;
        unknown_node_.push_back(n);
      }
    }
  }
  if (num_unknowns_ == 0) {
    throw AssemblyFailure("no grid node falls inside the disk");
  }

  const double hx = grid_.hx();
  const double hy = grid_.hy();
  const Complex q_base(k_ * k_, 0.0);

  std::vector<Eigen::Triplet<Complex>> trip;
  trip.reserve(static_cast<std::size_t>(num_unknowns_) * 5);

  struct Arm {
    int di, dj;
    double h;
  };
  const std::array<Arm, 4> arms{{{-1, 0, hx}, {1, 0, hx}, {0, -1, hy}, {0, 1, hy}}};

  for (int row = 0; row < num_unknowns_; ++row) {
    const int n = unknown_node_[row];
    const int i = n % grid_.nx;
    const int j = n / grid_.nx;
    const Vec2 p = grid_.point(i, j);

    // Arm lengths to the two coupling points per axis; the Shortley-Weller
    // second difference with arms a (negative side) and b (positive side) is
    // u'' ~ 2 u_a / (a (a+b)) + 2 u_b / (b (a+b)) - 2 u_p / (a b).
    double arm_len[4];
    int arm_col[4];       // unknown column, -1 when the arm hits the circle
    Vec2 arm_point[4];    // circle intersection for cut arms
    for (int d = 0; d < 4; ++d) {
      const int ni = i + arms[d].di;
      const int nj = j + arms[d].dj;
      const int nn = grid_.node(ni, nj);
      if (cls_.labels[nn] != NodeLabel::Exterior) {
        arm_len[d] = arms[d].h;
        arm_col[d] = unknown_index_[nn];
      } else {
        const Vec2 e(arms[d].di * hx, arms[d].dj * hy);
        const double t = crossing_fraction(p, e, dom_);
        if (t < 1e-6) {
          throw AssemblyFailure(
              "degenerate boundary cut (node " + std::to_string(i) + "," +
              std::to_string(j) +
              " nearly on the circle); shift the grid origin by a fraction "
              "of h and reassemble");
        }
        arm_len[d] = t * arms[d].h;
        arm_col[d] = -1;
        arm_point[d] = p + t * e;
      }
    }

    Complex diag(0.0, 0.0);
    for (int axis = 0; axis < 2; ++axis) {
      const double a = arm_len[2 * axis];
      const double b = arm_len[2 * axis + 1];
      diag += Complex(2.0 / (a * b), 0.0);
      const double ca = 2.0 / (a * (a + b));
      const double cb = 2.0 / (b * (a + b));
      if (arm_col[2 * axis] >= 0) {
        trip.emplace_back(row, arm_col[2 * axis], Complex(-ca, 0.0));
      } else {
        couplings_.push_back({row, arm_point[2 * axis], ca});
      }
      if (arm_col[2 * axis + 1] >= 0) {
        trip.emplace_back(row, arm_col[2 * axis + 1], Complex(-cb, 0.0));
      } else {
        couplings_.push_back({row, arm_point[2 * axis + 1], cb});
      }
    }
    diag -= q_base + I * (omega_ * mu0_ * sigma.values[n]);
    trip.emplace_back(row, row, diag);
  }

  matrix_.resize(num_unknowns_, num_unknowns_);
  matrix_.setFromTriplets(trip.begin(), trip.end());
  matrix_.makeCompressed();
}

void HelmholtzOperator::ensure_factorized() const {
  if (fact_) return;
  auto f = std::make_shared<Factorization>();
  f->lu.isSymmetric(false);
  f->lu.analyzePattern(matrix_);
  f->lu.factorize(matrix_);
  if (f->lu.info() != Eigen::Success) {
    throw NearResonance(
        "sparse factorization failed; the wavenumber sits too close to an "
        "interior Dirichlet resonance of the disk for this grid");
  }
  fact_ = std::move(f);
}

std::vector<ComplexField2D> HelmholtzOperator::solve_dirichlet_many(
    const std::vector<BoundaryFn>& gs) const {
  ensure_factorized();
  const int cols = static_cast<int>(gs.size());
  if (cols == 0) return {};

  Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(num_unknowns_, cols);
  for (const auto& c : couplings_) {
    for (int col = 0; col < cols; ++col) {
      rhs(c.row, col) += c.coeff * gs[col](c.point);
    }
  }

  Eigen::MatrixXcd sol = fact_->lu.solve(rhs);
  if (fact_->lu.info() != Eigen::Success) {
    throw NearResonance("triangular solve failed after factorization");
  }
  // Residual guard: a factorization that went through but lost all accuracy
  // (near-singular pivot) shows up here.
  const double rhs_norm = rhs.norm();
  if (rhs_norm > 0.0) {
    const double rel = (matrix_ * sol - rhs).norm() / rhs_norm;
    if (!(rel < 1e-6)) {
      throw NearResonance(
          "solve residual " + std::to_string(rel) +
          " indicates near-singular operator (interior resonance)");
    }
  }

  std::vector<ComplexField2D> fields(cols);
  for (int col = 0; col < cols; ++col) {
    ComplexField2D& f = fields[col];
    f.grid = grid_;
    f.values.assign(grid_.num_nodes(), Complex(0.0, 0.0));
    f.defined.assign(grid_.num_nodes(), 0);
    for (int row = 0; row < num_unknowns_; ++row) {
      f.values[unknown_node_[row]] = sol(row, col);
      f.defined[unknown_node_[row]] = 1;
    }
    f.boundary_value = gs[col];
  }
  return fields;
}

ComplexField2D HelmholtzOperator::solve_dirichlet(const BoundaryFn& g) const {
  return solve_dirichlet_many({g})[0];
}

HelmholtzOperator assemble_helmholtz(const CartesianGrid& grid,
                                     const DiskDomain& dom, double omega,
                                     double eps0, double mu0,
                                     const RealField2D& sigma) {
  return HelmholtzOperator(grid, dom, omega, eps0, mu0, sigma);
}

Complex interp_biquadratic(const ComplexField2D& field, const Vec2& q) {
  const CartesianGrid& g = field.grid;
  const double gx = (q(0) - g.xmin) / g.hx();
  const double gy = (q(1) - g.ymin) / g.hy();
  const int ic = static_cast<int>(std::lround(gx));
  const int jc = static_cast<int>(std::lround(gy));

  auto block_ok = [&](int ci, int cj) {
    if (ci < 1 || ci > g.nx - 2 || cj < 1 || cj > g.ny - 2) return false;
    for (int dj = -1; dj <= 1; ++dj) {
      for (int di = -1; di <= 1; ++di) {
        if (!field.defined[g.node(ci + di, cj + dj)]) return false;
      }
    }
    return true;
  };

  // Nearest fully defined 3x3 block, searched ring by ring so ties resolve
  // deterministically.
  int bi = -1, bj = -1;
  for (int ring = 0; ring <= 3 && bi < 0; ++ring) {
    for (int dj = -ring; dj <= ring && bi < 0; ++dj) {
      for (int di = -ring; di <= ring && bi < 0; ++di) {
        if (std::max(std::abs(di), std::abs(dj)) != ring) continue;
        if (block_ok(ic + di, jc + dj)) {
          bi = ic + di;
          bj = jc + dj;
        }
      }
    }
  }
  if (bi < 0) {
    throw InterpolationOutOfDomain(
        "no fully defined 3x3 stencil near (" + std::to_string(q(0)) + ", " +
        std::to_string(q(1)) + ")");
  }

  const double sx = gx - bi;  // offset from block centre in mesh units
  const double sy = gy - bj;
  const double wx[3] = {0.5 * sx * (sx - 1.0), 1.0 - sx * sx,
                        0.5 * sx * (sx + 1.0)};
  const double wy[3] = {0.5 * sy * (sy - 1.0), 1.0 - sy * sy,
                        0.5 * sy * (sy + 1.0)};
  Complex out(0.0, 0.0);
  for (int dj = -1; dj <= 1; ++dj) {
    for (int di = -1; di <= 1; ++di) {
      out += wx[di + 1] * wy[dj + 1] * field.values[g.node(bi + di, bj + dj)];
    }
  }
  return out;
}

std::vector<Complex> neumann_trace(const ComplexField2D& field,
                                   const DiskDomain& dom,
                                   const BoundarySampling& sampling) {
  if (!field.boundary_value) {
    throw std::invalid_argument(
        "field carries no Dirichlet data; the normal derivative stencil "
        "needs the boundary value");
  }
  const double h = std::min(field.grid.hx(), field.grid.hy());
  std::vector<Complex> trace;
  trace.reserve(sampling.size());
  for (std::size_t j = 0; j < sampling.size(); ++j) {
    const Vec2& p = sampling.points[j];
    const Vec2& nu = sampling.normals[j];
    const Complex u0 = field.boundary_value(p);
    const Complex u1 = interp_biquadratic(field, p - h * nu);
    const Complex u2 = interp_biquadratic(field, p - 2.0 * h * nu);
    trace.push_back((3.0 * u0 - 4.0 * u1 + u2) / (2.0 * h));
  }
  return trace;
}

namespace {

// One-dimensional derivative along an axis with decreasing-order fallbacks;
// returns false when fewer than two usable values exist.
bool axis_derivative(const ComplexField2D& f, int i, int j, int di, int dj,
                     double h, Complex& out) {
  auto def = [&](int u, int v) {
    return f.grid.in_range(u, v) && f.defined[f.grid.node(u, v)];
  };
  auto val = [&](int u, int v) { return f.values[f.grid.node(u, v)]; };
  const bool plus = def(i + di, j + dj);
  const bool minus = def(i - di, j - dj);
  if (plus && minus) {
    out = (val(i + di, j + dj) - val(i - di, j - dj)) / (2.0 * h);
    return true;
  }
  if (plus && def(i + 2 * di, j + 2 * dj)) {
    out = (-3.0 * val(i, j) + 4.0 * val(i + di, j + dj) -
           val(i + 2 * di, j + 2 * dj)) /
          (2.0 * h);
    return true;
  }
  if (minus && def(i - 2 * di, j - 2 * dj)) {
    out = (3.0 * val(i, j) - 4.0 * val(i - di, j - dj) +
           val(i - 2 * di, j - 2 * dj)) /
          (2.0 * h);
    return true;
  }
  if (plus) {
    out = (val(i + di, j + dj) - val(i, j)) / h;
    return true;
  }
  if (minus) {
    out = (val(i, j) - val(i - di, j - dj)) / h;
    return true;
  }
  return false;
}

}  // namespace

std::pair<ComplexField2D, ComplexField2D> magnetic_fields(
    const ComplexField2D& e3, double omega, double mu0) {
  const Complex factor = 1.0 / (I * omega * mu0);
  ComplexField2D h1, h2;
  h1.grid = h2.grid = e3.grid;
  h1.values.assign(e3.grid.num_nodes(), Complex(0.0, 0.0));
  h2.values = h1.values;
  h1.defined.assign(e3.grid.num_nodes(), 0);
  h2.defined = h1.defined;
  for (int j = 0; j < e3.grid.ny; ++j) {
    for (int i = 0; i < e3.grid.nx; ++i) {
      const int n = e3.grid.node(i, j);
      if (!e3.defined[n]) continue;
      Complex d1, d2;
      if (axis_derivative(e3, i, j, 0, 1, e3.grid.hy(), d2)) {
        h1.values[n] = factor * d2;
        h1.defined[n] = 1;
      }
      if (axis_derivative(e3, i, j, 1, 0, e3.grid.hx(), d1)) {
        h2.values[n] = -factor * d1;
        h2.defined[n] = 1;
      }
    }
  }
  return {std::move(h1), std::move(h2)};
}

void write_csv(std::ostream& os, const ComplexField2D& field) {
  os << "i,j,x1,x2,re,im\n";
  for (int j = 0; j < field.grid.ny; ++j) {
    for (int i = 0; i < field.grid.nx; ++i) {
      const Complex v = field(i, j);
      csv_row(os, i, j, field.grid.x(i), field.grid.y(j), v.real(), v.imag());
    }
  }
}

}  // namespace maxte
