#include <doctest.h>

#include <cmath>
#include <complex>
#include <iostream>
#include <vector>

#include "maxte/errors.hpp"
#include "maxte/forward.hpp"
#include "maxte/phase_space.hpp"

using namespace maxte;

namespace {

RealField2D zero_sigma(const CartesianGrid& g) {
  RealField2D f;
  f.grid = g;
  f.values.assign(g.num_nodes(), 0.0);
  return f;
}

RealField2D const_sigma(const CartesianGrid& g, double c) {
  RealField2D f;
  f.grid = g;
  f.values.assign(g.num_nodes(), c);
  return f;
}

// Relative masked L2 distance between a discrete field and an analytic one.
double rel_error_vs(const ComplexField2D& field,
                    const std::function<Complex(const Vec2&)>& exact) {
  double num = 0.0, den = 0.0;
  for (int j = 0; j < field.grid.ny; ++j) {
    for (int i = 0; i < field.grid.nx; ++i) {
      if (!field.is_defined(i, j)) continue;
      const Complex e = exact(field.grid.point(i, j));
      num += std::norm(field(i, j) - e);
      den += std::norm(e);
    }
  }
  return std::sqrt(num / den);
}

double solve_ce_error(int n, double k) {
  const CartesianGrid g = make_grid(n, 0.75);
  const DiskDomain dom{Vec2::Zero(), 0.7};
  const HelmholtzOperator op(g, dom, k, 1.0, 1.0, zero_sigma(g));
  const CEPairTE pair = make_ce_pair_te(make_phase_point(Vec2(-1.0, 0.0)), k);
  auto exact = [&pair](const Vec2& x) {
    return std::exp(I * cdot(pair.zeta, to_complex(x)));
  };
  const ComplexField2D u = op.solve_dirichlet(exact);
  return rel_error_vs(u, exact);
}

}  // namespace

TEST_CASE("background solve reproduces the exact wave at second order") {
  const double e80 = solve_ce_error(80, 5.0);
  const double e159 = solve_ce_error(159, 5.0);
  INFO("e80=" << e80 << " e159=" << e159 << " ratio=" << e80 / e159);
  CHECK(e80 < 3e-3);
  CHECK(e159 < 8e-4);
  CHECK(e80 / e159 > 3.0);
  CHECK(e80 / e159 < 5.4);
}

TEST_CASE("constant conductivity solve matches the exact damped wave") {
  const double omega = 3.0, c = 0.8;
  const CartesianGrid g = make_grid(100, 0.75);
  const DiskDomain dom{Vec2::Zero(), 0.7};
  const HelmholtzOperator op(g, dom, omega, 1.0, 1.0, const_sigma(g, c));
  // -Lap u = (k^2 + i omega c) u has the exact solution exp(i beta x1) with
  // beta^2 = k^2 + i omega c.
  const Complex beta = std::sqrt(Complex(omega * omega, omega * c));
  auto exact = [beta](const Vec2& x) {
    return std::exp(I * beta * Complex(x(0), 0.0));
  };
  const ComplexField2D u = op.solve_dirichlet(exact);
  const double err = rel_error_vs(u, exact);
  INFO("err=" << err);
  CHECK(err < 5e-4);
}

TEST_CASE("interior five point residual of the exact wave decays at fourth "
          "order in h^-2 pairs") {
  // Truncation of the regular stencil applied to a smooth exact solution;
  // the ratio between h and h/2 is ~4 for a second order scheme.
  auto residual = [](int n) {
    const CartesianGrid g = make_grid(n, 0.75);
    const double k = 5.0;
    const CEPairTE pair =
        make_ce_pair_te(make_phase_point(Vec2(-1.0, 0.0)), k);
    auto exact = [&pair](const Vec2& x) {
      return std::exp(I * cdot(pair.zeta, to_complex(x)));
    };
    const double h = g.hx();
    double worst = 0.0;
    for (int j = n / 2 - 5; j <= n / 2 + 5; ++j) {
      for (int i = n / 2 - 5; i <= n / 2 + 5; ++i) {
        const Complex lap =
            (exact(g.point(i + 1, j)) + exact(g.point(i - 1, j)) +
             exact(g.point(i, j + 1)) + exact(g.point(i, j - 1)) -
             4.0 * exact(g.point(i, j))) /
            (h * h);
        worst = std::max(worst,
                         std::abs(-lap - k * k * exact(g.point(i, j))));
      }
    }
    return worst;
  };
  const double r1 = residual(100);
  const double r2 = residual(199);  // halves h exactly
  INFO("r1=" << r1 << " r2=" << r2 << " ratio=" << r1 / r2);
  CHECK(r1 / r2 > 3.4);
  CHECK(r1 / r2 < 4.6);
}

TEST_CASE("batched solves agree with one-at-a-time solves") {
  const CartesianGrid g = make_grid(64, 0.75);
  const DiskDomain dom{Vec2::Zero(), 0.7};
  const HelmholtzOperator op(g, dom, 4.0, 1.0, 1.0, zero_sigma(g));
  const CEPairTE p1 = make_ce_pair_te(make_phase_point(Vec2(1.0, 0.5)), 4.0);
  const CEPairTE p2 = make_ce_pair_te(make_phase_point(Vec2(-2.0, 1.0)), 4.0);
  auto g1 = [&p1](const Vec2& x) {
    return std::exp(I * cdot(p1.zeta, to_complex(x)));
  };
  auto g2 = [&p2](const Vec2& x) {
    return std::exp(I * cdot(p2.zeta, to_complex(x)));
  };
  const auto batch = op.solve_dirichlet_many({g1, g2});
  const ComplexField2D s1 = op.solve_dirichlet(g1);
  const ComplexField2D s2 = op.solve_dirichlet(g2);
  REQUIRE(batch.size() == 2);
  double worst = 0.0;
  for (int n = 0; n < g.num_nodes(); ++n) {
    worst = std::max(worst, std::abs(batch[0].values[n] - s1.values[n]));
    worst = std::max(worst, std::abs(batch[1].values[n] - s2.values[n]));
  }
  CHECK(worst < 1e-13);
  CHECK(batch[0].defined == s1.defined);
}

TEST_CASE("solution fields carry the classification and boundary data") {
  const CartesianGrid g = make_grid(64, 0.75);
  const DiskDomain dom{Vec2::Zero(), 0.7};
  const HelmholtzOperator op(g, dom, 4.0, 1.0, 1.0, zero_sigma(g));
  auto gfun = [](const Vec2&) { return Complex(1.0, 0.0); };
  const ComplexField2D u = op.solve_dirichlet(gfun);
  REQUIRE(u.boundary_value);
  CHECK(u.boundary_value(Vec2(0.7, 0.0)) == Complex(1.0, 0.0));
  for (int n = 0; n < g.num_nodes(); ++n) {
    const bool inside = op.classification().labels[n] != NodeLabel::Exterior;
    CHECK(u.defined[n] == (inside ? 1 : 0));
    if (!inside) CHECK(u.values[n] == Complex(0.0, 0.0));
  }
}

TEST_CASE("mismatched sigma grid is rejected") {
  const CartesianGrid g = make_grid(64, 0.75);
  const DiskDomain dom{Vec2::Zero(), 0.7};
  CHECK_THROWS_AS(
      HelmholtzOperator(g, dom, 4.0, 1.0, 1.0, zero_sigma(make_grid(80, 0.75))),
      DimensionMismatch);
}

TEST_CASE("degenerate boundary cut aborts assembly with a remedy") {
  const CartesianGrid g = make_grid(21, 1.0);
  // Node (0.6, 0) sits 1e-8 inside the circle; its eastern arm is cut a
  // fraction 1e-7 of h from the node.
  const DiskDomain dom{Vec2::Zero(), 0.6 + 1e-8};
  try {
    HelmholtzOperator(g, dom, 2.0, 1.0, 1.0, zero_sigma(g));
    FAIL("expected AssemblyFailure");
  } catch (const AssemblyFailure& e) {
    CHECK(std::string(e.what()).find("shift the grid") != std::string::npos);
  }
}

TEST_CASE("biquadratic interpolation is exact on quadratics and rejects "
          "points without a stencil") {
  const CartesianGrid g = make_grid(41, 1.0);
  const DiskDomain dom{Vec2::Zero(), 0.7};
  const NodeClassification cls = classify(g, dom);
  ComplexField2D f;
  f.grid = g;
  f.values.assign(g.num_nodes(), Complex(0.0, 0.0));
  f.defined.assign(g.num_nodes(), 0);
  auto quad = [](const Vec2& p) {
    return Complex(1.0 + 2.0 * p(0) - p(1) + 0.5 * p(0) * p(0) +
                       p(0) * p(1) - 1.5 * p(1) * p(1),
                   3.0 * p(0) * p(1));
  };
  for (int n = 0; n < g.num_nodes(); ++n) {
    if (cls.labels[n] == NodeLabel::Exterior) continue;
    f.defined[n] = 1;
    f.values[n] = quad(g.point(n % g.nx, n / g.nx));
  }
  const Vec2 q(0.123, -0.287);
  CHECK(std::abs(interp_biquadratic(f, q) - quad(q)) < 1e-12);
  // Just inside the rim: the shifted stencil still reproduces quadratics.
  const Vec2 rim(0.69, 0.0);
  CHECK(std::abs(interp_biquadratic(f, rim) - quad(rim)) < 1e-10);
  CHECK_THROWS_AS(interp_biquadratic(f, Vec2(0.9, 0.9)),
                  InterpolationOutOfDomain);
  CHECK_THROWS_AS(interp_biquadratic(f, Vec2(5.0, 0.0)),
                  InterpolationOutOfDomain);
}

namespace {

double trace_error(int n, double k) {
  const CartesianGrid g = make_grid(n, 0.75);
  const DiskDomain dom{Vec2::Zero(), 0.7};
  const NodeClassification cls = classify(g, dom);
  const CEPairTE pair = make_ce_pair_te(make_phase_point(Vec2(2.0, 1.0)), k);
  auto exact = [&pair](const Vec2& x) {
    return std::exp(I * cdot(pair.zeta, to_complex(x)));
  };
  ComplexField2D f;
  f.grid = g;
  f.values.assign(g.num_nodes(), Complex(0.0, 0.0));
  f.defined.assign(g.num_nodes(), 0);
  for (int n2 = 0; n2 < g.num_nodes(); ++n2) {
    if (cls.labels[n2] == NodeLabel::Exterior) continue;
    f.defined[n2] = 1;
    f.values[n2] = exact(g.point(n2 % g.nx, n2 / g.nx));
  }
  f.boundary_value = exact;
  const BoundarySampling bs = make_boundary_sampling(dom, 90);
  const auto trace = neumann_trace(f, dom, bs);
  double worst = 0.0;
  for (std::size_t j = 0; j < bs.size(); ++j) {
    const Complex d_exact =
        cdot(pair.zeta, to_complex(bs.points[j])) * Complex(0, 0);
    const Complex grad_dot_nu =
        I * exact(bs.points[j]) * cdot(pair.zeta, to_complex(bs.normals[j]));
    worst = std::max(worst, std::abs(trace[j] - grad_dot_nu) + std::abs(d_exact));
  }
  return worst;
}

}  // namespace

TEST_CASE("normal derivative extraction converges at second order") {
  const double t80 = trace_error(80, 5.0);
  const double t160 = trace_error(160, 5.0);
  INFO("t80=" << t80 << " t160=" << t160 << " ratio=" << t80 / t160);
  CHECK(t80 < 0.05);
  CHECK(t160 < 0.02);
  CHECK(t80 / t160 > 2.4);
}

TEST_CASE("normal derivative requires boundary data") {
  const CartesianGrid g = make_grid(41, 1.0);
  const DiskDomain dom{Vec2::Zero(), 0.7};
  ComplexField2D f;
  f.grid = g;
  f.values.assign(g.num_nodes(), Complex(1.0, 0.0));
  f.defined.assign(g.num_nodes(), 1);
  CHECK_THROWS_AS(neumann_trace(f, dom, make_boundary_sampling(dom, 8)),
                  std::invalid_argument);
}

TEST_CASE("magnetic components match the plane wave relations") {
  const double omega = 4.0, mu0 = 1.0;
  const CartesianGrid g = make_grid(120, 0.75);
  const DiskDomain dom{Vec2::Zero(), 0.7};
  const NodeClassification cls = classify(g, dom);
  const CEPairTE pair =
      make_ce_pair_te(make_phase_point(Vec2(1.0, -2.0)), omega);
  auto exact = [&pair](const Vec2& x) {
    return std::exp(I * cdot(pair.zeta, to_complex(x)));
  };
  ComplexField2D f;
  f.grid = g;
  f.values.assign(g.num_nodes(), Complex(0.0, 0.0));
  f.defined.assign(g.num_nodes(), 0);
  for (int n = 0; n < g.num_nodes(); ++n) {
    if (cls.labels[n] == NodeLabel::Exterior) continue;
    f.defined[n] = 1;
    f.values[n] = exact(g.point(n % g.nx, n / g.nx));
  }
  const auto [h1, h2] = magnetic_fields(f, omega, mu0);
  // H1 = zeta_2/(omega mu0) u and H2 = -zeta_1/(omega mu0) u for the wave.
  double worst = 0.0;
  for (int j = 2; j < g.ny - 2; ++j) {
    for (int i = 2; i < g.nx - 2; ++i) {
      if (cls.labels[g.node(i, j)] != NodeLabel::Interior) continue;
      const Complex u = exact(g.point(i, j));
      const Complex h1_exact = pair.zeta(1) / (omega * mu0) * u;
      const Complex h2_exact = -pair.zeta(0) / (omega * mu0) * u;
      if (h1.defined[g.node(i, j)]) {
        worst = std::max(worst, std::abs(h1(i, j) - h1_exact));
      }
      if (h2.defined[g.node(i, j)]) {
        worst = std::max(worst, std::abs(h2(i, j) - h2_exact));
      }
    }
  }
  INFO("worst=" << worst);
  CHECK(worst < 5e-4);
}
