#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "maxte/errors.hpp"
#include "maxte/geometry.hpp"

using namespace maxte;

TEST_CASE("grid layout") {
  const CartesianGrid g = make_grid(5, 1.0);
  CHECK(g.hx() == doctest::Approx(0.5));
  CHECK(g.x(0) == doctest::Approx(-1.0));
  CHECK(g.x(4) == doctest::Approx(1.0));
  CHECK(g.y(2) == doctest::Approx(0.0));
  CHECK(g.num_nodes() == 25);
  CHECK(g.node(0, 0) == 0);
  CHECK(g.node(4, 4) == 24);
  CHECK(g.in_range(0, 0));
  CHECK_FALSE(g.in_range(5, 0));
  CHECK_FALSE(g.in_range(0, -1));
  CHECK_THROWS_AS(make_grid(1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(5, 0.0), std::invalid_argument);
}

TEST_CASE("classification matches a direct reimplementation") {
  const CartesianGrid g = make_grid(21, 1.0);
  const DiskDomain dom{Vec2::Zero(), 0.7};
  const NodeClassification cls = classify(g, dom);
  REQUIRE(cls.labels.size() == 441);

  int interior = 0, irregular = 0, exterior = 0;
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const bool in = (g.point(i, j) - dom.center).norm() < dom.radius;
      const NodeLabel lab = cls.labels[g.node(i, j)];
      if (!in) {
        CHECK(lab == NodeLabel::Exterior);
        ++exterior;
        continue;
      }
      bool all_in = true;
      const int di[4] = {1, -1, 0, 0};
      const int dj[4] = {0, 0, 1, -1};
      for (int d = 0; d < 4; ++d) {
        const Vec2 q = g.point(i + di[d], j + dj[d]);
        if ((q - dom.center).norm() >= dom.radius) all_in = false;
      }
      CHECK(lab == (all_in ? NodeLabel::Interior : NodeLabel::Irregular));
      (all_in ? interior : irregular)++;
    }
  }
  CHECK(interior + irregular + exterior == 441);
  CHECK(cls.count(NodeLabel::Interior) == interior);
  CHECK(cls.count(NodeLabel::Irregular) == irregular);
  CHECK(irregular > 0);
}

TEST_CASE("classification enforces the two mesh width clearance") {
  CHECK_THROWS_AS(classify(make_grid(200, 0.7), DiskDomain{Vec2::Zero(), 0.7}),
                  DomainTouchesBounds);
  CHECK_NOTHROW(classify(make_grid(200, 0.7),
                         DiskDomain{Vec2::Zero(), 0.69 * 0.7}));
  // Production setting: disk of radius 0.7 in the enlarged box.
  CHECK_NOTHROW(classify(make_grid(200, 0.75), DiskDomain{Vec2::Zero(), 0.7}));
  CHECK_NOTHROW(classify(make_grid(90, 0.75), DiskDomain{Vec2::Zero(), 0.7}));
}

TEST_CASE("production classification node counts land in the expected bands") {
  const CartesianGrid g = make_grid(200, 0.75);
  const DiskDomain dom{Vec2::Zero(), 0.7};
  const NodeClassification cls = classify(g, dom);
  const int unknowns =
      cls.count(NodeLabel::Interior) + cls.count(NodeLabel::Irregular);
  // Disk area fraction of the box is pi 0.49 / 2.25 ~ 0.684 of 40000 nodes.
  CHECK(unknowns > 26800);
  CHECK(unknowns < 27900);
  CHECK(cls.count(NodeLabel::Irregular) > 300);
  CHECK(cls.count(NodeLabel::Irregular) < 1000);
}

TEST_CASE("node exactly on the circle is exterior") {
  const CartesianGrid g = make_grid(9, 1.0);
  const DiskDomain dom{Vec2::Zero(), 0.5};
  const NodeClassification cls = classify(g, dom);
  // Node (6, 4) sits at (0.5, 0), exactly on the circle.
  CHECK(g.x(6) == doctest::Approx(0.5));
  CHECK(cls.labels[g.node(6, 4)] == NodeLabel::Exterior);
  CHECK(cls.labels[g.node(4, 4)] == NodeLabel::Interior);
}

TEST_CASE("boundary sampling geometry") {
  const DiskDomain dom{Vec2::Zero(), 0.7};
  const BoundarySampling bs = make_boundary_sampling(dom, 4);
  REQUIRE(bs.size() == 4);
  CHECK(bs.points[0](0) == doctest::Approx(0.7));
  CHECK(bs.points[1](1) == doctest::Approx(0.7));
  CHECK(bs.points[2](0) == doctest::Approx(-0.7));
  CHECK(bs.normals[3](1) == doctest::Approx(-1.0));
  CHECK(bs.thetas[1] == doctest::Approx(std::numbers::pi / 2.0));
  double total = 0.0;
  for (double w : bs.arc_weights) {
    CHECK(w == doctest::Approx(0.35 * std::numbers::pi));
    total += w;
  }
  CHECK(total == doctest::Approx(2.0 * std::numbers::pi * 0.7));
  for (std::size_t j = 0; j < bs.size(); ++j) {
    CHECK((bs.points[j] - dom.center).norm() == doctest::Approx(0.7));
    CHECK(bs.normals[j].norm() == doctest::Approx(1.0));
  }
}

TEST_CASE("classification csv starts with the schema header") {
  const CartesianGrid g = make_grid(11, 1.0);
  const NodeClassification cls = classify(g, DiskDomain{Vec2::Zero(), 0.4});
  std::ostringstream os;
  write_csv(os, g, cls);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "i,j,x1,x2,label");
  std::getline(is, line);
  CHECK(line == "0,0,-1,-1,0");
}
