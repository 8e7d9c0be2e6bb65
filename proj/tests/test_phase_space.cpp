#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "maxte/errors.hpp"
#include "maxte/phase_space.hpp"

using namespace maxte;

namespace {
constexpr double kTol = 1e-12;
}

TEST_CASE("phase point decomposition") {
  const PhasePoint2D p = make_phase_point(Vec2(-1.0, 0.0));
  CHECK(p.kappa == doctest::Approx(1.0).epsilon(kTol));
  CHECK(p.e1(0) == doctest::Approx(-1.0));
  CHECK(p.e1(1) == doctest::Approx(0.0));
  CHECK(p.e2(0) == doctest::Approx(0.0));
  CHECK(p.e2(1) == doctest::Approx(-1.0));

  const PhasePoint2D q = make_phase_point(Vec2(3.0, 4.0));
  CHECK(q.kappa == doctest::Approx(5.0).epsilon(kTol));
  CHECK(q.e1(0) == doctest::Approx(0.6));
  CHECK(q.e1(1) == doctest::Approx(0.8));
  CHECK(q.e2(0) == doctest::Approx(-0.8));
  CHECK(q.e2(1) == doctest::Approx(0.6));

  CHECK_THROWS_AS(make_phase_point(Vec2(0.0, 0.0)), ZeroPhaseVector);
}

TEST_CASE("te pair in the propagating regime") {
  const CEPairTE pair = make_ce_pair_te(make_phase_point(Vec2(-1.0, 0.0)), 5.0);
  const double s = std::sqrt(24.75);
  CHECK(pair.zeta(0).real() == doctest::Approx(-0.5).epsilon(kTol));
  CHECK(pair.zeta(1).real() == doctest::Approx(-s).epsilon(kTol));
  CHECK(pair.zeta(0).imag() == 0.0);
  CHECK(pair.zeta(1).imag() == 0.0);
  CHECK(pair.zeta_star(1).real() == doctest::Approx(s).epsilon(kTol));
}

TEST_CASE("te pair at the regime boundary kappa = 2k") {
  const CEPairTE pair = make_ce_pair_te(make_phase_point(Vec2(2.0, 0.0)), 1.0);
  CHECK(pair.zeta(0) == Complex(1.0, 0.0));
  CHECK(pair.zeta(1) == Complex(0.0, 0.0));
  CHECK(pair.zeta_star(0) == Complex(1.0, 0.0));
  CHECK(pair.zeta_star(1) == Complex(0.0, 0.0));
}

TEST_CASE("te pair in the evanescent regime") {
  const CEPairTE pair = make_ce_pair_te(make_phase_point(Vec2(4.0, 0.0)), 1.0);
  const double s = std::sqrt(3.0);
  CHECK(pair.zeta(0).real() == doctest::Approx(2.0));
  CHECK(pair.zeta(0).imag() == doctest::Approx(0.0));
  CHECK(pair.zeta(1).real() == doctest::Approx(0.0));
  CHECK(pair.zeta(1).imag() == doctest::Approx(s));
  CHECK(pair.zeta_star(1).imag() == doctest::Approx(-s));
}

TEST_CASE("te pair dispersion and sum invariants hold at random points") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> uk(0.5, 20.0);
  std::uniform_real_distribution<double> ux(-30.0, 30.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Vec2 xi(ux(rng), ux(rng));
    if (xi.norm() < 1e-6) continue;
    const double k = uk(rng);
    const CEPairTE pair = make_ce_pair_te(make_phase_point(xi), k);
    const Complex d1 = cdot(pair.zeta, pair.zeta);
    const Complex d2 = cdot(pair.zeta_star, pair.zeta_star);
    CHECK(std::abs(d1 - Complex(k * k, 0.0)) < 1e-9 * k * k);
    CHECK(std::abs(d2 - Complex(k * k, 0.0)) < 1e-9 * k * k);
    const CVec2 sum = pair.zeta + pair.zeta_star;
    CHECK(std::abs(sum(0) - Complex(xi(0), 0.0)) < 1e-10 * (1.0 + xi.norm()));
    CHECK(std::abs(sum(1) - Complex(xi(1), 0.0)) < 1e-10 * (1.0 + xi.norm()));
  }
}

TEST_CASE("te field samples multiply to the pure oscillation") {
  const CEPairTE pair = make_ce_pair_te(make_phase_point(Vec2(2.0, 0.0)), 1.0);
  const TEFieldSample at0 = eval_te_fields(pair, Vec2(0.0, 0.0));
  CHECK(at0.e3 == Complex(1.0, 0.0));
  CHECK(at0.e3_star == Complex(-1.0, 0.0));

  const Vec2 x(0.3, -0.2);
  const TEFieldSample s = eval_te_fields(pair, x);
  const Complex expected = -std::exp(I * Complex(2.0 * x(0), 0.0));
  CHECK(std::abs(s.e3 * (-s.e3_star) - (-expected)) < kTol);

  // Gradients against central differences.
  const double h = 1e-6;
  const CEPairTE ev = make_ce_pair_te(make_phase_point(Vec2(1.0, 3.0)), 1.2);
  const Vec2 y(0.1, 0.25);
  const TEFieldSample c = eval_te_fields(ev, y);
  for (int axis = 0; axis < 2; ++axis) {
    Vec2 dy = Vec2::Zero();
    dy(axis) = h;
    const Complex fp = eval_te_fields(ev, y + dy).e3;
    const Complex fm = eval_te_fields(ev, y - dy).e3;
    CHECK(std::abs(c.grad_e3(axis) - (fp - fm) / (2.0 * h)) < 1e-6);
    const Complex gp = eval_te_fields(ev, y + dy).e3_star;
    const Complex gm = eval_te_fields(ev, y - dy).e3_star;
    CHECK(std::abs(c.grad_e3_star(axis) - (gp - gm) / (2.0 * h)) < 1e-6);
  }
}

TEST_CASE("3d pair at the regime boundary") {
  const CEPair3D pair = make_ce_pair_3d(Vec3(2.0, 0.0, 0.0), 1.0, 1.0, 1.0);
  CHECK(std::abs(pair.zeta(0) - Complex(1.0, 0.0)) < kTol);
  CHECK(std::abs(pair.zeta(1)) < kTol);
  CHECK(std::abs(pair.a(2) - Complex(1.0, 0.0)) < kTol);
  CHECK(std::abs(pair.a_star(2) - Complex(-1.0, 0.0)) < kTol);
  CHECK(std::abs(pair.b(1) - Complex(-1.0, 0.0)) < kTol);
  CHECK(std::abs(pair.b(0)) < kTol);
  CHECK(std::abs(pair.b_star(1) - Complex(1.0, 0.0)) < kTol);
}

TEST_CASE("3d pair in the propagating regime") {
  const CEPair3D pair = make_ce_pair_3d(Vec3(1.0, 0.0, 0.0), 1.0, 1.0, 1.0);
  const double s = std::sqrt(0.75);
  CHECK(pair.zeta(0).real() == doctest::Approx(0.5));
  CHECK(pair.zeta(1).real() == doctest::Approx(s));
  CHECK(pair.b(0).real() == doctest::Approx(s));
  CHECK(pair.b(1).real() == doctest::Approx(-0.5));
  CHECK(pair.b_star(0).real() == doctest::Approx(s));
  CHECK(pair.b_star(1).real() == doctest::Approx(0.5));
}

TEST_CASE("3d pair satisfies the curl relations at random points") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uo(0.5, 12.0);
  std::uniform_real_distribution<double> ux(-25.0, 25.0);
  std::uniform_real_distribution<double> um(0.5, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Vec3 xi(ux(rng), ux(rng), 0.0);
    if (xi.norm() < 1e-6) continue;
    const double omega = uo(rng);
    const double eps0 = um(rng);
    const double mu0 = um(rng);
    const double k = omega * std::sqrt(eps0 * mu0);
    const CEPair3D p = make_ce_pair_3d(xi, omega, eps0, mu0);

    CHECK(std::abs(cdot(p.zeta, p.zeta) - Complex(k * k, 0.0)) <
          1e-9 * (1.0 + k * k));
    CHECK(std::abs(cdot(p.zeta, p.a)) < 1e-9);
    CHECK(std::abs(cdot(p.zeta, p.b)) < 1e-9 * (1.0 + k));
    const CVec3 curl_e = ccross(p.zeta, p.a) - omega * mu0 * p.b;
    const CVec3 curl_h = ccross(p.zeta, p.b) + omega * eps0 * p.a;
    CHECK(curl_e.norm() < 1e-9 * (1.0 + k));
    CHECK(curl_h.norm() < 1e-9 * (1.0 + k) * (1.0 + k));
    const CVec3 star_e = ccross(p.zeta_star, p.a_star) - omega * mu0 * p.b_star;
    CHECK(star_e.norm() < 1e-9 * (1.0 + k));

    // Restriction to third components reproduces the planar pair.
    const CEPairTE te = make_ce_pair_te(
        make_phase_point(Vec2(xi(0), xi(1))), k);
    CHECK(std::abs(p.zeta(0) - te.zeta(0)) < 1e-9 * (1.0 + k));
    CHECK(std::abs(p.zeta(1) - te.zeta(1)) < 1e-9 * (1.0 + k));
    CHECK(std::abs(p.a(2) - Complex(1.0, 0.0)) < kTol);
  }
}

TEST_CASE("3d pair rejects out-of-plane frequencies") {
  CHECK_THROWS_AS(make_ce_pair_3d(Vec3(1.0, 0.0, 0.5), 1.0, 1.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_ce_pair_3d(Vec3(0.0, 0.0, 0.0), 1.0, 1.0, 1.0),
                  ZeroPhaseVector);
}

TEST_CASE("phase grid layout and weights") {
  const PhaseGrid g = make_phase_grid(0.2, 0.2, 50.0, 19);
  CHECK(g.num_lengths() == 250);
  CHECK(g.num_angles() == 19);
  CHECK(g.size() == 4750);
  CHECK(g.lengths.front() == doctest::Approx(0.2));
  CHECK(g.lengths.back() == doctest::Approx(50.0));
  for (std::size_t l = 1; l < g.num_lengths(); ++l) {
    CHECK(g.lengths[l] > g.lengths[l - 1]);
  }
  CHECK(g.weight(10, 3) ==
        doctest::Approx(g.lengths[10] * 0.2 / 19.0).epsilon(kTol));

  // The weights are the polar quadrature of the disc of radius K up to the
  // folded-in 1/(2 pi).
  double wsum = 0.0;
  for (double w : g.weights) wsum += w;
  const double area = std::numbers::pi * 50.0 * 50.0;
  CHECK(std::abs(2.0 * std::numbers::pi * wsum - area) < 0.02 * area);
}

TEST_CASE("phase grid ring count is robust to rounding at the cap") {
  CHECK(make_phase_grid(0.2, 0.2, 30.0, 19).num_lengths() == 150);
  CHECK(make_phase_grid(0.2, 0.2, 10.0, 19).num_lengths() == 50);
  CHECK(make_phase_grid(0.2, 0.2, 20.0, 19).num_lengths() == 100);
}

TEST_CASE("phase grid rejects an empty cap") {
  CHECK_THROWS_AS(make_phase_grid(1.0, 1.0, 0.5, 4), EmptyGrid);
}

TEST_CASE("phase grid frames are orthonormal rotations") {
  const PhaseGrid g = make_phase_grid(0.5, 0.5, 3.0, 7);
  for (const auto& f : g.directions) {
    CHECK(f.e1.norm() == doctest::Approx(1.0).epsilon(kTol));
    CHECK(f.e1.dot(f.e2) == doctest::Approx(0.0).epsilon(kTol));
    CHECK(f.e2(0) == doctest::Approx(-f.e1(1)).epsilon(kTol));
    CHECK(f.e2(1) == doctest::Approx(f.e1(0)).epsilon(kTol));
  }
  const PhasePoint2D p = g.phase_point(2, 3);
  CHECK(p.kappa == doctest::Approx(1.5));
  CHECK(p.xi.norm() == doctest::Approx(1.5));
}

TEST_CASE("phase grid csv header and first row") {
  const PhaseGrid g = make_phase_grid(1.0, 1.0, 2.0, 2);
  std::ostringstream os;
  write_csv(os, g);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "ell,s,kappa,theta,xi1,xi2,weight");
  std::getline(is, line);
  CHECK(line == "0,0,1,0,1,0,0.5");
}
