#include "maxte/phase_space.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "maxte/csv.hpp"
#include "maxte/errors.hpp"

namespace maxte {

PhasePoint2D make_phase_point(const Vec2& xi) {
  const double kappa = xi.norm();
  if (kappa == 0.0) {
    throw ZeroPhaseVector("phase vector has zero length");
  }
  const Vec2 e1 = xi / kappa;
  const Vec2 e2(-e1(1), e1(0));
  return PhasePoint2D{xi, kappa, e1, e2};
}

CEPairTE make_ce_pair_te(const PhasePoint2D& p, double k) {
  if (!(k > 0.0)) {
    throw std::invalid_argument("wavenumber k must be positive");
  }
  const double disc = k * k - 0.25 * p.kappa * p.kappa;
  // Propagating regime below 2k, evanescent above; the branch cut is fixed as
  // sqrt(-y) = i sqrt(y) so the starred wave decays where the plain one grows.
  Complex s;
  if (disc >= 0.0) {
    s = Complex(std::sqrt(disc), 0.0);
  } else {
    s = Complex(0.0, std::sqrt(-disc));
  }
  const CVec2 half_xi = to_complex(Vec2(0.5 * p.kappa * p.e1));
  const CVec2 e2c = to_complex(p.e2);
  CEPairTE pair;
  pair.zeta = half_xi + s * e2c;
  pair.zeta_star = half_xi - s * e2c;
  pair.k = k;
  return pair;
}

CEPair3D make_ce_pair_3d(const Vec3& xi, double omega, double eps0,
                         double mu0) {
  if (!(omega > 0.0) || !(eps0 > 0.0) || !(mu0 > 0.0)) {
    throw std::invalid_argument("omega, eps0, mu0 must be positive");
  }
  if (xi(2) != 0.0) {
    throw std::invalid_argument("phase vector must lie in the plane x3 = 0");
  }
  const double kappa = xi.norm();
  if (kappa == 0.0) {
    throw ZeroPhaseVector("phase vector has zero length");
  }
  const double k = omega * std::sqrt(eps0 * mu0);

  const Vec3 e1 = xi / kappa;
  const Vec3 e2(-e1(1), e1(0), 0.0);  // +pi/2 rotation within the plane
  const Vec3 e3(0.0, 0.0, 1.0);

  const double disc = k * k - 0.25 * kappa * kappa;
  Complex s;
  if (disc >= 0.0) {
    s = Complex(std::sqrt(disc), 0.0);
  } else {
    s = Complex(0.0, std::sqrt(-disc));
  }

  const CVec3 e1c = to_complex(e1);
  const CVec3 e2c = to_complex(e2);
  const CVec3 half_xi = Complex(0.5 * kappa) * e1c;

  CEPair3D pair;
  pair.zeta = half_xi + s * e2c;
  pair.zeta_star = half_xi - s * e2c;
  pair.a = to_complex(e3);
  pair.a_star = -to_complex(e3);
  pair.b = (-1.0 / (omega * mu0)) * (Complex(0.5 * kappa) * e2c - s * e1c);
  pair.b_star = (1.0 / (omega * mu0)) * (Complex(0.5 * kappa) * e2c + s * e1c);
  pair.k = k;
  return pair;
}

TEFieldSample eval_te_fields(const CEPairTE& pair, const Vec2& x) {
  const CVec2 xc = to_complex(x);
  const Complex e3 = std::exp(I * cdot(pair.zeta, xc));
  const Complex e3_star = -std::exp(I * cdot(pair.zeta_star, xc));
  TEFieldSample sample;
  sample.e3 = e3;
  sample.e3_star = e3_star;
  sample.grad_e3 = (I * e3) * pair.zeta;
  sample.grad_e3_star = (I * e3_star) * pair.zeta_star;
  return sample;
}

PhaseGrid make_phase_grid(double kappa_min, double kappa_step, double cap,
                          std::size_t n_angles) {
  if (!(kappa_min > 0.0) || !(kappa_step > 0.0)) {
    throw std::invalid_argument("kappa_min and kappa_step must be positive");
  }
  if (n_angles < 1) {
    throw std::invalid_argument("at least one angle required");
  }
  PhaseGrid grid;
  grid.kappa_step = kappa_step;
  grid.cap = cap;
  // Relative slack keeps the last ring when cap is an exact multiple of the
  // step up to rounding.
  const double limit = cap * (1.0 + 1e-12);
  for (std::size_t l = 0;; ++l) {
    const double kappa = kappa_min + static_cast<double>(l) * kappa_step;
    if (kappa > limit) break;
    grid.lengths.push_back(kappa);
  }
  if (grid.lengths.empty()) {
    throw EmptyGrid("no phase length below the cap");
  }
  grid.directions.reserve(n_angles);
  for (std::size_t s = 0; s < n_angles; ++s) {
    const double theta =
        2.0 * std::numbers::pi * static_cast<double>(s) / static_cast<double>(n_angles);
    const Vec2 e1(std::cos(theta), std::sin(theta));
    grid.directions.push_back(
        PhaseGrid::Frame{theta, e1, Vec2(-e1(1), e1(0))});
  }
  grid.weights.resize(grid.lengths.size() * n_angles);
  for (std::size_t l = 0; l < grid.lengths.size(); ++l) {
    const double w =
        grid.lengths[l] * kappa_step / static_cast<double>(n_angles);
    for (std::size_t s = 0; s < n_angles; ++s) {
      grid.weights[grid.index(l, s)] = w;
    }
  }
  return grid;
}

void write_csv(std::ostream& os, const PhaseGrid& grid) {
  os << "ell,s,kappa,theta,xi1,xi2,weight\n";
  for (std::size_t l = 0; l < grid.num_lengths(); ++l) {
    for (std::size_t s = 0; s < grid.num_angles(); ++s) {
      const Vec2 xi = grid.xi(l, s);
      csv_row(os, l, s, grid.lengths[l], grid.directions[s].theta, xi(0),
              xi(1), grid.weight(l, s));
    }
  }
}

}  // namespace maxte
