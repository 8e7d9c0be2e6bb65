#pragma once

#include <cstddef>
#include <ostream>
#include <vector>

#include "maxte/types.hpp"

namespace maxte {

// A single spatial frequency xi together with its polar decomposition and the
// orthonormal frame used to build complex exponential solutions. e1 points
// along xi, e2 is e1 rotated by +pi/2.
struct PhasePoint2D {
  Vec2 xi;
  double kappa;  // |xi|
  Vec2 e1;
  Vec2 e2;
};

// Pair of complex wave vectors at wavenumber k whose plane waves multiply to
// a pure oscillation at frequency xi: zeta + zeta_star = xi and
// cdot(zeta, zeta) = cdot(zeta_star, zeta_star) = k^2 (bilinear, no
// conjugation). For kappa > 2k the vectors pick up an imaginary part along e2
// and the waves grow/decay exponentially.
struct CEPairTE {
  CVec2 zeta;
  CVec2 zeta_star;
  double k;
};

// Full 3D Maxwell plane-wave pair for in-plane frequencies xi = (xi', 0).
// E = a exp(i zeta.x), H = b exp(i zeta.x) and the starred twin satisfy
// ccross(zeta, a) = omega mu0 b and ccross(zeta, b) = -omega eps0 a.
struct CEPair3D {
  CVec3 zeta;
  CVec3 zeta_star;
  CVec3 a;
  CVec3 b;
  CVec3 a_star;
  CVec3 b_star;
  double k;
};

// Scalar TE fields and gradients of the background pair at one point:
// e3 = exp(i zeta.x), e3_star = -exp(i zeta_star.x).
struct TEFieldSample {
  Complex e3;
  Complex e3_star;
  CVec2 grad_e3;
  CVec2 grad_e3_star;
};

// Polar product grid of phase points: lengths kappa_l = kappa_min + l*step up
// to the cap, directions at angles 2 pi s / n_angles, annular quadrature
// weights w(l,s) = kappa_l * step / n_angles (the 1/(2pi) Fourier constant is
// folded into the weight).
struct PhaseGrid {
  struct Frame {
    double theta;
    Vec2 e1;
    Vec2 e2;
  };

  std::vector<double> lengths;
  std::vector<Frame> directions;
  std::vector<double> weights;  // row-major, index(l, s)
  double kappa_step = 0.0;
  double cap = 0.0;

  std::size_t num_lengths() const { return lengths.size(); }
  std::size_t num_angles() const { return directions.size(); }
  std::size_t size() const { return lengths.size() * directions.size(); }
  std::size_t index(std::size_t l, std::size_t s) const {
    return l * directions.size() + s;
  }
  Vec2 xi(std::size_t l, std::size_t s) const {
    return lengths[l] * directions[s].e1;
  }
  double weight(std::size_t l, std::size_t s) const {
    return weights[index(l, s)];
  }
  PhasePoint2D phase_point(std::size_t l, std::size_t s) const {
    return PhasePoint2D{xi(l, s), lengths[l], directions[s].e1,
                        directions[s].e2};
  }
};

// Throws ZeroPhaseVector when |xi| = 0.
PhasePoint2D make_phase_point(const Vec2& xi);

// k > 0 required. Chooses s = sqrt(k^2 - kappa^2/4) for kappa <= 2k and
// s = i sqrt(kappa^2/4 - k^2) otherwise; zeta = (kappa/2) e1 + s e2,
// zeta_star = (kappa/2) e1 - s e2.
CEPairTE make_ce_pair_te(const PhasePoint2D& p, double k);

// xi must lie in the plane (xi3 = 0) and be nonzero. eps0, mu0 > 0.
CEPair3D make_ce_pair_3d(const Vec3& xi, double omega, double eps0,
                         double mu0);

TEFieldSample eval_te_fields(const CEPairTE& pair, const Vec2& x);

// Throws EmptyGrid when no length fits under the cap.
PhaseGrid make_phase_grid(double kappa_min, double kappa_step, double cap,
                          std::size_t n_angles);

// Columns: ell,s,kappa,theta,xi1,xi2,weight.
void write_csv(std::ostream& os, const PhaseGrid& grid);

}  // namespace maxte
