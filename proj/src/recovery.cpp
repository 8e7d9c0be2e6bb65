#include "maxte/recovery.hpp"

#include <cmath>
#include <numbers>

#include "maxte/csv.hpp"
#include "maxte/errors.hpp"

namespace maxte {

RecoveredMode recover_mode(const LinearisedTrace& trace, const CEPairTE& pair,
                           const BoundarySampling& sampling, double omega,
                           double mu0) {
  if (trace.values.size() != sampling.size()) {
    throw DimensionMismatch("trace and boundary sampling sizes differ");
  }
  if (trace.omega != omega) {
    throw DimensionMismatch("trace was synthesized at a different frequency");
  }
  const Vec2 xi = (pair.zeta + pair.zeta_star).real();
  if ((xi - trace.phase.xi).norm() > 1e-9 * (1.0 + xi.norm())) {
    throw DimensionMismatch("trace and pair target different phase points");
  }

  Complex acc(0.0, 0.0);
  for (std::size_t j = 0; j < sampling.size(); ++j) {
    const Complex e3_star =
        -std::exp(I * cdot(pair.zeta_star, to_complex(sampling.points[j])));
    acc += sampling.arc_weights[j] * trace.values[j] * e3_star;
  }
  RecoveredMode mode;
  mode.xi = xi;
  mode.value = acc / (2.0 * std::numbers::pi * I * omega * mu0);
  mode.omega = omega;
  return mode;
}

Complex oracle_ft(const RealField2D& sigma, const NodeClassification& cls,
                  const Vec2& xi) {
  const CartesianGrid& g = sigma.grid;
  if (static_cast<int>(cls.labels.size()) != g.num_nodes()) {
    throw DimensionMismatch("classification does not match the sigma grid");
  }
  // Transform convention: sigma-hat(xi) = (2 pi)^-1 integral of
  // sigma(x) exp(-i xi . x); the synthesis weights and the boundary
  // identity both carry their matching share of the 2 pi.
  const double cell = g.hx() * g.hy() / (2.0 * std::numbers::pi);
  // exp(-i xi . x) factorizes over the tensor grid.
  std::vector<Complex> px(g.nx), py(g.ny);
  for (int i = 0; i < g.nx; ++i) px[i] = std::exp(-I * (xi(0) * g.x(i)));
  for (int j = 0; j < g.ny; ++j) py[j] = std::exp(-I * (xi(1) * g.y(j)));
  Complex acc(0.0, 0.0);
  for (int j = 0; j < g.ny; ++j) {
    Complex row(0.0, 0.0);
    for (int i = 0; i < g.nx; ++i) {
      const int n = g.node(i, j);
      if (cls.labels[n] == NodeLabel::Exterior) continue;
      row += sigma.values[n] * px[i];
    }
    acc += row * py[j];
  }
  return cell * acc;
}

void write_csv(std::ostream& os, const ModeSet& set) {
  os << "ell,s,xi1,xi2,re,im,abs\n";
  for (std::size_t l = 0; l < set.grid.num_lengths(); ++l) {
    for (std::size_t s = 0; s < set.grid.num_angles(); ++s) {
      const RecoveredMode& m = set.modes[set.grid.index(l, s)];
      csv_row(os, l, s, m.xi(0), m.xi(1), m.value.real(), m.value.imag(),
              std::abs(m.value));
    }
  }
}

}  // namespace maxte
