#pragma once

#include <ostream>
#include <vector>

#include "maxte/geometry.hpp"
#include "maxte/linearised.hpp"
#include "maxte/phase_space.hpp"

namespace maxte {

// One Fourier coefficient estimate. xi is the phase-grid point the probing
// pair was built from; value estimates sigma-hat at -xi (the boundary
// identity pairs the datum at xi with the coefficient at the mirrored
// frequency).
struct RecoveredMode {
  Vec2 xi;
  Complex value;
  double omega = 0.0;
};

// Boundary integral (2 pi)^-1 (i omega mu0)^-1 sum_j w_j trace_j E3*(p_j)
// against the decaying partner wave. The trace, pair and sampling must agree
// on frequency and sample count.
RecoveredMode recover_mode(const LinearisedTrace& trace, const CEPairTE& pair,
                           const BoundarySampling& sampling, double omega,
                           double mu0);

// Independent route to the same coefficient: direct grid quadrature of
// sigma against exp(-i xi . x) over the disk, under the (2 pi)^-1 transform
// convention shared with recover_mode and the synthesis weights. Never
// reuses any boundary machinery, so the two routes cross-check each other.
Complex oracle_ft(const RealField2D& sigma, const NodeClassification& cls,
                  const Vec2& xi);

struct ModeSet {
  PhaseGrid grid;
  std::vector<RecoveredMode> modes;  // indexed like grid: l * n_angles + s
};

// Columns: ell,s,xi1,xi2,re,im,abs.
void write_csv(std::ostream& os, const ModeSet& set);

}  // namespace maxte
