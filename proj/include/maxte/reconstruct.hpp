#pragma once

#include <cstdint>
#include <vector>

#include "maxte/forward.hpp"
#include "maxte/geometry.hpp"
#include "maxte/linearised.hpp"
#include "maxte/phantom.hpp"
#include "maxte/recovery.hpp"

namespace maxte {

// Everything a full reconstruction run needs. cap = 0 selects the resolution
// truncation 2k that balances the stable and unstable parts of the spectrum.
struct ReconstructionConfig {
  double omega = 15.0;
  double eps0 = 1.0;
  double mu0 = 1.0;
  double kappa_min = 0.2;
  double kappa_step = 0.2;
  double cap = 0.0;
  std::size_t n_angles = 19;
  int grid_forward = 200;
  int grid_inverse = 90;
  double half_width = 0.75;
  double radius = 0.7;
  std::size_t nb = 720;
  double noise_delta = 0.0;
  std::uint64_t noise_seed = 1;
  std::size_t batch = 64;

  double k() const;
  double effective_cap() const;
};

// Boundary data for every point of a phase grid at one frequency.
struct TraceSet {
  PhaseGrid grid;
  double omega = 0.0;
  double eps0 = 1.0;
  double mu0 = 1.0;
  std::vector<LinearisedTrace> traces;  // indexed l * n_angles + s
};

struct ReconstructedField {
  RealField2D field;
  double max_imag_residue = 0.0;  // dropped imaginary part, diagnostic
  double max_abs_real = 0.0;
};

struct Algorithm1Result {
  ModeSet modes;
  ReconstructedField recon;
  double rel_error = 0.0;  // NaN when the truth vanishes
  double runtime_seconds = 0.0;
};

// Two solves per phase point through the shared factorizations, traversed
// length-major so the ordering is reproducible.
TraceSet generate_traces(const HelmholtzOperator& op_sigma,
                         const HelmholtzOperator& op_zero,
                         const PhaseGrid& grid,
                         const BoundarySampling& sampling,
                         std::size_t batch = 64);

// Independent noise realisation per mode, seeds derived from the base seed
// and the flat mode index.
TraceSet apply_noise(const TraceSet& ts, const BoundarySampling& sampling,
                     double delta, std::uint64_t base_seed);

// Keeps the rings with lo < kappa <= hi (slack for rounding). Used both for
// the resolution truncation and for band diagnostics.
TraceSet slice_lengths(const TraceSet& ts, double lo, double hi);

// One boundary-integral recovery per phase point; a failure aborts with the
// offending (l, s) named.
ModeSet recover_modes(const TraceSet& ts, const BoundarySampling& sampling);

// Truncated inverse transform: sum of w(l,s) value(l,s) exp(-i xi . x) over
// the grid, accumulated length-major, real part kept. Each value estimates
// the transform at -xi, so exp(-i xi . x) is the matching inverse kernel;
// pairing it with exp(+i xi . x) instead rebuilds the point reflection.
ReconstructedField synthesize(const ModeSet& modes,
                              const CartesianGrid& grid);

// Masked discrete relative L2 error over the disk. Throws ZeroTruth when
// the truth vanishes on the mask, DimensionMismatch on different grids.
double relative_error(const RealField2D& recon, const RealField2D& truth,
                      const NodeClassification& cls);

// Full pipeline: sample the phantom on the forward grid, synthesize traces,
// optionally add noise, recover every mode, synthesize on the inversion
// grid, compare against the phantom sampled there.
Algorithm1Result run_algorithm1(const ReconstructionConfig& cfg,
                                const Phantom& phantom);

}  // namespace maxte
