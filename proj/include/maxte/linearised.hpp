#pragma once

#include <cstdint>
#include <ostream>
#include <vector>

#include "maxte/forward.hpp"
#include "maxte/geometry.hpp"
#include "maxte/phase_space.hpp"

namespace maxte {

// Boundary measurement for one phase point: the normal derivative of the
// conductive solution minus the normal derivative of the background solve on
// the same grid (discrete differencing cancels the shared discretization
// error). full_trace_norm keeps the L2 size of the raw measured trace, the
// reference quantity relative noise is calibrated against.
struct LinearisedTrace {
  PhasePoint2D phase;
  double omega = 0.0;
  std::vector<Complex> values;
  double full_trace_norm = 0.0;
  bool noisy = false;
  double delta = 0.0;
  std::uint64_t seed = 0;
};

struct NoiseSpec {
  double delta = 0.0;
  std::uint64_t seed = 0;
};

// Weighted discrete L2 norm over the boundary samples.
double trace_norm(const std::vector<Complex>& values,
                  const BoundarySampling& sampling);

// Two Dirichlet solves (sigma operator and background operator) with the
// incident trace g = exp(i zeta . x), normal derivatives subtracted.
// Both operators must share grid, domain and frequency.
LinearisedTrace synth_linearised_trace(const HelmholtzOperator& op_sigma,
                                       const HelmholtzOperator& op_zero,
                                       const CEPairTE& pair,
                                       const BoundarySampling& sampling);

// Batched variant: one multi-column solve per operator per chunk.
std::vector<LinearisedTrace> synth_linearised_traces(
    const HelmholtzOperator& op_sigma, const HelmholtzOperator& op_zero,
    const std::vector<CEPairTE>& pairs, const BoundarySampling& sampling,
    std::size_t batch = 64);

// Adds a complex Gaussian perturbation rescaled so its discrete L2 norm is
// exactly spec.delta * full_trace_norm. Deterministic in the seed. Throws
// DoubleNoise when the trace already carries noise.
LinearisedTrace add_noise(const LinearisedTrace& trace,
                          const BoundarySampling& sampling,
                          const NoiseSpec& spec);

// Stable per-mode seed derivation from a base seed and a flat mode index.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

// Columns: j,theta,re,im.
void write_csv(std::ostream& os, const LinearisedTrace& trace,
               const BoundarySampling& sampling);

}  // namespace maxte
