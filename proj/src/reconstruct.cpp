#include "maxte/reconstruct.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "maxte/errors.hpp"

namespace maxte {

double ReconstructionConfig::k() const {
  return omega * std::sqrt(eps0 * mu0);
}

double ReconstructionConfig::effective_cap() const {
  return cap > 0.0 ? cap : 2.0 * k();
}

TraceSet generate_traces(const HelmholtzOperator& op_sigma,
                         const HelmholtzOperator& op_zero,
                         const PhaseGrid& grid,
                         const BoundarySampling& sampling,
                         std::size_t batch) {
  std::vector<CEPairTE> pairs;
  pairs.reserve(grid.size());
  for (std::size_t l = 0; l < grid.num_lengths(); ++l) {
    for (std::size_t s = 0; s < grid.num_angles(); ++s) {
      pairs.push_back(make_ce_pair_te(grid.phase_point(l, s), op_sigma.k()));
    }
  }
  TraceSet ts;
  ts.grid = grid;
  ts.omega = op_sigma.omega();
  ts.mu0 = op_sigma.mu0();
  ts.eps0 = op_sigma.k() * op_sigma.k() /
            (op_sigma.omega() * op_sigma.omega() * op_sigma.mu0());
  ts.traces =
      synth_linearised_traces(op_sigma, op_zero, pairs, sampling, batch);
  return ts;
}

TraceSet apply_noise(const TraceSet& ts, const BoundarySampling& sampling,
                     double delta, std::uint64_t base_seed) {
  TraceSet out = ts;
  for (std::size_t idx = 0; idx < out.traces.size(); ++idx) {
    out.traces[idx] = add_noise(ts.traces[idx], sampling,
                                NoiseSpec{delta, derive_seed(base_seed, idx)});
  }
  return out;
}

TraceSet slice_lengths(const TraceSet& ts, double lo, double hi) {
  TraceSet out;
  out.omega = ts.omega;
  out.eps0 = ts.eps0;
  out.mu0 = ts.mu0;
  out.grid.kappa_step = ts.grid.kappa_step;
  out.grid.cap = hi;
  out.grid.directions = ts.grid.directions;
  const double slack = 1e-9;
  for (std::size_t l = 0; l < ts.grid.num_lengths(); ++l) {
    const double kappa = ts.grid.lengths[l];
    if (kappa <= lo + slack || kappa > hi * (1.0 + 1e-12)) continue;
    out.grid.lengths.push_back(kappa);
    for (std::size_t s = 0; s < ts.grid.num_angles(); ++s) {
      out.grid.weights.push_back(ts.grid.weight(l, s));
      out.traces.push_back(ts.traces[ts.grid.index(l, s)]);
    }
  }
  if (out.grid.lengths.empty()) {
    throw EmptyGrid("no ring survives the length window");
  }
  return out;
}

ModeSet recover_modes(const TraceSet& ts, const BoundarySampling& sampling) {
  const double k = ts.omega * std::sqrt(ts.eps0 * ts.mu0);
  ModeSet set;
  set.grid = ts.grid;
  set.modes.reserve(ts.traces.size());
  for (std::size_t l = 0; l < ts.grid.num_lengths(); ++l) {
    for (std::size_t s = 0; s < ts.grid.num_angles(); ++s) {
      try {
        const CEPairTE pair = make_ce_pair_te(ts.grid.phase_point(l, s), k);
        set.modes.push_back(recover_mode(ts.traces[ts.grid.index(l, s)],
                                         pair, sampling, ts.omega, ts.mu0));
      } catch (const Error& e) {
        throw DimensionMismatch("mode (" + std::to_string(l) + ", " +
                                std::to_string(s) +
                                ") failed: " + e.what());
      }
    }
  }
  return set;
}

ReconstructedField synthesize(const ModeSet& modes,
                              const CartesianGrid& grid) {
  std::vector<Complex> acc(grid.num_nodes(), Complex(0.0, 0.0));
  std::vector<Complex> px(grid.nx), py(grid.ny);
  for (std::size_t l = 0; l < modes.grid.num_lengths(); ++l) {
    for (std::size_t s = 0; s < modes.grid.num_angles(); ++s) {
      const RecoveredMode& m = modes.modes[modes.grid.index(l, s)];
      const Complex coeff = modes.grid.weight(l, s) * m.value;
      // value sits at frequency -xi, so the inverse kernel is exp(-i xi . x).
      for (int i = 0; i < grid.nx; ++i) {
        px[i] = std::exp(-I * (m.xi(0) * grid.x(i)));
      }
      for (int j = 0; j < grid.ny; ++j) {
        py[j] = std::exp(-I * (m.xi(1) * grid.y(j)));
      }
      for (int j = 0; j < grid.ny; ++j) {
        const Complex cj = coeff * py[j];
        for (int i = 0; i < grid.nx; ++i) {
          acc[grid.node(i, j)] += cj * px[i];
        }
      }
    }
  }
  ReconstructedField out;
  out.field.grid = grid;
  out.field.values.resize(grid.num_nodes());
  for (int n = 0; n < grid.num_nodes(); ++n) {
    out.field.values[n] = acc[n].real();
    out.max_imag_residue = std::max(out.max_imag_residue,
                                    std::abs(acc[n].imag()));
    out.max_abs_real = std::max(out.max_abs_real, std::abs(acc[n].real()));
  }
  return out;
}

double relative_error(const RealField2D& recon, const RealField2D& truth,
                      const NodeClassification& cls) {
  if (recon.grid.nx != truth.grid.nx || recon.grid.ny != truth.grid.ny) {
    throw DimensionMismatch("reconstruction and truth live on different grids");
  }
  if (static_cast<int>(cls.labels.size()) != recon.grid.num_nodes()) {
    throw DimensionMismatch("classification does not match the field grid");
  }
  double num = 0.0, den = 0.0;
  for (int n = 0; n < recon.grid.num_nodes(); ++n) {
    if (cls.labels[n] == NodeLabel::Exterior) continue;
    const double d = recon.values[n] - truth.values[n];
    num += d * d;
    den += truth.values[n] * truth.values[n];
  }
  if (den == 0.0) {
    throw ZeroTruth("truth field vanishes on the disk");
  }
  return std::sqrt(num / den);
}

Algorithm1Result run_algorithm1(const ReconstructionConfig& cfg,
                                const Phantom& phantom) {
  const auto t0 = std::chrono::steady_clock::now();

  const CartesianGrid fgrid = make_grid(cfg.grid_forward, cfg.half_width);
  const DiskDomain dom{Vec2::Zero(), cfg.radius};
  const RealField2D sigma = sample_phantom(phantom, fgrid);
  RealField2D zero;
  zero.grid = fgrid;
  zero.values.assign(fgrid.num_nodes(), 0.0);

  const HelmholtzOperator op_sigma(fgrid, dom, cfg.omega, cfg.eps0, cfg.mu0,
                                   sigma);
  const HelmholtzOperator op_zero(fgrid, dom, cfg.omega, cfg.eps0, cfg.mu0,
                                  zero);
  const BoundarySampling sampling = make_boundary_sampling(dom, cfg.nb);
  const PhaseGrid pgrid = make_phase_grid(cfg.kappa_min, cfg.kappa_step,
                                          cfg.effective_cap(), cfg.n_angles);

  TraceSet ts = generate_traces(op_sigma, op_zero, pgrid, sampling, cfg.batch);
  if (cfg.noise_delta > 0.0) {
    ts = apply_noise(ts, sampling, cfg.noise_delta, cfg.noise_seed);
  }

  Algorithm1Result result;
  result.modes = recover_modes(ts, sampling);

  const CartesianGrid igrid = make_grid(cfg.grid_inverse, cfg.half_width);
  result.recon = synthesize(result.modes, igrid);

  const RealField2D truth = sample_phantom(phantom, igrid);
  const NodeClassification icls = classify(igrid, dom);
  double den = 0.0;
  for (int n = 0; n < igrid.num_nodes(); ++n) {
    if (icls.labels[n] != NodeLabel::Exterior) den += truth.values[n] * truth.values[n];
  }
  result.rel_error = den > 0.0
                         ? relative_error(result.recon.field, truth, icls)
                         : std::numeric_limits<double>::quiet_NaN();

  result.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return result;
}

}  // namespace maxte
