#include "maxte/linearised.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "maxte/csv.hpp"
#include "maxte/errors.hpp"

namespace maxte {

double trace_norm(const std::vector<Complex>& values,
                  const BoundarySampling& sampling) {
  if (values.size() != sampling.size()) {
    throw DimensionMismatch("trace and boundary sampling sizes differ");
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    acc += sampling.arc_weights[j] * std::norm(values[j]);
  }
  return std::sqrt(acc);
}

namespace {

void check_compatible(const HelmholtzOperator& a, const HelmholtzOperator& b) {
  if (a.grid().nx != b.grid().nx || a.grid().ny != b.grid().ny ||
      a.omega() != b.omega() || a.domain().radius != b.domain().radius) {
    throw DimensionMismatch(
        "sigma and background operators disagree on grid, domain or "
        "frequency");
  }
}

BoundaryFn incident_trace(const CEPairTE& pair) {
  const CVec2 zeta = pair.zeta;
  return [zeta](const Vec2& x) {
    return std::exp(I * cdot(zeta, to_complex(x)));
  };
}

}  // namespace

std::vector<LinearisedTrace> synth_linearised_traces(
    const HelmholtzOperator& op_sigma, const HelmholtzOperator& op_zero,
    const std::vector<CEPairTE>& pairs, const BoundarySampling& sampling,
    std::size_t batch) {
  check_compatible(op_sigma, op_zero);
  if (batch < 1) batch = 1;
  std::vector<LinearisedTrace> out;
  out.reserve(pairs.size());

  for (std::size_t start = 0; start < pairs.size(); start += batch) {
    const std::size_t stop = std::min(pairs.size(), start + batch);
    std::vector<BoundaryFn> gs;
    gs.reserve(stop - start);
    for (std::size_t m = start; m < stop; ++m) {
      gs.push_back(incident_trace(pairs[m]));
    }
    const auto full = op_sigma.solve_dirichlet_many(gs);
    const auto background = op_zero.solve_dirichlet_many(gs);
    for (std::size_t m = start; m < stop; ++m) {
      const auto full_trace =
          neumann_trace(full[m - start], op_sigma.domain(), sampling);
      const auto back_trace =
          neumann_trace(background[m - start], op_zero.domain(), sampling);
      LinearisedTrace t;
      // zeta + zeta_star = xi exactly, so the phase point is recoverable
      // from the pair alone.
      t.phase = make_phase_point(
          (pairs[m].zeta + pairs[m].zeta_star).real());
      t.omega = op_sigma.omega();
      t.values.resize(sampling.size());
      for (std::size_t j = 0; j < sampling.size(); ++j) {
        t.values[j] = full_trace[j] - back_trace[j];
      }
      t.full_trace_norm = trace_norm(full_trace, sampling);
      out.push_back(std::move(t));
    }
  }
  return out;
}

LinearisedTrace synth_linearised_trace(const HelmholtzOperator& op_sigma,
                                       const HelmholtzOperator& op_zero,
                                       const CEPairTE& pair,
                                       const BoundarySampling& sampling) {
  return synth_linearised_traces(op_sigma, op_zero, {pair}, sampling, 1)[0];
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  // splitmix64 step; decorrelates consecutive mode indices.
  std::uint64_t z = base + (index + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

namespace {

// Portable uniform in [0, 1) from the top 53 bits; the standard library
// distributions are implementation defined, which would tie the noise to one
// standard library version.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double gaussian(std::mt19937_64& rng, bool& have_spare, double& spare) {
  if (have_spare) {
    have_spare = false;
    return spare;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform01(rng) - 1.0;
    v = 2.0 * uniform01(rng) - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double m = std::sqrt(-2.0 * std::log(s) / s);
  spare = v * m;
  have_spare = true;
  return u * m;
}

}  // namespace

LinearisedTrace add_noise(const LinearisedTrace& trace,
                          const BoundarySampling& sampling,
                          const NoiseSpec& spec) {
  if (trace.noisy) {
    throw DoubleNoise("trace already carries a noise realisation");
  }
  if (!(spec.delta >= 0.0)) {
    throw std::invalid_argument("noise level must be nonnegative");
  }
  if (trace.values.size() != sampling.size()) {
    throw DimensionMismatch("trace and boundary sampling sizes differ");
  }

  LinearisedTrace out = trace;
  out.noisy = true;
  out.delta = spec.delta;
  out.seed = spec.seed;
  if (spec.delta == 0.0) return out;

  std::mt19937_64 rng(spec.seed);
  bool have_spare = false;
  double spare = 0.0;
  std::vector<Complex> eta(trace.values.size());
  for (auto& e : eta) {
    e = Complex(gaussian(rng, have_spare, spare),
                gaussian(rng, have_spare, spare));
  }
  const double eta_norm = trace_norm(eta, sampling);
  if (eta_norm == 0.0) return out;  // astronomically unlikely
  // Exact calibration: the perturbation norm equals delta times the norm of
  // the full measured trace, not of the linearised difference.
  const double scale = spec.delta * trace.full_trace_norm / eta_norm;
  for (std::size_t j = 0; j < eta.size(); ++j) {
    out.values[j] += scale * eta[j];
  }
  return out;
}

void write_csv(std::ostream& os, const LinearisedTrace& trace,
               const BoundarySampling& sampling) {
  if (trace.noisy) {
    os << "# delta=" << fmt(trace.delta) << " seed=" << trace.seed << "\n";
  }
  os << "j,theta,re,im\n";
  for (std::size_t j = 0; j < trace.values.size(); ++j) {
    csv_row(os, j, sampling.thetas[j], trace.values[j].real(),
            trace.values[j].imag());
  }
}

}  // namespace maxte
