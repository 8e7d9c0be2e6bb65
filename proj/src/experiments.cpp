#include "maxte/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "maxte/csv.hpp"
#include "maxte/errors.hpp"

namespace maxte {

ReconstructionConfig ExperimentConfig::reconstruction() const {
  ReconstructionConfig rc;
  rc.omega = omega;
  rc.kappa_min = kappa_min;
  rc.kappa_step = kappa_step;
  rc.cap = K;
  rc.n_angles = n_angles;
  rc.grid_forward = grid_forward;
  rc.grid_inverse = grid_inverse;
  rc.noise_delta = noise_delta;
  rc.noise_seed = seed;
  return rc;
}

Phantom ExperimentConfig::make_phantom() const {
  return phantom_from_name(phantom);
}

namespace {

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("value '" + value + "' for key '" + key +
                      "' is not a number");
  }
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("value '" + value + "' for key '" + key +
                      "' is not an integer");
  }
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

void apply_override(ExperimentConfig& cfg, const std::string& key,
                    const std::string& value) {
  if (key == "omega") {
    cfg.omega = parse_double(key, value);
    if (!(cfg.omega > 0.0)) throw ConfigError("omega must be positive");
  } else if (key == "kappa_min") {
    cfg.kappa_min = parse_double(key, value);
    if (!(cfg.kappa_min > 0.0)) throw ConfigError("kappa_min must be positive");
  } else if (key == "kappa_step") {
    cfg.kappa_step = parse_double(key, value);
    if (!(cfg.kappa_step > 0.0)) {
      throw ConfigError("kappa_step must be positive");
    }
  } else if (key == "K") {
    cfg.K = parse_double(key, value);
    if (cfg.K < 0.0) throw ConfigError("K must be nonnegative (0 = 2k)");
  } else if (key == "n_angles") {
    const long long v = parse_int(key, value);
    if (v < 1) throw ConfigError("n_angles must be at least 1");
    cfg.n_angles = static_cast<std::size_t>(v);
  } else if (key == "grid_forward") {
    const long long v = parse_int(key, value);
    if (v < 8) throw ConfigError("grid_forward too small");
    cfg.grid_forward = static_cast<int>(v);
  } else if (key == "grid_inverse") {
    const long long v = parse_int(key, value);
    if (v < 8) throw ConfigError("grid_inverse too small");
    cfg.grid_inverse = static_cast<int>(v);
  } else if (key == "noise_delta") {
    cfg.noise_delta = parse_double(key, value);
    if (cfg.noise_delta < 0.0) {
      throw ConfigError("noise_delta must be nonnegative");
    }
  } else if (key == "seed") {
    const long long v = parse_int(key, value);
    if (v < 0) throw ConfigError("seed must be nonnegative");
    cfg.seed = static_cast<std::uint64_t>(v);
  } else if (key == "phantom") {
    phantom_from_name(value);  // validates
    cfg.phantom = value;
  } else {
    throw ConfigError("unknown configuration key '" + key + "'");
  }
}

ExperimentConfig parse_config(std::istream& is) {
  ExperimentConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(lineno) +
                        ": expected key=value, got '" + t + "'");
    }
    apply_override(cfg, trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  return parse_config(in);
}

SweepResult run_noise_sweep(const ExperimentConfig& cfg,
                            const std::vector<double>& deltas,
                            const std::vector<std::uint64_t>& seeds) {
  if (deltas.empty() || seeds.empty()) {
    throw InsufficientData("sweep needs at least one delta and one seed");
  }
  const ReconstructionConfig rc = cfg.reconstruction();
  const Phantom ph = cfg.make_phantom();

  const CartesianGrid fgrid = make_grid(rc.grid_forward, rc.half_width);
  const DiskDomain dom{Vec2::Zero(), rc.radius};
  const RealField2D sigma = sample_phantom(ph, fgrid);
  RealField2D zero;
  zero.grid = fgrid;
  zero.values.assign(fgrid.num_nodes(), 0.0);
  const HelmholtzOperator op_sigma(fgrid, dom, rc.omega, rc.eps0, rc.mu0,
                                   sigma);
  const HelmholtzOperator op_zero(fgrid, dom, rc.omega, rc.eps0, rc.mu0,
                                  zero);
  const BoundarySampling sampling = make_boundary_sampling(dom, rc.nb);
  const PhaseGrid pgrid = make_phase_grid(rc.kappa_min, rc.kappa_step,
                                          rc.effective_cap(), rc.n_angles);

  const TraceSet clean =
      generate_traces(op_sigma, op_zero, pgrid, sampling, rc.batch);

  const CartesianGrid igrid = make_grid(rc.grid_inverse, rc.half_width);
  const NodeClassification icls = classify(igrid, dom);
  const RealField2D truth = sample_phantom(ph, igrid);

  SweepResult result;
  for (const double delta : deltas) {
    for (const std::uint64_t seed : seeds) {
      const auto t0 = std::chrono::steady_clock::now();
      const TraceSet ts = delta > 0.0
                              ? apply_noise(clean, sampling, delta, seed)
                              : clean;
      const ModeSet modes = recover_modes(ts, sampling);
      const ReconstructedField recon = synthesize(modes, igrid);
      SweepRow row;
      row.omega = rc.omega;
      row.delta = delta;
      row.seed = seed;
      row.rel_error = relative_error(recon.field, truth, icls);
      row.max_imag_residue = recon.max_imag_residue;
      row.runtime_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
              .count();
      result.rows.push_back(row);
      if (delta == 0.0) break;  // noise-free cell does not depend on the seed
    }
  }
  return result;
}

double fit_slope(const SweepResult& sweep, double omega) {
  std::vector<double> lx, ly;
  std::vector<double> distinct;
  for (const SweepRow& row : sweep.rows) {
    if (row.omega != omega || !(row.delta > 0.0)) continue;
    lx.push_back(std::log(row.delta));
    ly.push_back(std::log(row.rel_error));
    if (std::find(distinct.begin(), distinct.end(), row.delta) ==
        distinct.end()) {
      distinct.push_back(row.delta);
    }
  }
  if (distinct.size() < 3) {
    throw InsufficientData(
        "slope fit needs at least three distinct noise levels");
  }
  const double n = static_cast<double>(lx.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void write_csv(std::ostream& os, const SweepResult& sweep) {
  os << "omega,delta,seed,rel_error,max_imag_residue,runtime_s\n";
  for (const SweepRow& row : sweep.rows) {
    csv_row(os, row.omega, row.delta, row.seed, row.rel_error,
            row.max_imag_residue, row.runtime_seconds);
  }
}

}  // namespace maxte
