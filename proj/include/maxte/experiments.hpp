#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "maxte/phantom.hpp"
#include "maxte/reconstruct.hpp"

namespace maxte {

// Flat key=value run configuration; the key set is closed and unknown keys
// are hard errors so typos cannot silently fall back to defaults.
struct ExperimentConfig {
  double omega = 15.0;
  double kappa_min = 0.2;
  double kappa_step = 0.2;
  double K = 0.0;  // 0 selects 2k
  std::size_t n_angles = 19;
  int grid_forward = 200;
  int grid_inverse = 90;
  double noise_delta = 0.0;
  std::uint64_t seed = 1;
  std::string phantom = "paper_peaks";

  ReconstructionConfig reconstruction() const;
  Phantom make_phantom() const;
};

// Accepted keys: omega, kappa_min, kappa_step, K, n_angles, grid_forward,
// grid_inverse, noise_delta, seed, phantom. Lines starting with '#' and
// blank lines are skipped. Throws ConfigError on anything else.
ExperimentConfig parse_config(std::istream& is);
ExperimentConfig load_config(const std::string& path);

// Applies one key=value override, same key set and errors as the file
// parser.
void apply_override(ExperimentConfig& cfg, const std::string& key,
                    const std::string& value);

struct SweepRow {
  double omega = 0.0;
  double delta = 0.0;
  std::uint64_t seed = 0;
  double rel_error = 0.0;
  double max_imag_residue = 0.0;
  double runtime_seconds = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

// Noise robustness sweep at the config frequency: the clean traces are
// generated once, every (delta, seed) cell then adds its own noise
// realisation and reruns recovery and synthesis, which is observably
// identical to a full rerun because the forward data do not depend on the
// noise.
SweepResult run_noise_sweep(const ExperimentConfig& cfg,
                            const std::vector<double>& deltas,
                            const std::vector<std::uint64_t>& seeds);

// Least-squares slope of log rel_error against log delta over the rows at
// this frequency with delta > 0, pooled across seeds. Throws
// InsufficientData below three distinct noise levels.
double fit_slope(const SweepResult& sweep, double omega);

// Columns: omega,delta,seed,rel_error,max_imag_residue,runtime_s.
void write_csv(std::ostream& os, const SweepResult& sweep);

inline constexpr double kDefaultDeltas[] = {0.02, 0.05, 0.1, 0.2, 0.4};
inline constexpr std::uint64_t kDefaultSeeds[] = {1, 2, 3, 4, 5};

}  // namespace maxte
