#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "maxte/bounds.hpp"
#include "maxte/csv.hpp"
#include "maxte/errors.hpp"
#include "maxte/experiments.hpp"
#include "maxte/phantom.hpp"
#include "maxte/reconstruct.hpp"

namespace {

using namespace maxte;

// Shared per-subcommand state: a config file plus --key=value overrides,
// applied in command-line order after the file is loaded.
struct RunArgs {
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> overrides;
  std::string out_dir = ".";

  ExperimentConfig resolve() const {
    ExperimentConfig cfg;
    if (!config_path.empty()) cfg = load_config(config_path);
    for (const auto& [key, value] : overrides) {
      apply_override(cfg, key, value);
    }
    return cfg;
  }
};

void add_run_options(CLI::App* cmd, RunArgs& args) {
  cmd->add_option("--config", args.config_path, "configuration file");
  cmd->add_option("--out", args.out_dir, "output directory")
      ->capture_default_str();
  static const char* keys[] = {"omega",        "kappa_min",   "kappa_step",
                               "K",            "n_angles",    "grid_forward",
                               "grid_inverse", "noise_delta", "seed",
                               "phantom"};
  for (const char* key : keys) {
    cmd->add_option_function<std::string>(
        std::string("--") + key,
        [&args, key](const std::string& v) {
          args.overrides.emplace_back(key, v);
        },
        "override the config key of the same name");
  }
}

std::ofstream open_output(const std::string& dir, const std::string& name) {
  const std::string path = dir + "/" + name;
  std::ofstream os(path);
  if (!os) {
    throw ConfigError("cannot open output file '" + path + "'");
  }
  return os;
}

// First phase point of the configured grid, the probe used by the
// single-solve subcommands.
CEPairTE first_pair(const ReconstructionConfig& rc) {
  const PhaseGrid pg = make_phase_grid(rc.kappa_min, rc.kappa_step,
                                       rc.effective_cap(), rc.n_angles);
  return make_ce_pair_te(pg.phase_point(0, 0), rc.k());
}

int cmd_phantom(const RunArgs& args) {
  const ExperimentConfig cfg = args.resolve();
  const ReconstructionConfig rc = cfg.reconstruction();
  const CartesianGrid grid = make_grid(rc.grid_forward, rc.half_width);
  const RealField2D sigma = sample_phantom(cfg.make_phantom(), grid);
  auto os = open_output(args.out_dir, "sigma.csv");
  write_csv(os, sigma);

  const DiskDomain dom{Vec2::Zero(), rc.radius};
  auto gs = open_output(args.out_dir, "grid.csv");
  write_csv(gs, grid, classify(grid, dom));
  return 0;
}

// One conductive solve with the first probing trace, plus the linearised
// boundary datum it produces.
int cmd_forward(const RunArgs& args) {
  const ExperimentConfig cfg = args.resolve();
  const ReconstructionConfig rc = cfg.reconstruction();
  const CartesianGrid grid = make_grid(rc.grid_forward, rc.half_width);
  const DiskDomain dom{Vec2::Zero(), rc.radius};
  const RealField2D sigma = sample_phantom(cfg.make_phantom(), grid);
  RealField2D zero;
  zero.grid = grid;
  zero.values.assign(grid.num_nodes(), 0.0);

  const HelmholtzOperator op_sigma(grid, dom, rc.omega, rc.eps0, rc.mu0,
                                   sigma);
  const HelmholtzOperator op_zero(grid, dom, rc.omega, rc.eps0, rc.mu0, zero);
  const CEPairTE pair = first_pair(rc);
  const BoundarySampling sampling = make_boundary_sampling(dom, rc.nb);

  const CVec2 zeta = pair.zeta;
  const ComplexField2D field = op_sigma.solve_dirichlet([&](const Vec2& x) {
    return std::exp(I * (zeta(0) * x.x() + zeta(1) * x.y()));
  });
  auto fs = open_output(args.out_dir, "field.csv");
  write_csv(fs, field);

  LinearisedTrace trace = synth_linearised_trace(op_sigma, op_zero, pair,
                                                 sampling);
  if (rc.noise_delta > 0.0) {
    trace = add_noise(trace, sampling,
                      NoiseSpec{rc.noise_delta, rc.noise_seed});
  }
  auto ts = open_output(args.out_dir, "trace.csv");
  write_csv(ts, trace, sampling);
  return 0;
}

int cmd_recover(const RunArgs& args) {
  const ExperimentConfig cfg = args.resolve();
  const ReconstructionConfig rc = cfg.reconstruction();
  const CartesianGrid grid = make_grid(rc.grid_forward, rc.half_width);
  const DiskDomain dom{Vec2::Zero(), rc.radius};
  const RealField2D sigma = sample_phantom(cfg.make_phantom(), grid);
  RealField2D zero;
  zero.grid = grid;
  zero.values.assign(grid.num_nodes(), 0.0);

  const HelmholtzOperator op_sigma(grid, dom, rc.omega, rc.eps0, rc.mu0,
                                   sigma);
  const HelmholtzOperator op_zero(grid, dom, rc.omega, rc.eps0, rc.mu0, zero);
  const BoundarySampling sampling = make_boundary_sampling(dom, rc.nb);
  const PhaseGrid pg = make_phase_grid(rc.kappa_min, rc.kappa_step,
                                       rc.effective_cap(), rc.n_angles);
  const CEPairTE pair = make_ce_pair_te(pg.phase_point(0, 0), rc.k());

  LinearisedTrace trace = synth_linearised_trace(op_sigma, op_zero, pair,
                                                 sampling);
  if (rc.noise_delta > 0.0) {
    trace = add_noise(trace, sampling,
                      NoiseSpec{rc.noise_delta, rc.noise_seed});
  }
  const RecoveredMode mode = recover_mode(trace, pair, sampling, rc.omega,
                                          rc.mu0);

  ModeSet set;
  set.grid.lengths = {pg.lengths[0]};
  set.grid.directions = {pg.directions[0]};
  set.grid.weights = {pg.weight(0, 0)};
  set.grid.kappa_step = pg.kappa_step;
  set.grid.cap = pg.lengths[0];
  set.modes = {mode};
  auto os = open_output(args.out_dir, "modes.csv");
  write_csv(os, set);

  std::cout << "xi=(" << fmt(mode.xi.x()) << "," << fmt(mode.xi.y())
            << ") coefficient=(" << fmt(mode.value.real()) << ","
            << fmt(mode.value.imag()) << ")\n";
  return 0;
}

int cmd_reconstruct(const RunArgs& args) {
  const ExperimentConfig cfg = args.resolve();
  const Algorithm1Result result =
      run_algorithm1(cfg.reconstruction(), cfg.make_phantom());

  auto ms = open_output(args.out_dir, "modes.csv");
  write_csv(ms, result.modes);
  auto rs = open_output(args.out_dir, "reconstruction.csv");
  write_csv(rs, result.recon.field);

  auto os = open_output(args.out_dir, "metrics.csv");
  os << "omega,delta,rel_error,max_imag_residue,runtime_s\n";
  csv_row(os, cfg.omega, cfg.noise_delta, result.rel_error,
          result.recon.max_imag_residue, result.runtime_seconds);

  std::cout << "omega=" << fmt(cfg.omega) << " rel_error="
            << fmt(result.rel_error) << " runtime_s="
            << fmt(result.runtime_seconds) << "\n";
  return 0;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("'" + item + "' in a numeric list is not a number");
    }
  }
  return out;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      const long long v = std::stoll(item, &pos);
      if (pos != item.size() || v < 0) throw std::invalid_argument(item);
      out.push_back(static_cast<std::uint64_t>(v));
    } catch (const std::exception&) {
      throw ConfigError("'" + item + "' in a seed list is not a seed");
    }
  }
  return out;
}

int cmd_sweep(const RunArgs& args, const std::string& deltas_text,
              const std::string& seeds_text) {
  const ExperimentConfig cfg = args.resolve();
  std::vector<double> deltas(std::begin(kDefaultDeltas),
                             std::end(kDefaultDeltas));
  std::vector<std::uint64_t> seeds(std::begin(kDefaultSeeds),
                                   std::end(kDefaultSeeds));
  if (!deltas_text.empty()) deltas = parse_double_list(deltas_text);
  if (!seeds_text.empty()) seeds = parse_seed_list(seeds_text);
  std::sort(deltas.begin(), deltas.end());
  std::sort(seeds.begin(), seeds.end());

  SweepResult sweep = run_noise_sweep(cfg, deltas, seeds);
  std::stable_sort(sweep.rows.begin(), sweep.rows.end(),
                   [](const SweepRow& a, const SweepRow& b) {
                     if (a.omega != b.omega) return a.omega < b.omega;
                     if (a.delta != b.delta) return a.delta < b.delta;
                     return a.seed < b.seed;
                   });
  auto os = open_output(args.out_dir, "sweep.csv");
  write_csv(os, sweep);

  try {
    std::cout << "omega=" << fmt(cfg.omega) << " slope="
              << fmt(fit_slope(sweep, cfg.omega)) << "\n";
  } catch (const InsufficientData&) {
    std::cout << "omega=" << fmt(cfg.omega)
              << " slope=nan (needs three noise levels)\n";
  }
  return 0;
}

struct BoundsArgs {
  std::string evaluator = "te";
  double alpha = 1.0;
  double eps_min = 1e-12;
  double eps_max = 0.1;
  int num = 60;
  double D = 1.4;
  double C2 = 1.0;
};

int cmd_bounds(const RunArgs& args, const BoundsArgs& ba) {
  const ExperimentConfig cfg = args.resolve();
  if (!(ba.eps_min > 0.0) || !(ba.eps_max < 1.0) || ba.eps_min >= ba.eps_max) {
    throw ConfigError("need 0 < eps-min < eps-max < 1");
  }
  if (!(ba.alpha > 0.0) || ba.alpha > 1.0) {
    throw ConfigError("alpha must lie in (0, 1]");
  }
  if (ba.num < 2) throw ConfigError("need at least two sweep points");
  if (!(cfg.omega >= 1.0)) {
    throw ConfigError("bound tables need a wavenumber of at least 1");
  }
  if (ba.evaluator != "te" && ba.evaluator != "maxwell" &&
      ba.evaluator != "ball") {
    throw ConfigError("evaluator must be te, maxwell or ball");
  }

  // Regularity budget from the configured phantom on the inversion grid.
  const CartesianGrid grid = make_grid(cfg.grid_inverse, 0.75);
  const DiskDomain dom{Vec2::Zero(), ba.D / 2.0};
  const double M1 =
      phantom_h1_norm(cfg.make_phantom(), grid, classify(grid, dom));

  StabilityParams p;
  p.k = cfg.omega;
  p.alpha = ba.alpha;
  p.M1 = M1;
  p.D = ba.D;
  p.Vol = std::numbers::pi * ba.D * ba.D * ba.D / 6.0;
  p.Vol2 = std::numbers::pi * ba.D * ba.D / 4.0;
  p.C2 = ba.C2;

  std::vector<StabilityParams> params;
  std::vector<BoundBreakdown> rows;
  const double la = std::log(ba.eps_min);
  const double lb = std::log(ba.eps_max);
  for (int i = 0; i < ba.num; ++i) {
    p.eps = std::exp(la + (lb - la) * i / (ba.num - 1));
    params.push_back(p);
    if (ba.evaluator == "te") {
      rows.push_back(bound_te(p));
    } else if (ba.evaluator == "maxwell") {
      rows.push_back(bound_maxwell(p));
    } else {
      rows.push_back(bound_maxwell_ball(p));
    }
  }
  auto os = open_output(args.out_dir, "bounds.csv");
  write_csv(os, params, rows);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"linearised conductivity imaging from boundary wave data"};
  app.require_subcommand(1);

  RunArgs phantom_args, forward_args, recover_args, reconstruct_args,
      sweep_args, bounds_args;
  std::string deltas_text, seeds_text;
  BoundsArgs bounds_extra;

  CLI::App* phantom =
      app.add_subcommand("phantom", "sample the conductivity on the grid");
  add_run_options(phantom, phantom_args);

  CLI::App* forward = app.add_subcommand(
      "forward", "one conductive solve plus its linearised boundary datum");
  add_run_options(forward, forward_args);

  CLI::App* recover = app.add_subcommand(
      "recover", "recover the Fourier coefficient of the first phase point");
  add_run_options(recover, recover_args);

  CLI::App* reconstruct = app.add_subcommand(
      "reconstruct", "full reconstruction with error metrics");
  add_run_options(reconstruct, reconstruct_args);

  CLI::App* sweep =
      app.add_subcommand("sweep", "noise robustness sweep with slope fit");
  add_run_options(sweep, sweep_args);
  sweep->add_option("--deltas", deltas_text,
                    "comma-separated noise levels (default 0.02..0.4)");
  sweep->add_option("--seeds", seeds_text,
                    "comma-separated seeds (default 1..5)");

  CLI::App* bounds =
      app.add_subcommand("bounds", "stability bound table over a data-error sweep");
  add_run_options(bounds, bounds_args);
  bounds->add_option("--evaluator", bounds_extra.evaluator,
                     "te, maxwell or ball")
      ->capture_default_str();
  bounds->add_option("--alpha", bounds_extra.alpha, "smoothness exponent")
      ->capture_default_str();
  bounds->add_option("--eps-min", bounds_extra.eps_min, "smallest data error")
      ->capture_default_str();
  bounds->add_option("--eps-max", bounds_extra.eps_max, "largest data error")
      ->capture_default_str();
  bounds->add_option("--num", bounds_extra.num, "sweep points")
      ->capture_default_str();
  bounds->add_option("--diameter", bounds_extra.D, "domain diameter")
      ->capture_default_str();
  bounds->add_option("--c2", bounds_extra.C2, "trace constant")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
    if (phantom->parsed()) return cmd_phantom(phantom_args);
    if (forward->parsed()) return cmd_forward(forward_args);
    if (recover->parsed()) return cmd_recover(recover_args);
    if (reconstruct->parsed()) return cmd_reconstruct(reconstruct_args);
    if (sweep->parsed()) return cmd_sweep(sweep_args, deltas_text, seeds_text);
    if (bounds->parsed()) return cmd_bounds(bounds_args, bounds_extra);
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
