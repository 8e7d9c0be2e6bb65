#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "maxte/bounds.hpp"
#include "maxte/errors.hpp"
#include "maxte/experiments.hpp"
#include "maxte/phantom.hpp"
#include "maxte/phase_space.hpp"
#include "maxte/reconstruct.hpp"

namespace py = pybind11;
using namespace maxte;

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Linearised conductivity imaging from boundary wave data: complex "
      "plane-wave probes, Fourier-mode recovery, reconstruction and "
      "stability bound evaluation.";
  m.attr("__version__") = "0.1.0";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<PhasePoint2D>(m, "PhasePoint")
      .def_readonly("xi", &PhasePoint2D::xi)
      .def_readonly("kappa", &PhasePoint2D::kappa)
      .def_readonly("e1", &PhasePoint2D::e1)
      .def_readonly("e2", &PhasePoint2D::e2);
  m.def("phase_point", &make_phase_point, py::arg("xi"),
        "Unit frame and length for a nonzero frequency vector.");

  py::class_<CEPairTE>(m, "CEPairTE")
      .def_readonly("zeta", &CEPairTE::zeta)
      .def_readonly("zeta_star", &CEPairTE::zeta_star)
      .def_readonly("k", &CEPairTE::k);
  m.def(
      "ce_pair",
      [](const Vec2& xi, double k) {
        return make_ce_pair_te(make_phase_point(xi), k);
      },
      py::arg("xi"), py::arg("k"),
      "Complex wave-vector pair summing to xi with both members on the "
      "k-dispersion surface.");

  py::class_<CEPair3D>(m, "CEPair3D")
      .def_readonly("zeta", &CEPair3D::zeta)
      .def_readonly("zeta_star", &CEPair3D::zeta_star)
      .def_readonly("a", &CEPair3D::a)
      .def_readonly("b", &CEPair3D::b)
      .def_readonly("a_star", &CEPair3D::a_star)
      .def_readonly("b_star", &CEPair3D::b_star)
      .def_readonly("k", &CEPair3D::k);
  m.def("ce_pair_3d", &make_ce_pair_3d, py::arg("xi"), py::arg("omega"),
        py::arg("eps0") = 1.0, py::arg("mu0") = 1.0,
        "Full electric/magnetic plane-wave pair for an in-plane frequency.");

  py::enum_<PhantomKind>(m, "PhantomKind")
      .value("PaperPeaks", PhantomKind::PaperPeaks)
      .value("GaussBump", PhantomKind::GaussBump)
      .value("Zero", PhantomKind::Zero);
  py::class_<Phantom>(m, "Phantom")
      .def_readonly("kind", &Phantom::kind)
      .def_readonly("scale", &Phantom::scale);
  m.def("phantom", &phantom_from_name, py::arg("name"),
        py::arg("scale") = 1.0,
        "Named conductivity profile: paper_peaks, gauss_bump or zero.");
  m.def("phantom_value", &evaluate_phantom, py::arg("phantom"), py::arg("x"));
  m.def("gauss_bump_ft", &gauss_bump_ft, py::arg("phantom"), py::arg("xi"),
        "Closed-form Fourier coefficient of the Gaussian bump profile.");

  py::class_<StabilityParams>(m, "StabilityParams")
      .def(py::init<>())
      .def_readwrite("eps", &StabilityParams::eps)
      .def_readwrite("k", &StabilityParams::k)
      .def_readwrite("alpha", &StabilityParams::alpha)
      .def_readwrite("M1", &StabilityParams::M1)
      .def_readwrite("D", &StabilityParams::D)
      .def_readwrite("Vol", &StabilityParams::Vol)
      .def_readwrite("Vol2", &StabilityParams::Vol2)
      .def_readwrite("C2", &StabilityParams::C2);
  py::class_<BoundBreakdown>(m, "BoundBreakdown")
      .def_readonly("E_log", &BoundBreakdown::E_log)
      .def_readonly("chi", &BoundBreakdown::chi)
      .def_readonly("term_lipschitz", &BoundBreakdown::term_lipschitz)
      .def_readonly("term_holder", &BoundBreakdown::term_holder)
      .def_readonly("term_log", &BoundBreakdown::term_log)
      .def_readonly("total", &BoundBreakdown::total)
      .def("__repr__", [](const BoundBreakdown& b) {
        std::ostringstream os;
        os << "BoundBreakdown(chi=" << b.chi << ", total=" << b.total << ")";
        return os.str();
      });
  m.def("bound_maxwell", &bound_maxwell, py::arg("params"),
        "Volume-geometry stability bound on the squared conductivity norm.");
  m.def("bound_te", &bound_te, py::arg("params"),
        py::arg("corollary") = false,
        "Planar stability bound; corollary pins the trace constant to 1.");
  m.def("bound_maxwell_ball", &bound_maxwell_ball, py::arg("params"),
        "Ball-geometry bound with the volume factors already substituted.");

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_readwrite("omega", &ExperimentConfig::omega)
      .def_readwrite("kappa_min", &ExperimentConfig::kappa_min)
      .def_readwrite("kappa_step", &ExperimentConfig::kappa_step)
      .def_readwrite("K", &ExperimentConfig::K)
      .def_readwrite("n_angles", &ExperimentConfig::n_angles)
      .def_readwrite("grid_forward", &ExperimentConfig::grid_forward)
      .def_readwrite("grid_inverse", &ExperimentConfig::grid_inverse)
      .def_readwrite("noise_delta", &ExperimentConfig::noise_delta)
      .def_readwrite("seed", &ExperimentConfig::seed)
      .def_readwrite("phantom", &ExperimentConfig::phantom);
  m.def(
      "parse_config",
      [](const std::string& text) {
        std::istringstream is(text);
        return parse_config(is);
      },
      py::arg("text"), "Parse key = value configuration text.");
  m.def("load_config", &load_config, py::arg("path"));
  m.def("apply_override", &apply_override, py::arg("config"), py::arg("key"),
        py::arg("value"));

  m.def(
      "reconstruct",
      [](const ExperimentConfig& cfg) {
        const Algorithm1Result r =
            run_algorithm1(cfg.reconstruction(), cfg.make_phantom());
        py::dict out;
        out["rel_error"] = r.rel_error;
        out["max_imag_residue"] = r.recon.max_imag_residue;
        out["max_abs_real"] = r.recon.max_abs_real;
        out["runtime_seconds"] = r.runtime_seconds;
        py::list modes;
        for (std::size_t l = 0; l < r.modes.grid.num_lengths(); ++l) {
          for (std::size_t s = 0; s < r.modes.grid.num_angles(); ++s) {
            const RecoveredMode& mode =
                r.modes.modes[r.modes.grid.index(l, s)];
            modes.append(py::make_tuple(mode.xi, mode.value));
          }
        }
        out["modes"] = modes;
        out["field"] = r.recon.field.values;
        out["shape"] =
            py::make_tuple(r.recon.field.grid.nx, r.recon.field.grid.ny);
        return out;
      },
      py::arg("config"),
      "Run the full reconstruction and return metrics, recovered modes and "
      "the synthesized field (row-major over grid columns).");

  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("omega", &SweepRow::omega)
      .def_readonly("delta", &SweepRow::delta)
      .def_readonly("seed", &SweepRow::seed)
      .def_readonly("rel_error", &SweepRow::rel_error)
      .def_readonly("max_imag_residue", &SweepRow::max_imag_residue)
      .def_readonly("runtime_seconds", &SweepRow::runtime_seconds);
  py::class_<SweepResult>(m, "SweepResult")
      .def_readonly("rows", &SweepResult::rows);
  m.def("noise_sweep", &run_noise_sweep, py::arg("config"), py::arg("deltas"),
        py::arg("seeds"), py::call_guard<py::gil_scoped_release>());
  m.def("fit_slope", &fit_slope, py::arg("sweep"), py::arg("omega"),
        "Log-log slope of the error against the noise level.");
}
