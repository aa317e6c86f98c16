#include <array>
#include <complex>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "coopem/dynamics.hpp"
#include "coopem/errors.hpp"
#include "coopem/geometry.hpp"
#include "coopem/kernels.hpp"
#include "coopem/modes.hpp"
#include "coopem/scenario.hpp"
#include "coopem/spectrum.hpp"
#include "coopem/version.hpp"

namespace py = pybind11;
using namespace coopem;

namespace {

using Triple = std::array<double, 3>;

Vec3 to_vec3(const Triple& a) { return {a[0], a[1], a[2]}; }
Triple from_vec3(Vec3 v) { return {v.x, v.y, v.z}; }

} // namespace

PYBIND11_MODULE(_coopem, m) {
    m.doc() = "Collective spontaneous emission of small two-level-atom arrays";
    m.attr("__version__") = version;

    py::register_exception<validation_error>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<consistency_error>(m, "ConsistencyError", PyExc_RuntimeError);

    // geometry
    py::class_<AtomConfig>(m, "AtomConfig")
        .def(py::init([](const std::vector<Triple>& positions, const Triple& dipole) {
                 std::vector<Vec3> pos;
                 pos.reserve(positions.size());
                 for (const auto& p : positions) pos.push_back(to_vec3(p));
                 return AtomConfig(std::move(pos), to_vec3(dipole));
             }),
             py::arg("positions"), py::arg("dipole"))
        .def_property_readonly("positions",
                               [](const AtomConfig& c) {
                                   std::vector<Triple> out;
                                   for (const auto& p : c.positions())
                                       out.push_back(from_vec3(p));
                                   return out;
                               })
        .def_property_readonly("dipole",
                               [](const AtomConfig& c) { return from_vec3(c.dipole()); })
        .def_property_readonly("n_atoms", &AtomConfig::size);

    py::class_<PairGeometry>(m, "PairGeometry")
        .def_readonly("m", &PairGeometry::m)
        .def_readonly("n", &PairGeometry::n)
        .def_readonly("x", &PairGeometry::x)
        .def_readonly("eta", &PairGeometry::eta)
        .def("__repr__", [](const PairGeometry& p) {
            return "PairGeometry(m=" + std::to_string(p.m) + ", n=" + std::to_string(p.n) +
                   ", x=" + std::to_string(p.x) + ", eta=" + std::to_string(p.eta) + ")";
        });

    m.def("build_pair_geometry", &build_pair_geometry, py::arg("config"));
    m.def("equilateral_config", &equilateral_config, py::arg("side"));
    m.def("collinear_config", &collinear_config, py::arg("x12"), py::arg("x23"), py::arg("eta"));

    // kernels
    m.def("kernel_D", &kernel_D, py::arg("x"), py::arg("eta"));
    m.def("kernel_P", &kernel_P, py::arg("x"), py::arg("eta"));

    // modes
    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init([](double gamma_eg, double delta_eg) {
                 return ModelParams{gamma_eg, delta_eg};
             }),
             py::arg("gamma_eg") = 1.0, py::arg("delta_eg") = 0.0)
        .def_readwrite("gamma_eg", &ModelParams::gamma_eg)
        .def_readwrite("delta_eg", &ModelParams::delta_eg);

    py::class_<CouplingMatrix>(m, "CouplingMatrix")
        .def(py::init<Eigen::MatrixXcd, ModelParams>(), py::arg("entries"), py::arg("params"))
        .def_property_readonly("entries",
                               [](const CouplingMatrix& g) { return g.entries(); })
        .def_property_readonly("n_atoms", &CouplingMatrix::size);

    py::class_<ModeSet>(m, "ModeSet")
        .def_readonly("eigenvalues", &ModeSet::eigenvalues)
        .def_readonly("eigenvectors", &ModeSet::eigenvectors)
        .def_readonly("rates", &ModeSet::rates)
        .def_readonly("shifts", &ModeSet::shifts)
        .def_readonly("degeneracy_groups", &ModeSet::degeneracy_groups);

    m.def("build_coupling_matrix", &build_coupling_matrix, py::arg("config"), py::arg("params"));
    m.def("eigenmodes_analytic", &eigenmodes_analytic, py::arg("matrix"));
    m.def("eigenmodes_numeric", &eigenmodes_numeric, py::arg("matrix"));
    m.def("eigenvectors", &eigenvectors, py::arg("matrix"), py::arg("eigenvalues"));

    py::class_<EquilateralModes>(m, "EquilateralModes")
        .def_readonly("rate_symmetric", &EquilateralModes::rate_symmetric)
        .def_readonly("rate_asymmetric", &EquilateralModes::rate_asymmetric)
        .def_readonly("shift_symmetric", &EquilateralModes::shift_symmetric)
        .def_readonly("shift_asymmetric", &EquilateralModes::shift_asymmetric)
        .def_readonly("splitting", &EquilateralModes::splitting);

    m.def("equilateral_closed_form", &equilateral_closed_form, py::arg("side"),
          py::arg("params") = ModelParams{});

    py::class_<ScanResult>(m, "ScanResult")
        .def_readonly("axis_name", &ScanResult::axis_name)
        .def_readonly("axis", &ScanResult::axis)
        .def_readonly("columns", &ScanResult::columns)
        .def_readonly("rows", &ScanResult::rows);

    m.def("line_scan", &line_scan, py::arg("x12"), py::arg("x23_grid"), py::arg("eta"),
          py::arg("params") = ModelParams{});

    // dynamics
    py::class_<InitialState>(m, "InitialState")
        .def(py::init([](const Eigen::VectorXcd& c) {
                 return InitialState::from_unnormalized(c);
             }),
             py::arg("amplitudes"))
        .def_static("excited_atom", &InitialState::excited_atom, py::arg("n_atoms"),
                    py::arg("index"))
        .def_static("dicke", &InitialState::dicke, py::arg("n_atoms"))
        .def_property_readonly("amplitudes",
                               [](const InitialState& s) { return s.amplitudes(); });

    py::class_<ModeDecomposition>(m, "ModeDecomposition")
        .def(py::init([](const Eigen::VectorXcd& a) { return ModeDecomposition{a}; }),
             py::arg("coefficients"))
        .def_readonly("coefficients", &ModeDecomposition::coefficients);

    m.def("decompose_initial", &decompose_initial, py::arg("modes"), py::arg("state"));

    py::class_<AmplitudeTrajectory>(m, "AmplitudeTrajectory")
        .def_readonly("times", &AmplitudeTrajectory::times)
        .def_readonly("amplitudes", &AmplitudeTrajectory::amplitudes)
        .def_readonly("survival", &AmplitudeTrajectory::survival);

    m.def("evolve", &evolve, py::arg("modes"), py::arg("decomposition"), py::arg("times"));
    m.def("time_grid", &time_grid, py::arg("t_max"), py::arg("steps"));

    // spectrum
    py::class_<DetuningGrid>(m, "DetuningGrid")
        .def(py::init<std::vector<double>>(), py::arg("values"))
        .def_static("linspace", &DetuningGrid::linspace, py::arg("lo"), py::arg("hi"),
                    py::arg("points"))
        .def_property_readonly("values",
                               [](const DetuningGrid& g) { return g.values(); });

    py::class_<SpectrumSeries>(m, "SpectrumSeries")
        .def_property_readonly("grid", [](const SpectrumSeries& s) { return s.grid; })
        .def_readonly("values", &SpectrumSeries::values)
        .def_property_readonly("peak_normalized", [](const SpectrumSeries& s) {
            return s.normalization == Normalization::peak_one;
        });

    py::class_<DetectorDirection>(m, "DetectorDirection")
        .def(py::init([](const Triple& v) { return DetectorDirection(to_vec3(v)); }),
             py::arg("direction"))
        .def_static("from_angles", &DetectorDirection::from_angles, py::arg("theta"),
                    py::arg("phi"));

    m.def("mode_lineshape", &mode_lineshape, py::arg("modes"), py::arg("decomposition"),
          py::arg("atom"), py::arg("delta"));
    m.def("pair_weight", &pair_weight, py::arg("x"), py::arg("theta"));
    m.def("pair_weight_same_atom", &pair_weight_same_atom);
    m.def("total_spectrum", &total_spectrum, py::arg("config"), py::arg("modes"),
          py::arg("decomposition"), py::arg("grid"));
    m.def("directional_spectrum", &directional_spectrum, py::arg("config"), py::arg("modes"),
          py::arg("decomposition"), py::arg("direction"), py::arg("grid"));
    m.def("quadrature_total_spectrum", &quadrature_total_spectrum, py::arg("config"),
          py::arg("modes"), py::arg("decomposition"), py::arg("grid"), py::arg("order"));
    m.def("normalize_peak", &normalize_peak, py::arg("series"));

    py::class_<Peak>(m, "Peak")
        .def_readonly("position", &Peak::position)
        .def_readonly("height", &Peak::height)
        .def_readonly("fwhm", &Peak::fwhm)
        .def("__repr__", [](const Peak& p) {
            return "Peak(position=" + std::to_string(p.position) +
                   ", height=" + std::to_string(p.height) + ", fwhm=" + std::to_string(p.fwhm) +
                   ")";
        });

    m.def("find_peaks", &find_peaks, py::arg("series"));

    // scenario IO
    py::class_<Scenario>(m, "Scenario")
        .def_property_readonly("config", [](const Scenario& s) { return s.config; })
        .def_property_readonly("params", [](const Scenario& s) { return s.params; })
        .def_property_readonly("initial", [](const Scenario& s) { return s.initial; })
        .def_readonly("initial_name", &Scenario::initial_name);

    m.def("parse_scenario", &parse_scenario, py::arg("json_text"));
    m.def("scenario_to_json",
          [](const Scenario& s) { return scenario_to_json(s).dump(2); }, py::arg("scenario"));
    m.def("initial_preset", &initial_preset, py::arg("name"), py::arg("n_atoms"));
    m.def("reproduce", &reproduce, py::arg("figure"), py::arg("out_dir"));
}
