// SPDX-License-Identifier: Apache-2.0
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "csdoa/error.hpp"
#include "csdoa/experiments.hpp"

namespace py = pybind11;
using namespace csdoa;

namespace {

void bind_array_model(py::module_& m) {
  py::class_<AngleGrid>(m, "AngleGrid")
      .def_readonly("start_deg", &AngleGrid::start_deg)
      .def_readonly("stop_deg", &AngleGrid::stop_deg)
      .def_readonly("step_deg", &AngleGrid::step_deg)
      .def_readonly("angles_deg", &AngleGrid::angles_deg)
      .def("index_of", &AngleGrid::index_of)
      .def("__len__", &AngleGrid::size);

  py::class_<ArrayGeometry>(m, "ArrayGeometry")
      .def(py::init([](int sensors, double spacing) { return ArrayGeometry{sensors, spacing}; }),
           py::arg("num_sensors") = 15, py::arg("spacing_over_wavelength") = 0.5)
      .def_readwrite("num_sensors", &ArrayGeometry::num_sensors)
      .def_readwrite("spacing_over_wavelength", &ArrayGeometry::spacing_over_wavelength);

  py::enum_<AmplitudeModel>(m, "AmplitudeModel")
      .value("UnitModulusRandomPhase", AmplitudeModel::UnitModulusRandomPhase)
      .value("ComplexGaussian", AmplitudeModel::ComplexGaussian)
      .value("UnitReal", AmplitudeModel::UnitReal);

  py::class_<SourceSet>(m, "SourceSet")
      .def_readonly("doas_deg", &SourceSet::doas_deg)
      .def_readonly("coherent_groups", &SourceSet::coherent_groups)
      .def_readonly("amplitude_model", &SourceSet::amplitude_model);

  py::class_<Snapshot>(m, "Snapshot")
      .def_readonly("data", &Snapshot::data)
      .def_readonly("clean", &Snapshot::clean)
      .def_readonly("noise", &Snapshot::noise)
      .def_readonly("amplitudes", &Snapshot::amplitudes)
      .def_readonly("true_sources", &Snapshot::true_sources)
      .def_readonly("snr_db", &Snapshot::snr_db);

  py::class_<Rng>(m, "Rng").def(py::init<std::uint64_t>(), py::arg("seed"));

  m.def("make_grid", &make_grid, py::arg("start_deg"), py::arg("stop_deg"), py::arg("step_deg"));
  m.def("make_sources", &make_sources, py::arg("doas_deg"),
        py::arg("groups") = std::vector<std::vector<std::size_t>>{},
        py::arg("model") = AmplitudeModel::UnitModulusRandomPhase);
  m.def("steering_vector", &steering_vector, py::arg("theta_deg"), py::arg("geometry"));
  m.def("build_manifold", &build_manifold, py::arg("grid"), py::arg("geometry"));
  m.def("synthesize",
        py::overload_cast<const ArrayGeometry&, const AngleGrid&, const SourceSet&, double, Rng&>(
            &synthesize),
        py::arg("geometry"), py::arg("grid"), py::arg("sources"), py::arg("snr_db"), py::arg("rng"));
}

void bind_sensing(py::module_& m) {
  py::enum_<MeasurementKind>(m, "MeasurementKind")
      .value("ComplexGaussian", MeasurementKind::ComplexGaussian)
      .value("Identity", MeasurementKind::Identity);

  py::class_<MeasurementMatrix>(m, "MeasurementMatrix")
      .def_readonly("entries", &MeasurementMatrix::entries)
      .def_readonly("kind", &MeasurementMatrix::kind)
      .def_readonly("seed", &MeasurementMatrix::seed);

  py::class_<SensingSystem>(m, "SensingSystem")
      .def(py::init<MeasurementMatrix, CMatrix>(), py::arg("phi"), py::arg("manifold"))
      .def_property_readonly("phi", &SensingSystem::phi)
      .def_property_readonly("manifold", &SensingSystem::manifold)
      .def_property_readonly("psi", &SensingSystem::psi)
      .def_property_readonly("column_norms", &SensingSystem::column_norms);

  m.def("min_measurements", &min_measurements, py::arg("sources"), py::arg("signal_len"));
  m.def("draw_measurement_matrix", &draw_measurement_matrix, py::arg("m"), py::arg("n"),
        py::arg("kind"), py::arg("seed"));
  m.def("compress", &compress, py::arg("phi"), py::arg("x"));
}

void bind_recovery(py::module_& m) {
  py::class_<SolverConfig>(m, "SolverConfig")
      .def(py::init([](int sparsity, int max_iterations, double residual_tol) {
             SolverConfig c;
             c.sparsity = sparsity;
             c.max_iterations = max_iterations;
             c.residual_tol = residual_tol;
             return c;
           }),
           py::arg("sparsity") = 1, py::arg("max_iterations") = 50, py::arg("residual_tol") = 1e-6)
      .def_readwrite("sparsity", &SolverConfig::sparsity)
      .def_readwrite("max_iterations", &SolverConfig::max_iterations)
      .def_readwrite("residual_tol", &SolverConfig::residual_tol);

  py::class_<SparseEstimate>(m, "SparseEstimate")
      .def_readonly("coefficients", &SparseEstimate::coefficients)
      .def_readonly("support", &SparseEstimate::support)
      .def_readonly("residual_norm", &SparseEstimate::residual_norm)
      .def_readonly("iterations", &SparseEstimate::iterations)
      .def_readonly("converged", &SparseEstimate::converged)
      .def_readonly("residual_history", &SparseEstimate::residual_history);

  m.def("least_squares", &least_squares, py::arg("basis"), py::arg("y"));
  m.def("correlate", &correlate, py::arg("system"), py::arg("residual"));
  m.def("omp", &omp, py::arg("system"), py::arg("y"), py::arg("config"));
  m.def("cosamp", &cosamp, py::arg("system"), py::arg("y"), py::arg("config"));
  m.def("l0_oracle", &l0_oracle, py::arg("system"), py::arg("y"), py::arg("sparsity"));
}

void bind_spectrum(py::module_& m) {
  py::class_<AngleSpectrum>(m, "AngleSpectrum")
      .def_readonly("grid", &AngleSpectrum::grid)
      .def_readonly("power", &AngleSpectrum::power);
  py::class_<DoaEstimate>(m, "DoaEstimate")
      .def(py::init([](std::vector<double> doas, std::vector<double> powers) {
             return DoaEstimate{std::move(doas), std::move(powers)};
           }),
           py::arg("doas_deg"), py::arg("powers") = std::vector<double>{})
      .def_readonly("doas_deg", &DoaEstimate::doas_deg)
      .def_readonly("powers", &DoaEstimate::powers);
  py::class_<DoaErrors>(m, "DoaErrors")
      .def_readonly("errors_deg", &DoaErrors::errors_deg)
      .def_readonly("misses", &DoaErrors::misses);

  m.def("angle_spectrum", &angle_spectrum, py::arg("estimate"), py::arg("grid"));
  m.def("pick_peaks", &pick_peaks, py::arg("spectrum"), py::arg("count"));
  m.def("trial_error", &trial_error, py::arg("estimated"), py::arg("truth"));
}

void bind_experiments(py::module_& m) {
  py::enum_<Algorithm>(m, "Algorithm").value("Omp", Algorithm::Omp).value("Cosamp", Algorithm::Cosamp);

  py::class_<MeasurementSetup>(m, "MeasurementSetup")
      .def(py::init([](MeasurementKind kind, int count) { return MeasurementSetup{kind, count}; }),
           py::arg("kind"), py::arg("m"))
      .def_readwrite("kind", &MeasurementSetup::kind)
      .def_readwrite("m", &MeasurementSetup::m);

  py::class_<Scenario>(m, "Scenario")
      .def_readwrite("geometry", &Scenario::geometry)
      .def_readwrite("grid", &Scenario::grid)
      .def_readwrite("sources", &Scenario::sources)
      .def_readwrite("snr_db", &Scenario::snr_db)
      .def_readwrite("measurement", &Scenario::measurement)
      .def_readwrite("solver", &Scenario::solver)
      .def_readwrite("algorithms", &Scenario::algorithms)
      .def_readwrite("seed", &Scenario::seed)
      .def("validate", &Scenario::validate);

  py::class_<TrialRecord>(m, "TrialRecord")
      .def_readonly("trial_index", &TrialRecord::trial_index)
      .def_readonly("algorithm", &TrialRecord::algorithm)
      .def_readonly("estimated", &TrialRecord::estimated)
      .def_readonly("errors_deg", &TrialRecord::errors_deg)
      .def_readonly("misses", &TrialRecord::misses)
      .def_readonly("residual_norm", &TrialRecord::residual_norm)
      .def_readonly("iterations", &TrialRecord::iterations)
      .def_readonly("success", &TrialRecord::success)
      .def_readonly("failure", &TrialRecord::failure);

  py::class_<AlgorithmRun>(m, "AlgorithmRun")
      .def_readonly("algorithm", &AlgorithmRun::algorithm)
      .def_readonly("estimate", &AlgorithmRun::estimate)
      .def_readonly("spectrum", &AlgorithmRun::spectrum)
      .def_readonly("doas", &AlgorithmRun::doas)
      .def_readonly("record", &AlgorithmRun::record);

  py::class_<SingleRun>(m, "SingleRun")
      .def_readonly("snapshot", &SingleRun::snapshot)
      .def_readonly("phi", &SingleRun::phi)
      .def_readonly("runs", &SingleRun::runs);

  py::class_<AlgorithmCurve>(m, "AlgorithmCurve")
      .def_readonly("algorithm", &AlgorithmCurve::algorithm)
      .def_readonly("rmse_deg", &AlgorithmCurve::rmse_deg)
      .def_readonly("rmse_success_only_deg", &AlgorithmCurve::rmse_success_only_deg)
      .def_readonly("success_rate", &AlgorithmCurve::success_rate)
      .def_readonly("successes", &AlgorithmCurve::successes);

  py::class_<RmseCurve>(m, "RmseCurve")
      .def_readonly("snr_points_db", &RmseCurve::snr_points_db)
      .def_readonly("trials", &RmseCurve::trials)
      .def_readonly("curves", &RmseCurve::curves)
      .def("curve", &RmseCurve::curve, py::return_value_policy::copy);

  m.def("make_scenario", &make_scenario, py::arg("doas_deg"),
        py::arg("coherent_groups") = std::vector<std::vector<std::size_t>>{},
        py::arg("snr_db") = 0.0, py::arg("seed") = 1);
  m.def("simulation1_scenario", &simulation1_scenario, py::arg("seed") = 1);
  m.def("simulation2_scenario", &simulation2_scenario, py::arg("seed") = 1);
  m.def("simulation3_scenario", &simulation3_scenario, py::arg("seed") = 42);
  m.def("default_measurements", &default_measurements, py::arg("sources"), py::arg("sensors"));
  m.def("trial_seed", &trial_seed, py::arg("base_seed"), py::arg("snr_index"), py::arg("trial"));
  m.def("run_single", &run_single, py::arg("scenario"), py::arg("trial_index") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def("run_monte_carlo", &run_monte_carlo, py::arg("scenario"), py::arg("snr_sweep_db"),
        py::arg("trials"), py::arg("workers") = 1, py::call_guard<py::gil_scoped_release>());
  m.def("make_sweep", &make_sweep, py::arg("lo"), py::arg("hi"), py::arg("step"));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Compressed-sensing DOA estimation core";
  py::register_exception<Error>(m, "CsdoaError", PyExc_ValueError);
  bind_array_model(m);
  bind_sensing(m);
  bind_recovery(m);
  bind_spectrum(m);
  bind_experiments(m);
}
