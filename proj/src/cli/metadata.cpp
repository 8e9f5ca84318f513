// SPDX-License-Identifier: Apache-2.0
#include "csdoa/metadata.hpp"

#include <cmath>
#include <limits>

#include "csdoa/error.hpp"

namespace csdoa {

namespace {

std::string amplitude_name(AmplitudeModel model) {
  switch (model) {
    case AmplitudeModel::UnitModulusRandomPhase: return "unit_modulus_random_phase";
    case AmplitudeModel::ComplexGaussian: return "complex_gaussian";
    case AmplitudeModel::UnitReal: return "unit_real";
  }
  return "unit_modulus_random_phase";
}

AmplitudeModel amplitude_from_name(const std::string& name) {
  if (name == "unit_modulus_random_phase") return AmplitudeModel::UnitModulusRandomPhase;
  if (name == "complex_gaussian") return AmplitudeModel::ComplexGaussian;
  if (name == "unit_real") return AmplitudeModel::UnitReal;
  throw Error(ErrorCode::InvalidArgument, "unknown amplitude model '" + name + "'");
}

std::vector<double> numbers_from_json(const Json& array) {
  std::vector<double> out;
  for (const auto& v : array) out.push_back(number_from_json(v));
  return out;
}

Json numbers_to_json(const std::vector<double>& values) {
  Json out = Json::array();
  for (double v : values) out.push_back(number_to_json(v));
  return out;
}

}  // namespace

Json number_to_json(double value) {
  if (std::isnan(value)) return nullptr;
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return value;
}

double number_from_json(const Json& value) {
  if (value.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (value.is_string()) {
    const auto s = value.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw Error(ErrorCode::InvalidArgument, "expected a number, got '" + s + "'");
  }
  return value.get<double>();
}

Json scenario_to_json(const Scenario& s) {
  Json groups = Json::array();
  for (const auto& g : s.sources.coherent_groups) groups.push_back(g);
  Json algorithms = Json::array();
  for (Algorithm a : s.algorithms) algorithms.push_back(std::string(to_string(a)));
  return Json{
      {"geometry",
       {{"num_sensors", s.geometry.num_sensors},
        {"spacing_over_wavelength", s.geometry.spacing_over_wavelength}}},
      {"grid",
       {{"start_deg", s.grid.start_deg}, {"stop_deg", s.grid.stop_deg}, {"step_deg", s.grid.step_deg}}},
      {"sources",
       {{"doas_deg", s.sources.doas_deg},
        {"coherent_groups", groups},
        {"amplitude_model", amplitude_name(s.sources.amplitude_model)}}},
      {"snr_db", number_to_json(s.snr_db)},
      {"measurement",
       {{"kind", s.measurement.kind == MeasurementKind::Identity ? "identity" : "gaussian"},
        {"m", s.measurement.m}}},
      {"solver",
       {{"sparsity", s.solver.sparsity},
        {"max_iterations", s.solver.max_iterations},
        {"residual_tol", s.solver.residual_tol},
        {"tie_break", "lowest_index"}}},
      {"algorithms", algorithms},
      {"seed", s.seed},
  };
}

Scenario scenario_from_json(const Json& j) {
  try {
    Scenario s;
    s.geometry.num_sensors = j.at("geometry").at("num_sensors").get<int>();
    s.geometry.spacing_over_wavelength = j.at("geometry").at("spacing_over_wavelength").get<double>();
    const auto& g = j.at("grid");
    s.grid = make_grid(g.at("start_deg").get<double>(), g.at("stop_deg").get<double>(),
                       g.at("step_deg").get<double>());
    const auto& src = j.at("sources");
    s.sources.doas_deg = src.at("doas_deg").get<std::vector<double>>();
    s.sources.coherent_groups = src.at("coherent_groups").get<std::vector<std::vector<std::size_t>>>();
    s.sources.amplitude_model = amplitude_from_name(src.at("amplitude_model").get<std::string>());
    s.snr_db = number_from_json(j.at("snr_db"));
    const auto& meas = j.at("measurement");
    const auto kind = meas.at("kind").get<std::string>();
    if (kind != "identity" && kind != "gaussian") {
      throw Error(ErrorCode::InvalidArgument, "unknown measurement kind '" + kind + "'");
    }
    s.measurement.kind = kind == "identity" ? MeasurementKind::Identity : MeasurementKind::ComplexGaussian;
    s.measurement.m = meas.at("m").get<int>();
    const auto& solver = j.at("solver");
    s.solver.sparsity = solver.at("sparsity").get<int>();
    s.solver.max_iterations = solver.at("max_iterations").get<int>();
    s.solver.residual_tol = solver.at("residual_tol").get<double>();
    s.algorithms.clear();
    for (const auto& a : j.at("algorithms")) s.algorithms.push_back(parse_algorithm(a.get<std::string>()));
    s.seed = j.at("seed").get<std::uint64_t>();
    s.sources.validate();
    return s;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed scenario: ") + e.what());
  }
}

Json record_to_json(const TrialRecord& r) {
  return Json{
      {"doas_deg", numbers_to_json(r.estimated.doas_deg)},
      {"powers", numbers_to_json(r.estimated.powers)},
      {"errors_deg", numbers_to_json(r.errors_deg)},
      {"misses", r.misses},
      {"success", r.success},
      {"residual_norm", number_to_json(r.residual_norm)},
      {"iterations", r.iterations},
      {"converged", r.converged},
      {"failure", r.failure},
  };
}

Json curve_to_json(const RmseCurve& curve) {
  Json out = Json::object();
  for (const auto& c : curve.curves) {
    out[std::string(to_string(c.algorithm))] = Json{
        {"rmse_deg", numbers_to_json(c.rmse_deg)},
        {"rmse_success_only_deg", numbers_to_json(c.rmse_success_only_deg)},
        {"success_rate", numbers_to_json(c.success_rate)},
        {"successes", c.successes},
    };
  }
  return out;
}

Json metadata_to_json(const RunMetadata& meta) {
  const bool identity = meta.scenario.measurement.kind == MeasurementKind::Identity;
  Json j{
      {"tool", "csdoa"},
      {"version", meta.tool_version},
      {"command", meta.command},
      {"scenario", scenario_to_json(meta.scenario)},
      {"compression", identity ? "none (identity measurement matrix)"
                               : "complex Gaussian measurement matrix, redrawn per trial"},
      {"seed_scheme",
       "trial seed = derive(derive(seed, snr_index), trial); phi and signal use child "
       "streams 1 and 2; spectrum/synth use seed directly"},
  };
  if (meta.command == "montecarlo") {
    j["snr_sweep_db"] = numbers_to_json(meta.snr_sweep_db);
    j["trials"] = meta.trials;
  }
  j["workers"] = meta.workers;
  j["duration_s"] = meta.duration_s;
  j["summary"] = meta.summary;
  return j;
}

RunMetadata metadata_from_json(const Json& j) {
  try {
    RunMetadata meta;
    meta.tool_version = j.value("version", "");
    meta.command = j.at("command").get<std::string>();
    meta.scenario = scenario_from_json(j.at("scenario"));
    if (j.contains("snr_sweep_db")) meta.snr_sweep_db = numbers_from_json(j.at("snr_sweep_db"));
    meta.trials = j.value("trials", 1);
    meta.workers = j.value("workers", 1);
    return meta;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed metadata: ") + e.what());
  }
}

}  // namespace csdoa
