// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "csdoa/experiments.hpp"
#include "json.hpp"

namespace csdoa {

using Json = nlohmann::ordered_json;

/// Finite values as JSON numbers, +/-inf as the strings "inf"/"-inf", NaN as null.
Json number_to_json(double value);
double number_from_json(const Json& value);

Json scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const Json& json);

Json curve_to_json(const RmseCurve& curve);
Json record_to_json(const TrialRecord& record);

/// Everything needed to rerun a CLI invocation.
struct RunMetadata {
  std::string tool_version;
  std::string command;  // "spectrum", "montecarlo" or "synth"
  Scenario scenario;
  std::vector<double> snr_sweep_db;  // montecarlo only
  int trials = 1;
  int workers = 1;
  double duration_s = 0.0;
  Json summary;
};

Json metadata_to_json(const RunMetadata& meta);
RunMetadata metadata_from_json(const Json& json);

}  // namespace csdoa
