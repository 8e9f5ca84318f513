// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "csdoa/array_model.hpp"
#include "csdoa/recovery.hpp"
#include "csdoa/sensing.hpp"
#include "csdoa/spectrum.hpp"

namespace csdoa {

enum class Algorithm { Omp, Cosamp };

std::string_view to_string(Algorithm algorithm);
Algorithm parse_algorithm(std::string_view name);

struct MeasurementSetup {
  MeasurementKind kind = MeasurementKind::ComplexGaussian;
  int m = 0;
};

struct Scenario {
  ArrayGeometry geometry;
  AngleGrid grid;
  SourceSet sources;
  double snr_db = 0.0;  // kNoiseless disables noise
  MeasurementSetup measurement;
  SolverConfig solver;
  std::vector<Algorithm> algorithms{Algorithm::Omp, Algorithm::Cosamp};
  std::uint64_t seed = 1;

  void validate() const;
};

/// min_measurements(M, N) + 1.
int default_measurements(int sources, int sensors);

/// Scenario with the standard 15-sensor half-wavelength ULA, the -90:90:1
/// grid, sparsity = source count and m = default_measurements.
Scenario make_scenario(std::vector<double> doas_deg,
                       std::vector<std::vector<std::size_t>> coherent_groups = {},
                       double snr_db = 0.0, std::uint64_t seed = 1);

/// Three non-coherent sources at -60, 0, 40 deg, 0 dB.
Scenario simulation1_scenario(std::uint64_t seed = 1);
/// As simulation 1 with the 0 and 40 deg sources coherent.
Scenario simulation2_scenario(std::uint64_t seed = 1);
/// Two sources at -60 and 60 deg.
Scenario simulation3_scenario(std::uint64_t seed = 42);

Snapshot synthesize(const Scenario& scenario, Rng& rng);

struct TrialRecord {
  std::uint64_t trial_index = 0;
  Algorithm algorithm = Algorithm::Omp;
  DoaEstimate estimated;
  std::vector<double> errors_deg;
  int misses = 0;
  double residual_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  bool success = false;  // every error below the grid step
  std::string failure;   // solver error message, empty on a normal run
};

struct AlgorithmRun {
  Algorithm algorithm = Algorithm::Omp;
  SparseEstimate estimate;
  AngleSpectrum spectrum;
  DoaEstimate doas;
  TrialRecord record;
};

struct SingleRun {
  Snapshot snapshot;
  MeasurementMatrix phi;
  std::vector<AlgorithmRun> runs;  // one per scenario.algorithms entry
};

/// Seed of trial `trial` at sweep point `snr_index`.
std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t snr_index, std::uint64_t trial);

/// The snapshot and measurement matrix a run with `seed` draws. Each comes from
/// its own child stream of `seed`.
Snapshot trial_snapshot(const Scenario& scenario, double snr_db, std::uint64_t seed);
MeasurementMatrix trial_measurement(const Scenario& scenario, std::uint64_t seed);

/// synthesize -> compress -> solve -> spectrum -> peaks, fully determined by
/// scenario.seed. Solver errors become unsuccessful records.
SingleRun run_single(const Scenario& scenario, std::uint64_t trial_index = 0);

struct AlgorithmCurve {
  Algorithm algorithm = Algorithm::Omp;
  std::vector<double> rmse_deg;
  std::vector<double> rmse_success_only_deg;  // NaN where no trial succeeded
  std::vector<double> success_rate;
  std::vector<int> successes;
};

struct RmseCurve {
  std::vector<double> snr_points_db;
  int trials = 0;
  std::vector<AlgorithmCurve> curves;

  const AlgorithmCurve& curve(Algorithm algorithm) const;
};

/// `trials` independent runs per SNR point, trial t at point i seeded with
/// trial_seed(scenario.seed, i, t). Trials run on up to `workers` threads;
/// reduction is in trial order so the result does not depend on `workers`.
RmseCurve run_monte_carlo(const Scenario& scenario, const std::vector<double>& snr_sweep_db,
                          int trials, int workers = 1);

/// lo, lo + step, ... up to hi inclusive.
std::vector<double> make_sweep(double lo, double hi, double step);

}  // namespace csdoa
