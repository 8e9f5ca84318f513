// SPDX-License-Identifier: Apache-2.0
#include "csdoa/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "csdoa/error.hpp"

namespace csdoa {

namespace {

constexpr std::uint64_t kPhiStream = 1;
constexpr std::uint64_t kSignalStream = 2;

struct Trial {
  Snapshot snapshot;
  MeasurementMatrix phi;
  std::vector<AlgorithmRun> runs;
};

int resolved_measurements(const Scenario& scenario) {
  return scenario.measurement.kind == MeasurementKind::Identity ? scenario.geometry.num_sensors
                                                                : scenario.measurement.m;
}

AlgorithmRun solve_one(Algorithm algorithm, const SensingSystem& system, const CVector& y,
                       const Scenario& scenario, std::uint64_t trial_index) {
  AlgorithmRun run;
  run.algorithm = algorithm;
  run.record.trial_index = trial_index;
  run.record.algorithm = algorithm;
  try {
    run.estimate = algorithm == Algorithm::Omp ? omp(system, y, scenario.solver)
                                               : cosamp(system, y, scenario.solver);
  } catch (const Error& e) {
    run.estimate = SparseEstimate{};
    run.estimate.coefficients = CVector::Zero(system.atoms());
    run.estimate.residual_norm = y.norm();
    run.record.failure = e.what();
  }
  run.spectrum = angle_spectrum(run.estimate, scenario.grid);
  run.doas = pick_peaks(run.spectrum, scenario.solver.sparsity);

  const DoaErrors errors = trial_error(run.doas, scenario.sources);
  run.record.estimated = run.doas;
  run.record.errors_deg = errors.errors_deg;
  run.record.misses = errors.misses;
  run.record.residual_norm = run.estimate.residual_norm;
  run.record.iterations = run.estimate.iterations;
  run.record.converged = run.estimate.converged;
  const double worst = errors.errors_deg.empty()
                           ? 0.0
                           : *std::max_element(errors.errors_deg.begin(), errors.errors_deg.end());
  run.record.success = run.record.failure.empty() && worst < scenario.grid.step_deg;
  return run;
}

Trial run_trial(const Scenario& scenario, const CMatrix& manifold, double snr_db,
                std::uint64_t seed, std::uint64_t trial_index) {
  Trial trial;
  trial.snapshot = trial_snapshot(scenario, snr_db, seed);
  trial.phi = trial_measurement(scenario, seed);
  const SensingSystem system(trial.phi, manifold);
  const CVector y = compress(trial.phi, trial.snapshot.data);
  for (Algorithm algorithm : scenario.algorithms) {
    trial.runs.push_back(solve_one(algorithm, system, y, scenario, trial_index));
  }
  return trial;
}

}  // namespace

Snapshot trial_snapshot(const Scenario& scenario, double snr_db, std::uint64_t seed) {
  Rng rng(derive_seed(seed, kSignalStream));
  return synthesize(scenario.geometry, scenario.grid, scenario.sources, snr_db, rng);
}

MeasurementMatrix trial_measurement(const Scenario& scenario, std::uint64_t seed) {
  return draw_measurement_matrix(resolved_measurements(scenario), scenario.geometry.num_sensors,
                                 scenario.measurement.kind, derive_seed(seed, kPhiStream));
}

namespace {

template <typename Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
  const auto threads = static_cast<std::size_t>(std::max(1, workers));
  if (threads == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < std::min(threads, count); ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          const std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::string_view to_string(Algorithm algorithm) {
  return algorithm == Algorithm::Omp ? "omp" : "cosamp";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "omp") return Algorithm::Omp;
  if (name == "cosamp") return Algorithm::Cosamp;
  throw Error(ErrorCode::InvalidArgument, "unknown algorithm '" + std::string(name) + "'");
}

void Scenario::validate() const {
  geometry.validate();
  sources.validate();
  solver.validate();
  if (grid.angles_deg.empty()) throw Error(ErrorCode::EmptyGrid, "scenario grid is empty");
  for (double doa : sources.doas_deg) {
    if (!grid.index_of(doa)) {
      throw Error(ErrorCode::OffGridSource,
                  "source at " + std::to_string(doa) + " deg is not a grid point");
    }
  }
  if (algorithms.empty()) throw Error(ErrorCode::InvalidArgument, "no algorithm selected");
  const int m = resolved_measurements(*this);
  if (measurement.kind == MeasurementKind::ComplexGaussian &&
      (m < 1 || m > geometry.num_sensors)) {
    throw Error(ErrorCode::InvalidArgument, "measurement count must lie in [1, sensors], got " +
                                                std::to_string(m));
  }
  if (measurement.kind == MeasurementKind::Identity && measurement.m != 0 &&
      measurement.m != geometry.num_sensors) {
    throw Error(ErrorCode::DimensionMismatch, "identity measurement needs m equal to the sensor count");
  }
  for (Algorithm a : algorithms) {
    if (a == Algorithm::Omp && solver.sparsity > m) {
      throw Error(ErrorCode::InvalidArgument, "OMP sparsity exceeds the measurement count");
    }
    if (a == Algorithm::Cosamp && 2 * solver.sparsity > m) {
      throw Error(ErrorCode::InvalidArgument, "CoSaMP needs 2 * sparsity <= measurements");
    }
  }
}

int default_measurements(int sources, int sensors) { return min_measurements(sources, sensors) + 1; }

Scenario make_scenario(std::vector<double> doas_deg,
                       std::vector<std::vector<std::size_t>> coherent_groups, double snr_db,
                       std::uint64_t seed) {
  Scenario s;
  s.grid = make_grid(-90.0, 90.0, 1.0);
  s.sources = make_sources(std::move(doas_deg), std::move(coherent_groups));
  s.snr_db = snr_db;
  const int count = static_cast<int>(s.sources.size());
  s.measurement = {MeasurementKind::ComplexGaussian,
                   default_measurements(count, s.geometry.num_sensors)};
  s.solver.sparsity = count;
  s.seed = seed;
  return s;
}

Scenario simulation1_scenario(std::uint64_t seed) {
  return make_scenario({-60.0, 0.0, 40.0}, {}, 0.0, seed);
}

Scenario simulation2_scenario(std::uint64_t seed) {
  return make_scenario({-60.0, 0.0, 40.0}, {{1, 2}}, 0.0, seed);
}

Scenario simulation3_scenario(std::uint64_t seed) {
  return make_scenario({-60.0, 60.0}, {}, 0.0, seed);
}

Snapshot synthesize(const Scenario& scenario, Rng& rng) {
  return synthesize(scenario.geometry, scenario.grid, scenario.sources, scenario.snr_db, rng);
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t snr_index, std::uint64_t trial) {
  return derive_seed(derive_seed(base_seed, snr_index), trial);
}

SingleRun run_single(const Scenario& scenario, std::uint64_t trial_index) {
  scenario.validate();
  const CMatrix manifold = build_manifold(scenario.grid, scenario.geometry);
  Trial trial = run_trial(scenario, manifold, scenario.snr_db, scenario.seed, trial_index);
  return SingleRun{std::move(trial.snapshot), std::move(trial.phi), std::move(trial.runs)};
}

const AlgorithmCurve& RmseCurve::curve(Algorithm algorithm) const {
  for (const auto& c : curves) {
    if (c.algorithm == algorithm) return c;
  }
  throw Error(ErrorCode::InvalidArgument,
              "no curve for algorithm " + std::string(to_string(algorithm)));
}

RmseCurve run_monte_carlo(const Scenario& scenario, const std::vector<double>& snr_sweep_db,
                          int trials, int workers) {
  scenario.validate();
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trial count must be positive");
  if (snr_sweep_db.empty()) throw Error(ErrorCode::InvalidArgument, "SNR sweep is empty");

  const CMatrix manifold = build_manifold(scenario.grid, scenario.geometry);
  const auto per_point = static_cast<std::size_t>(trials);
  const std::size_t total = snr_sweep_db.size() * per_point;
  const std::size_t algos = scenario.algorithms.size();
  std::vector<TrialRecord> records(total * algos);

  parallel_for(total, workers, [&](std::size_t flat) {
    const std::size_t point = flat / per_point;
    const std::uint64_t t = flat % per_point;
    Trial trial = run_trial(scenario, manifold, snr_sweep_db[point],
                            trial_seed(scenario.seed, point, t), t);
    for (std::size_t a = 0; a < algos; ++a) records[flat * algos + a] = std::move(trial.runs[a].record);
  });

  RmseCurve curve;
  curve.snr_points_db = snr_sweep_db;
  curve.trials = trials;
  for (std::size_t a = 0; a < algos; ++a) {
    AlgorithmCurve c;
    c.algorithm = scenario.algorithms[a];
    for (std::size_t point = 0; point < snr_sweep_db.size(); ++point) {
      double sum_sq = 0.0;
      double success_sq = 0.0;
      std::size_t terms = 0;
      std::size_t success_terms = 0;
      int successes = 0;
      for (std::size_t t = 0; t < per_point; ++t) {
        const TrialRecord& r = records[(point * per_point + t) * algos + a];
        for (double e : r.errors_deg) {
          sum_sq += e * e;
          ++terms;
          if (r.success) {
            success_sq += e * e;
            ++success_terms;
          }
        }
        if (r.success) ++successes;
      }
      c.rmse_deg.push_back(terms ? std::sqrt(sum_sq / static_cast<double>(terms)) : 0.0);
      c.rmse_success_only_deg.push_back(
          success_terms ? std::sqrt(success_sq / static_cast<double>(success_terms))
                        : std::numeric_limits<double>::quiet_NaN());
      c.success_rate.push_back(static_cast<double>(successes) / static_cast<double>(trials));
      c.successes.push_back(successes);
    }
    curve.curves.push_back(std::move(c));
  }
  return curve;
}

std::vector<double> make_sweep(double lo, double hi, double step) {
  if (!(step > 0.0)) throw Error(ErrorCode::NonPositiveStep, "sweep step must be positive");
  if (!(lo <= hi)) throw Error(ErrorCode::EmptyGrid, "sweep start exceeds stop");
  std::vector<double> points;
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  for (std::size_t i = 0; i < count; ++i) points.push_back(lo + static_cast<double>(i) * step);
  return points;
}

}  // namespace csdoa
