// SPDX-License-Identifier: Apache-2.0
#include "csdoa/cli.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "csdoa/error.hpp"
#include "csdoa/experiments.hpp"
#include "csdoa/metadata.hpp"

#ifndef CSDOA_VERSION
#define CSDOA_VERSION "0.0.0"
#endif

namespace csdoa::cli {

namespace fs = std::filesystem;

namespace {

// Raised for anything the user got wrong; maps to exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  int sensors = 15;
  double spacing = 0.5;
  std::string grid = "-90:90:1";
  std::string sources;
  std::vector<std::string> coherent;
  double snr_db = 0.0;
  std::string noise = "on";
  std::string phi = "gaussian";
  std::optional<int> measurements;
  std::string algo = "omp,cosamp";
  std::optional<int> sparsity;
  std::string amplitude = "unit-phase";
  int max_iterations = 50;
  double residual_tol = 1e-6;
  int trials = 1000;
  std::string snr_sweep = "-10:20:5";
  std::uint64_t seed = 1;
  std::string out = ".";
  std::optional<int> workers;
  std::string from_meta;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

double parse_double(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError("invalid number '" + text + "' in " + what);
  }
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> values;
  for (const auto& part : split(text, ',')) values.push_back(parse_double(part, what));
  if (values.empty()) throw UsageError(what + " is empty");
  return values;
}

std::array<double, 3> parse_range(const std::string& text, const std::string& what) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw UsageError(what + " must be lo:hi:step, got '" + text + "'");
  return {parse_double(parts[0], what), parse_double(parts[1], what), parse_double(parts[2], what)};
}

std::vector<Algorithm> parse_algorithms(const std::string& text) {
  bool omp = false;
  bool cosamp = false;
  for (const auto& name : split(text, ',')) {
    if (name == "omp") omp = true;
    else if (name == "cosamp") cosamp = true;
    else throw UsageError("unknown algorithm '" + name + "' (expected omp or cosamp)");
  }
  std::vector<Algorithm> out;
  if (omp) out.push_back(Algorithm::Omp);
  if (cosamp) out.push_back(Algorithm::Cosamp);
  if (out.empty()) throw UsageError("--algo selects no algorithm");
  return out;
}

Scenario scenario_from_options(const Options& o) {
  if (o.sources.empty()) throw UsageError("--sources is required");
  Scenario s;
  s.geometry.num_sensors = o.sensors;
  s.geometry.spacing_over_wavelength = o.spacing;
  const auto g = parse_range(o.grid, "--grid");
  s.grid = make_grid(g[0], g[1], g[2]);

  std::vector<std::vector<std::size_t>> groups;
  for (const auto& spec : o.coherent) {
    std::vector<std::size_t> group;
    for (double idx : parse_list(spec, "--coherent")) {
      if (idx < 1 || idx != std::floor(idx)) {
        throw UsageError("--coherent takes 1-based source indices, got '" + spec + "'");
      }
      group.push_back(static_cast<std::size_t>(idx) - 1);
    }
    groups.push_back(std::move(group));
  }
  AmplitudeModel model = AmplitudeModel::UnitModulusRandomPhase;
  if (o.amplitude == "gaussian") model = AmplitudeModel::ComplexGaussian;
  else if (o.amplitude == "unit") model = AmplitudeModel::UnitReal;
  s.sources = make_sources(parse_list(o.sources, "--sources"), std::move(groups), model);

  s.snr_db = o.noise == "off" ? kNoiseless : o.snr_db;
  const int count = static_cast<int>(s.sources.size());
  if (o.phi == "identity") {
    if (o.measurements && *o.measurements != o.sensors) {
      throw UsageError("--phi identity needs --measurements equal to --sensors");
    }
    s.measurement = {MeasurementKind::Identity, o.sensors};
  } else {
    s.geometry.validate();
    s.measurement = {MeasurementKind::ComplexGaussian,
                     o.measurements.value_or(default_measurements(count, o.sensors))};
  }
  s.solver.sparsity = o.sparsity.value_or(count);
  s.solver.max_iterations = o.max_iterations;
  s.solver.residual_tol = o.residual_tol;
  s.algorithms = parse_algorithms(o.algo);
  s.seed = o.seed;
  s.validate();
  return s;
}

void add_scenario_options(CLI::App* sub, Options& o) {
  sub->add_option("--sensors", o.sensors, "Number of ULA sensors")->capture_default_str();
  sub->add_option("--spacing", o.spacing, "Sensor spacing in wavelengths")->capture_default_str();
  sub->add_option("--grid", o.grid, "Scan grid lo:hi:step in degrees")->capture_default_str();
  sub->add_option("--sources", o.sources, "Comma-separated source DOAs in degrees");
  sub->add_option("--coherent", o.coherent, "Comma-separated 1-based indices of one coherent group (repeatable)");
  sub->add_option("--snr-db", o.snr_db, "SNR in dB")->capture_default_str();
  sub->add_option("--noise", o.noise, "Noise on|off")
      ->check(CLI::IsMember({"on", "off"}))->capture_default_str();
  sub->add_option("--phi", o.phi, "Measurement matrix gaussian|identity")
      ->check(CLI::IsMember({"gaussian", "identity"}))->capture_default_str();
  sub->add_option("--measurements", o.measurements, "Measurement count m (default M ln N bound + 1)");
  sub->add_option("--algo", o.algo, "Comma-separated algorithms: omp,cosamp")->capture_default_str();
  sub->add_option("--sparsity", o.sparsity, "Solver sparsity (default source count)");
  sub->add_option("--amplitude", o.amplitude, "Source amplitudes unit-phase|gaussian|unit")
      ->check(CLI::IsMember({"unit-phase", "gaussian", "unit"}))->capture_default_str();
  sub->add_option("--max-iterations", o.max_iterations, "CoSaMP iteration cap")->capture_default_str();
  sub->add_option("--residual-tol", o.residual_tol, "Relative residual stopping tolerance")->capture_default_str();
  sub->add_option("--seed", o.seed, "Base random seed")->capture_default_str();
  sub->add_option("--out", o.out, "Output directory")->capture_default_str();
  sub->add_option("--workers", o.workers, "Worker threads for Monte Carlo trials");
  sub->add_option("--from-meta", o.from_meta, "Rerun from a meta.json written by an earlier run");
}

RunMetadata load_meta(const std::string& path, const std::string& command) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
  RunMetadata meta = metadata_from_json(j);
  if (meta.command != command) {
    throw UsageError(path + " was written by '" + meta.command + "', not '" + command + "'");
  }
  meta.scenario.validate();
  return meta;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

fs::path prepare_out(const std::string& dir) {
  const fs::path out(dir);
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw std::runtime_error("cannot create " + dir + ": " + ec.message());
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string format_precise(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void cmd_spectrum(RunMetadata meta, const fs::path& out_dir, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const SingleRun run = run_single(meta.scenario);

  std::string csv = "theta_deg";
  for (const auto& r : run.runs) csv += ",power_" + std::string(to_string(r.algorithm));
  csv += '\n';
  for (std::size_t j = 0; j < meta.scenario.grid.size(); ++j) {
    csv += format_number(meta.scenario.grid.angles_deg[j]);
    for (const auto& r : run.runs) csv += ',' + format_number(r.spectrum.power[j]);
    csv += '\n';
  }
  write_file(out_dir / "spectrum.csv", csv);

  meta.summary = Json::object();
  for (const auto& r : run.runs) meta.summary[std::string(to_string(r.algorithm))] = record_to_json(r.record);
  meta.duration_s = seconds_since(start);
  write_file(out_dir / "meta.json", metadata_to_json(meta).dump(2) + "\n");

  for (const auto& r : run.runs) {
    out << to_string(r.algorithm) << ":";
    for (double d : r.doas.doas_deg) out << ' ' << format_number(d);
    out << '\n';
  }
}

void cmd_montecarlo(RunMetadata meta, const fs::path& out_dir, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const RmseCurve curve =
      run_monte_carlo(meta.scenario, meta.snr_sweep_db, meta.trials, meta.workers);

  std::string csv = "snr_db";
  const auto column = [&](const std::string& prefix, const std::string& suffix) {
    for (const auto& c : curve.curves) csv += ',' + prefix + std::string(to_string(c.algorithm)) + suffix;
  };
  column("rmse_", "_deg");
  column("rmse_", "_success_only_deg");
  column("success_rate_", "");
  csv += '\n';
  for (std::size_t i = 0; i < curve.snr_points_db.size(); ++i) {
    csv += format_number(curve.snr_points_db[i]);
    for (const auto& c : curve.curves) csv += ',' + format_number(c.rmse_deg[i]);
    for (const auto& c : curve.curves) csv += ',' + format_number(c.rmse_success_only_deg[i]);
    for (const auto& c : curve.curves) csv += ',' + format_number(c.success_rate[i]);
    csv += '\n';
  }
  write_file(out_dir / "rmse.csv", csv);

  meta.summary = curve_to_json(curve);
  meta.duration_s = seconds_since(start);
  write_file(out_dir / "meta.json", metadata_to_json(meta).dump(2) + "\n");
  out << "wrote " << curve.snr_points_db.size() << " SNR points x " << meta.trials << " trials\n";
}

void cmd_synth(const RunMetadata& meta, const fs::path& out_dir, std::ostream& out) {
  const Snapshot snap = trial_snapshot(meta.scenario, meta.scenario.snr_db, meta.scenario.seed);
  std::string csv = "sensor_index,data_re,data_im,clean_re,clean_im,noise_re,noise_im\n";
  for (Eigen::Index n = 0; n < snap.data.size(); ++n) {
    csv += std::to_string(n);
    for (const CVector* v : {&snap.data, &snap.clean, &snap.noise}) {
      csv += ',' + format_precise((*v)[n].real()) + ',' + format_precise((*v)[n].imag());
    }
    csv += '\n';
  }
  write_file(out_dir / "snapshot.csv", csv);
  out << "wrote " << snap.data.size() << " sensors\n";
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compressed-sensing DOA estimation for uniform linear arrays", "csdoa"};
  app.set_version_flag("--version", CSDOA_VERSION);
  app.require_subcommand(1);

  Options o;
  auto* spectrum = app.add_subcommand("spectrum", "Single run: angle spectra per algorithm");
  auto* montecarlo = app.add_subcommand("montecarlo", "RMSE vs SNR over Monte Carlo trials");
  auto* synth = app.add_subcommand("synth", "Write one synthesized snapshot");
  for (auto* sub : {spectrum, montecarlo, synth}) add_scenario_options(sub, o);
  montecarlo->add_option("--trials", o.trials, "Trials per SNR point")->capture_default_str();
  montecarlo->add_option("--snr-sweep", o.snr_sweep, "SNR sweep lo:hi:step in dB")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << CSDOA_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "csdoa: " << e.what() << '\n';
    return kExitUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  RunMetadata meta;
  fs::path out_dir;
  try {
    if (!o.from_meta.empty()) {
      meta = load_meta(o.from_meta, command);
    } else {
      meta.command = command;
      meta.scenario = scenario_from_options(o);
      if (command == "montecarlo") {
        if (o.trials < 1) throw UsageError("--trials must be positive");
        if (meta.scenario.snr_db == kNoiseless) {
          meta.snr_sweep_db = {kNoiseless};
        } else {
          const auto r = parse_range(o.snr_sweep, "--snr-sweep");
          meta.snr_sweep_db = make_sweep(r[0], r[1], r[2]);
        }
        meta.trials = o.trials;
      }
    }
    meta.tool_version = CSDOA_VERSION;
    if (o.workers) {
      if (*o.workers < 1) throw UsageError("--workers must be positive");
      meta.workers = *o.workers;
    }
  } catch (const UsageError& e) {
    err << "csdoa: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "csdoa: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    out_dir = prepare_out(o.out);
    if (command == "spectrum") cmd_spectrum(std::move(meta), out_dir, out);
    else if (command == "montecarlo") cmd_montecarlo(std::move(meta), out_dir, out);
    else cmd_synth(meta, out_dir, out);
  } catch (const std::exception& e) {
    err << "csdoa: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace csdoa::cli
