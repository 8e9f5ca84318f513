// SPDX-License-Identifier: Apache-2.0
#include "csdoa/array_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "csdoa/error.hpp"

namespace csdoa {

namespace {

constexpr double kGridMatchTolDeg = 1e-9;

void check_angle(double theta_deg) {
  if (!(theta_deg >= -90.0 && theta_deg <= 90.0)) {
    throw Error(ErrorCode::AngleOutOfRange,
                "angle " + std::to_string(theta_deg) + " deg outside [-90, 90]");
  }
}

}  // namespace

std::optional<std::size_t> AngleGrid::index_of(double theta_deg) const {
  if (angles_deg.empty() || !std::isfinite(theta_deg)) return std::nullopt;
  const double pos = std::round((theta_deg - start_deg) / step_deg);
  if (pos < 0.0 || pos >= static_cast<double>(angles_deg.size())) return std::nullopt;
  const auto j = static_cast<std::size_t>(pos);
  if (std::abs(angles_deg[j] - theta_deg) > kGridMatchTolDeg) return std::nullopt;
  return j;
}

AngleGrid make_grid(double start_deg, double stop_deg, double step_deg) {
  if (!(step_deg > 0.0)) {
    throw Error(ErrorCode::NonPositiveStep, "grid step must be positive");
  }
  if (!(start_deg <= stop_deg)) {
    throw Error(ErrorCode::EmptyGrid, "grid start exceeds stop");
  }
  check_angle(start_deg);
  check_angle(stop_deg);

  // The small slack keeps e.g. 0:0.3:0.1 from losing its last point to rounding.
  const double span = (stop_deg - start_deg) / step_deg;
  const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;

  AngleGrid grid;
  grid.start_deg = start_deg;
  grid.stop_deg = stop_deg;
  grid.step_deg = step_deg;
  grid.angles_deg.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    grid.angles_deg.push_back(std::min(start_deg + static_cast<double>(j) * step_deg, stop_deg));
  }
  return grid;
}

void ArrayGeometry::validate() const {
  if (num_sensors < 2) {
    throw Error(ErrorCode::InvalidArgument, "an array needs at least 2 sensors");
  }
  if (!(spacing_over_wavelength > 0.0) || !std::isfinite(spacing_over_wavelength)) {
    throw Error(ErrorCode::InvalidArgument, "sensor spacing must be positive");
  }
}

void SourceSet::validate() const {
  if (doas_deg.empty()) {
    throw Error(ErrorCode::InvalidArgument, "at least one source is required");
  }
  for (std::size_t i = 0; i < doas_deg.size(); ++i) {
    check_angle(doas_deg[i]);
    for (std::size_t k = i + 1; k < doas_deg.size(); ++k) {
      if (doas_deg[i] == doas_deg[k]) {
        throw Error(ErrorCode::InvalidArgument, "source DOAs must be distinct");
      }
    }
  }
  std::vector<int> seen(doas_deg.size(), 0);
  for (const auto& group : coherent_groups) {
    if (group.empty()) throw Error(ErrorCode::InvalidArgument, "empty coherent group");
    for (std::size_t idx : group) {
      if (idx >= doas_deg.size()) {
        throw Error(ErrorCode::InvalidArgument,
                    "coherent group references source " + std::to_string(idx + 1) +
                        " of " + std::to_string(doas_deg.size()));
      }
      ++seen[idx];
    }
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (seen[i] != 1) {
      throw Error(ErrorCode::InvalidArgument,
                  "source " + std::to_string(i + 1) + " must belong to exactly one coherent group");
    }
  }
}

SourceSet make_sources(std::vector<double> doas_deg, std::vector<std::vector<std::size_t>> groups,
                       AmplitudeModel model) {
  SourceSet sources;
  sources.doas_deg = std::move(doas_deg);
  sources.amplitude_model = model;
  std::vector<bool> grouped(sources.doas_deg.size(), false);
  for (const auto& group : groups) {
    for (std::size_t idx : group) {
      if (idx < grouped.size()) grouped[idx] = true;
    }
  }
  // Singletons first, then explicit groups; draw order follows this layout.
  for (std::size_t i = 0; i < grouped.size(); ++i) {
    if (!grouped[i]) sources.coherent_groups.push_back({i});
  }
  for (auto& group : groups) sources.coherent_groups.push_back(std::move(group));
  std::sort(sources.coherent_groups.begin(), sources.coherent_groups.end(),
            [](const auto& a, const auto& b) {
              const auto ma = a.empty() ? 0 : *std::min_element(a.begin(), a.end());
              const auto mb = b.empty() ? 0 : *std::min_element(b.begin(), b.end());
              return ma < mb;
            });
  sources.validate();
  return sources;
}

CVector steering_vector(double theta_deg, const ArrayGeometry& geometry) {
  check_angle(theta_deg);
  geometry.validate();
  const double phase_step =
      -2.0 * kPi * geometry.spacing_over_wavelength * std::sin(deg_to_rad(theta_deg));
  CVector a(geometry.num_sensors);
  for (int n = 0; n < geometry.num_sensors; ++n) {
    a[n] = std::polar(1.0, phase_step * n);
  }
  return a;
}

CMatrix build_manifold(const AngleGrid& grid, const ArrayGeometry& geometry) {
  if (grid.angles_deg.empty()) throw Error(ErrorCode::EmptyGrid, "manifold needs a nonempty grid");
  CMatrix manifold(geometry.num_sensors, static_cast<Eigen::Index>(grid.size()));
  for (std::size_t j = 0; j < grid.size(); ++j) {
    manifold.col(static_cast<Eigen::Index>(j)) = steering_vector(grid.angles_deg[j], geometry);
  }
  return manifold;
}

Snapshot synthesize(const ArrayGeometry& geometry, const AngleGrid& grid,
                    const SourceSet& sources, double snr_db, Rng& rng) {
  geometry.validate();
  sources.validate();
  for (double doa : sources.doas_deg) {
    if (!grid.index_of(doa)) {
      throw Error(ErrorCode::OffGridSource,
                  "source at " + std::to_string(doa) + " deg is not a grid point");
    }
  }
  if (std::isnan(snr_db) || snr_db == -kNoiseless) {
    throw Error(ErrorCode::InvalidArgument, "SNR must be a number or +inf");
  }

  Snapshot snap;
  snap.true_sources = sources;
  snap.snr_db = snr_db;
  snap.amplitudes = CVector::Zero(static_cast<Eigen::Index>(sources.size()));
  for (const auto& group : sources.coherent_groups) {
    Complex amplitude{1.0, 0.0};
    switch (sources.amplitude_model) {
      case AmplitudeModel::UnitModulusRandomPhase: amplitude = rng.unit_phase(); break;
      case AmplitudeModel::ComplexGaussian: amplitude = rng.complex_normal(1.0); break;
      case AmplitudeModel::UnitReal: break;
    }
    for (std::size_t idx : group) snap.amplitudes[static_cast<Eigen::Index>(idx)] = amplitude;
  }

  snap.clean = CVector::Zero(geometry.num_sensors);
  for (std::size_t i = 0; i < sources.size(); ++i) {
    snap.clean += steering_vector(sources.doas_deg[i], geometry) *
                  snap.amplitudes[static_cast<Eigen::Index>(i)];
  }

  snap.noise = CVector::Zero(geometry.num_sensors);
  if (snr_db != kNoiseless) {
    const double clean_power = snap.clean.squaredNorm();
    const double variance = clean_power / (geometry.num_sensors * std::pow(10.0, snr_db / 10.0));
    for (int n = 0; n < geometry.num_sensors; ++n) snap.noise[n] = rng.complex_normal(variance);
  }
  snap.data = snap.clean + snap.noise;
  return snap;
}

std::vector<Snapshot> synthesize_multi(const ArrayGeometry& geometry, const AngleGrid& grid,
                                       const SourceSet& sources, double snr_db, int snapshots,
                                       Rng& rng) {
  if (snapshots < 1) throw Error(ErrorCode::InvalidArgument, "snapshot count must be positive");
  std::vector<Snapshot> out;
  out.reserve(static_cast<std::size_t>(snapshots));
  for (int k = 0; k < snapshots; ++k) out.push_back(synthesize(geometry, grid, sources, snr_db, rng));
  return out;
}

}  // namespace csdoa
