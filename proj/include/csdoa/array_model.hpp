// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "csdoa/random.hpp"
#include "csdoa/types.hpp"

namespace csdoa {

/// Candidate DOA angles in degrees, one per dictionary column.
struct AngleGrid {
  double start_deg = 0.0;
  double stop_deg = 0.0;
  double step_deg = 1.0;
  std::vector<double> angles_deg;

  std::size_t size() const { return angles_deg.size(); }
  /// Index of the grid point equal to `theta_deg` (within 1e-9 deg), if any.
  std::optional<std::size_t> index_of(double theta_deg) const;
};

AngleGrid make_grid(double start_deg, double stop_deg, double step_deg);

/// Uniform linear array.
struct ArrayGeometry {
  int num_sensors = 15;
  double spacing_over_wavelength = 0.5;

  void validate() const;
};

enum class AmplitudeModel {
  UnitModulusRandomPhase,  // |s| = 1, phase uniform on [0, 2pi)
  ComplexGaussian,         // circular, E|s|^2 = 1
  UnitReal,                // s = 1 + 0i, no randomness
};

struct SourceSet {
  std::vector<double> doas_deg;
  /// Partition of source indices (0-based); each group shares one amplitude.
  std::vector<std::vector<std::size_t>> coherent_groups;
  AmplitudeModel amplitude_model = AmplitudeModel::UnitModulusRandomPhase;

  std::size_t size() const { return doas_deg.size(); }
  void validate() const;
};

/// Sources that are all mutually non-coherent except for `groups`; every index
/// not mentioned in `groups` becomes a singleton group.
SourceSet make_sources(std::vector<double> doas_deg,
                       std::vector<std::vector<std::size_t>> groups = {},
                       AmplitudeModel model = AmplitudeModel::UnitModulusRandomPhase);

inline constexpr double kNoiseless = std::numeric_limits<double>::infinity();

struct Snapshot {
  CVector data;
  CVector clean;
  CVector noise;
  /// Per-source complex amplitudes s, in the order of true_sources.doas_deg.
  CVector amplitudes;
  SourceSet true_sources;
  double snr_db = kNoiseless;
};

/// a(theta)[n] = exp(-i 2pi (d/lambda) n sin(theta)), sensor 0 as reference.
CVector steering_vector(double theta_deg, const ArrayGeometry& geometry);

/// N x N_s matrix whose column j is steering_vector(grid.angles_deg[j]).
CMatrix build_manifold(const AngleGrid& grid, const ArrayGeometry& geometry);

/// One snapshot x = A(theta) s + n. Noise is circular complex Gaussian with
/// per-element variance ||A s||^2 / (N 10^(snr/10)); snr_db = +inf disables it.
/// Every DOA must be a grid point.
Snapshot synthesize(const ArrayGeometry& geometry, const AngleGrid& grid,
                    const SourceSet& sources, double snr_db, Rng& rng);

/// K consecutive draws from the same stream.
std::vector<Snapshot> synthesize_multi(const ArrayGeometry& geometry, const AngleGrid& grid,
                                       const SourceSet& sources, double snr_db, int snapshots,
                                       Rng& rng);

}  // namespace csdoa
