// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "csdoa/array_model.hpp"
#include "csdoa/recovery.hpp"

namespace csdoa {

struct AngleSpectrum {
  AngleGrid grid;
  std::vector<double> power;  // |s_j|^2 per grid angle
};

struct DoaEstimate {
  std::vector<double> doas_deg;  // strictly increasing
  std::vector<double> powers;
};

/// Penalty charged per true source that has no matching estimate.
inline constexpr double kMissPenaltyDeg = 180.0;

struct DoaErrors {
  std::vector<double> errors_deg;  // one per true source, ascending-DOA order
  int misses = 0;
};

AngleSpectrum angle_spectrum(const SparseEstimate& estimate, const AngleGrid& grid);

/// Grid angles of the `count` largest strictly positive powers, ties to the
/// lower angle, returned sorted by angle.
DoaEstimate pick_peaks(const AngleSpectrum& spectrum, int count);

/// Absolute errors after sorted, order-preserving pairing. Equal-length lists
/// pair positionally; otherwise the order-preserving matching with the least
/// squared error is used and unmatched true sources cost kMissPenaltyDeg.
DoaErrors trial_error(const DoaEstimate& estimated, const SourceSet& truth);

}  // namespace csdoa
