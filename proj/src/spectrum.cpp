// SPDX-License-Identifier: Apache-2.0
#include "csdoa/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "csdoa/error.hpp"

namespace csdoa {

namespace {

// Order-preserving matching of the shorter sorted list into the longer one
// with minimum total squared error. Returns, for each element of `shorter`,
// the index it is matched to in `longer`.
std::vector<std::size_t> monotone_match(const std::vector<double>& shorter,
                                        const std::vector<double>& longer) {
  const std::size_t a = shorter.size();
  const std::size_t b = longer.size();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // cost[i][j]: best cost of placing the first i of `shorter` within the first j of `longer`.
  std::vector<std::vector<double>> cost(a + 1, std::vector<double>(b + 1, kInf));
  for (std::size_t j = 0; j <= b; ++j) cost[0][j] = 0.0;
  for (std::size_t i = 1; i <= a; ++i) {
    for (std::size_t j = i; j <= b; ++j) {
      const double d = shorter[i - 1] - longer[j - 1];
      cost[i][j] = std::min(cost[i][j - 1], cost[i - 1][j - 1] + d * d);
    }
  }
  std::vector<std::size_t> match(a);
  std::size_t j = b;
  for (std::size_t i = a; i > 0; --i) {
    while (j > i && cost[i][j - 1] <= cost[i][j]) --j;
    match[i - 1] = j - 1;
    --j;
  }
  return match;
}

}  // namespace

AngleSpectrum angle_spectrum(const SparseEstimate& estimate, const AngleGrid& grid) {
  if (static_cast<std::size_t>(estimate.coefficients.size()) != grid.size()) {
    throw Error(ErrorCode::DimensionMismatch,
                "estimate has " + std::to_string(estimate.coefficients.size()) +
                    " coefficients for a grid of " + std::to_string(grid.size()));
  }
  AngleSpectrum spectrum;
  spectrum.grid = grid;
  spectrum.power.resize(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    spectrum.power[j] = std::norm(estimate.coefficients[static_cast<Eigen::Index>(j)]);
  }
  return spectrum;
}

DoaEstimate pick_peaks(const AngleSpectrum& spectrum, int count) {
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "peak count must be at least 1");
  std::vector<std::size_t> positive;
  for (std::size_t j = 0; j < spectrum.power.size(); ++j) {
    if (spectrum.power[j] > 0.0) positive.push_back(j);
  }
  const std::size_t keep = std::min(positive.size(), static_cast<std::size_t>(count));
  // Grid angles increase with index, so lowest index is lowest angle.
  std::partial_sort(positive.begin(), positive.begin() + static_cast<std::ptrdiff_t>(keep),
                    positive.end(), [&](std::size_t a, std::size_t b) {
                      return spectrum.power[a] > spectrum.power[b] ||
                             (spectrum.power[a] == spectrum.power[b] && a < b);
                    });
  positive.resize(keep);
  std::sort(positive.begin(), positive.end());

  DoaEstimate out;
  for (std::size_t j : positive) {
    out.doas_deg.push_back(spectrum.grid.angles_deg[j]);
    out.powers.push_back(spectrum.power[j]);
  }
  return out;
}

DoaErrors trial_error(const DoaEstimate& estimated, const SourceSet& truth) {
  std::vector<double> est = estimated.doas_deg;
  std::vector<double> tru = truth.doas_deg;
  std::sort(est.begin(), est.end());
  std::sort(tru.begin(), tru.end());

  DoaErrors out;
  out.errors_deg.assign(tru.size(), kMissPenaltyDeg);
  if (est.size() == tru.size()) {
    for (std::size_t i = 0; i < tru.size(); ++i) out.errors_deg[i] = std::abs(est[i] - tru[i]);
  } else if (est.size() < tru.size()) {
    const auto match = monotone_match(est, tru);
    for (std::size_t i = 0; i < est.size(); ++i) {
      out.errors_deg[match[i]] = std::abs(est[i] - tru[match[i]]);
    }
    out.misses = static_cast<int>(tru.size() - est.size());
  } else {
    const auto match = monotone_match(tru, est);
    for (std::size_t i = 0; i < tru.size(); ++i) out.errors_deg[i] = std::abs(tru[i] - est[match[i]]);
  }
  return out;
}

}  // namespace csdoa
