// SPDX-License-Identifier: Apache-2.0
#include "csdoa/sensing.hpp"

#include <cmath>
#include <string>

#include "csdoa/error.hpp"
#include "csdoa/random.hpp"

namespace csdoa {

int min_measurements(int sources, int signal_len) {
  if (sources < 1) throw Error(ErrorCode::InvalidArgument, "source count must be at least 1");
  if (signal_len < 2) throw Error(ErrorCode::InvalidArgument, "signal length must be at least 2");
  // M ln(N) is irrational for N >= 2, so floor + 1 is the strict bound.
  return static_cast<int>(std::floor(sources * std::log(static_cast<double>(signal_len)))) + 1;
}

MeasurementMatrix draw_measurement_matrix(int m, int n, MeasurementKind kind, std::uint64_t seed) {
  if (m < 1 || n < 1) throw Error(ErrorCode::InvalidArgument, "matrix dimensions must be positive");
  MeasurementMatrix phi;
  phi.kind = kind;
  phi.seed = seed;
  if (kind == MeasurementKind::Identity) {
    if (m != n) {
      throw Error(ErrorCode::DimensionMismatch,
                  "identity measurement needs m == n (got " + std::to_string(m) + " x " +
                      std::to_string(n) + ")");
    }
    phi.entries = CMatrix::Identity(m, n);
    return phi;
  }
  if (m > n) {
    throw Error(ErrorCode::DimensionMismatch, "compressive measurement needs m <= n");
  }
  Rng rng(seed);
  phi.entries.resize(m, n);
  // Column-major fill keeps the draw order fixed.
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < m; ++i) phi.entries(i, j) = rng.complex_normal(1.0 / m);
  }
  return phi;
}

CVector compress(const MeasurementMatrix& phi, const CVector& x) {
  if (x.size() != phi.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "signal length " + std::to_string(x.size()) +
                                                  " does not match measurement matrix with " +
                                                  std::to_string(phi.cols()) + " columns");
  }
  return phi.entries * x;
}

SensingSystem::SensingSystem(MeasurementMatrix phi, CMatrix manifold)
    : phi_(std::move(phi)), manifold_(std::move(manifold)) {
  if (phi_.cols() != manifold_.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "measurement matrix has " +
                                                  std::to_string(phi_.cols()) +
                                                  " columns but manifold has " +
                                                  std::to_string(manifold_.rows()) + " rows");
  }
  psi_ = phi_.entries * manifold_;
  column_norms_ = psi_.colwise().norm().transpose();
  for (Eigen::Index j = 0; j < column_norms_.size(); ++j) {
    if (!(column_norms_[j] > 0.0)) {
      throw Error(ErrorCode::DegenerateColumn, "dictionary column " + std::to_string(j) + " is zero");
    }
  }
}

SensingSystem build_sensing_system(MeasurementMatrix phi, CMatrix manifold) {
  return SensingSystem(std::move(phi), std::move(manifold));
}

}  // namespace csdoa
