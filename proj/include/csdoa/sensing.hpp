// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "csdoa/types.hpp"

namespace csdoa {

enum class MeasurementKind { ComplexGaussian, Identity };

struct MeasurementMatrix {
  CMatrix entries;
  MeasurementKind kind = MeasurementKind::Identity;
  std::uint64_t seed = 0;

  Eigen::Index rows() const { return entries.rows(); }
  Eigen::Index cols() const { return entries.cols(); }
};

/// Smallest integer strictly greater than M ln(signal_len).
int min_measurements(int sources, int signal_len);

/// ComplexGaussian: i.i.d. entries with re/im ~ N(0, 1/(2m)), so each column
/// has unit expected energy. Identity requires m == n.
MeasurementMatrix draw_measurement_matrix(int m, int n, MeasurementKind kind, std::uint64_t seed);

/// y = phi x
CVector compress(const MeasurementMatrix& phi, const CVector& x);

/// Effective dictionary psi = phi * manifold with cached column norms.
/// Immutable once built; safe to share read-only across threads.
class SensingSystem {
 public:
  SensingSystem(MeasurementMatrix phi, CMatrix manifold);

  const MeasurementMatrix& phi() const { return phi_; }
  const CMatrix& manifold() const { return manifold_; }
  const CMatrix& psi() const { return psi_; }
  const RVector& column_norms() const { return column_norms_; }

  Eigen::Index measurements() const { return psi_.rows(); }
  Eigen::Index atoms() const { return psi_.cols(); }

 private:
  MeasurementMatrix phi_;
  CMatrix manifold_;
  CMatrix psi_;
  RVector column_norms_;
};

SensingSystem build_sensing_system(MeasurementMatrix phi, CMatrix manifold);

}  // namespace csdoa
