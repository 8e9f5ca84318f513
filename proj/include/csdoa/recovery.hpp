// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include "csdoa/sensing.hpp"
#include "csdoa/types.hpp"

namespace csdoa {

enum class TieBreak { LowestIndex };

struct SolverConfig {
  int sparsity = 1;
  int max_iterations = 50;
  /// Stop once ||r|| <= residual_tol * ||y||.
  double residual_tol = 1e-6;
  TieBreak tie_break = TieBreak::LowestIndex;

  void validate() const;
};

struct SparseEstimate {
  CVector coefficients;              // length N_s, zero off the support
  std::vector<std::size_t> support;  // ascending
  double residual_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  /// ||r_c|| after each iteration (index 0 is ||y||).
  std::vector<double> residual_history;
};

/// Minimizer of ||B x - y||_2 via column-pivoted Householder QR. Throws
/// RankDeficient when the smallest |R_ii| is below 1e-10 times the largest.
CVector least_squares(const CMatrix& basis, const CVector& y);

/// |<r, psi_j>| / ||psi_j|| for every atom j.
RVector correlate(const SensingSystem& system, const CVector& residual);

/// Indices of the k largest entries of `values`, ties to the lower index.
/// Returned in descending order of value.
std::vector<std::size_t> top_k(const RVector& values, std::size_t k);

/// Orthogonal matching pursuit: M greedy selections, each followed by a
/// least-squares refit on all selected atoms. Stops early when the relative
/// residual drops below config.residual_tol.
SparseEstimate omp(const SensingSystem& system, const CVector& y, const SolverConfig& config);

/// CoSaMP: merge the 2M strongest residual correlations with the previous
/// support, refit, prune back to M. Halts on relative residual tolerance, on
/// stagnation (relative decrease < 1e-6), or after max_iterations, and returns
/// the best-residual iterate.
SparseEstimate cosamp(const SensingSystem& system, const CVector& y, const SolverConfig& config);

/// Exhaustive search over all M-subsets for the minimum-residual fit. Test
/// scale only: throws InstanceTooLarge when C(N_s, M) > 1e6.
SparseEstimate l0_oracle(const SensingSystem& system, const CVector& y, int sparsity);

}  // namespace csdoa
