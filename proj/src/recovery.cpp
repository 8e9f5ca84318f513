// SPDX-License-Identifier: Apache-2.0
#include "csdoa/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "csdoa/error.hpp"

namespace csdoa {

namespace {

constexpr double kRankThreshold = 1e-10;
constexpr double kStagnationTol = 1e-6;
constexpr double kMaxOracleSubsets = 1e6;

CMatrix gather_columns(const CMatrix& psi, const std::vector<std::size_t>& columns) {
  CMatrix out(psi.rows(), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t k = 0; k < columns.size(); ++k) {
    out.col(static_cast<Eigen::Index>(k)) = psi.col(static_cast<Eigen::Index>(columns[k]));
  }
  return out;
}

void check_measurements(const SensingSystem& system, const CVector& y) {
  if (y.size() != system.measurements()) {
    throw Error(ErrorCode::DimensionMismatch, "measurement vector has length " +
                                                  std::to_string(y.size()) + ", expected " +
                                                  std::to_string(system.measurements()));
  }
}

// Full-length coefficient vector with `values[k]` at `support[k]`, plus the
// from-scratch residual.
SparseEstimate finish(const SensingSystem& system, const CVector& y,
                      std::vector<std::size_t> support, const CVector& values) {
  SparseEstimate est;
  est.coefficients = CVector::Zero(system.atoms());
  for (std::size_t k = 0; k < support.size(); ++k) {
    est.coefficients[static_cast<Eigen::Index>(support[k])] = values[static_cast<Eigen::Index>(k)];
  }
  std::sort(support.begin(), support.end());
  est.support = std::move(support);
  est.residual_norm = (y - system.psi() * est.coefficients).norm();
  return est;
}

}  // namespace

void SolverConfig::validate() const {
  if (sparsity < 1) throw Error(ErrorCode::InvalidArgument, "sparsity must be at least 1");
  if (max_iterations < 1) throw Error(ErrorCode::InvalidArgument, "max_iterations must be positive");
  if (!(residual_tol >= 0.0)) throw Error(ErrorCode::InvalidArgument, "residual_tol must be >= 0");
}

CVector least_squares(const CMatrix& basis, const CVector& y) {
  if (basis.rows() != y.size()) {
    throw Error(ErrorCode::DimensionMismatch, "least squares: basis/observation size mismatch");
  }
  if (basis.cols() == 0) return CVector(0);
  if (basis.cols() > basis.rows()) {
    throw Error(ErrorCode::RankDeficient, "least squares with " + std::to_string(basis.cols()) +
                                              " columns but only " +
                                              std::to_string(basis.rows()) + " rows");
  }
  const Eigen::ColPivHouseholderQR<CMatrix> qr(basis);
  // Column pivoting orders |R_ii| non-increasingly.
  const auto diag = qr.matrixQR().diagonal().cwiseAbs();
  const double largest = diag.maxCoeff();
  const double smallest = diag.minCoeff();
  if (!(largest > 0.0) || smallest < kRankThreshold * largest) {
    throw Error(ErrorCode::RankDeficient, "least squares basis is numerically rank deficient");
  }
  return qr.solve(y);
}

RVector correlate(const SensingSystem& system, const CVector& residual) {
  check_measurements(system, residual);
  return (system.psi().adjoint() * residual).cwiseAbs().cwiseQuotient(system.column_norms());
}

std::vector<std::size_t> top_k(const RVector& values, std::size_t k) {
  std::vector<std::size_t> idx(static_cast<std::size_t>(values.size()));
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  k = std::min(k, idx.size());
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end(),
                    [&](std::size_t a, std::size_t b) {
                      const double va = values[static_cast<Eigen::Index>(a)];
                      const double vb = values[static_cast<Eigen::Index>(b)];
                      return va > vb || (va == vb && a < b);
                    });
  idx.resize(k);
  return idx;
}

SparseEstimate omp(const SensingSystem& system, const CVector& y, const SolverConfig& config) {
  config.validate();
  check_measurements(system, y);
  if (config.sparsity > system.measurements() || config.sparsity > system.atoms()) {
    throw Error(ErrorCode::InvalidArgument, "OMP sparsity exceeds the number of measurements or atoms");
  }
  if (config.max_iterations < config.sparsity) {
    throw Error(ErrorCode::InvalidArgument, "OMP needs max_iterations >= sparsity");
  }

  const double y_norm = y.norm();
  const double stop_norm = config.residual_tol * y_norm;
  std::vector<std::size_t> selected;
  std::vector<bool> taken(static_cast<std::size_t>(system.atoms()), false);
  CVector values(0);
  CVector residual = y;
  double residual_norm = y_norm;
  std::vector<double> history{y_norm};
  bool converged = residual_norm <= stop_norm;

  int iterations = 0;
  while (!converged && iterations < config.sparsity) {
    const RVector scores = correlate(system, residual);
    std::size_t best = 0;
    double best_score = -1.0;
    for (std::size_t j = 0; j < taken.size(); ++j) {
      const double s = scores[static_cast<Eigen::Index>(j)];
      if (!taken[j] && s > best_score) {
        best = j;
        best_score = s;
      }
    }
    selected.push_back(best);
    taken[best] = true;

    const CMatrix chosen = gather_columns(system.psi(), selected);
    values = least_squares(chosen, y);
    residual = y - chosen * values;
    residual_norm = residual.norm();
    history.push_back(residual_norm);
    ++iterations;
    converged = residual_norm <= stop_norm;
  }

  SparseEstimate est = finish(system, y, std::move(selected), values);
  est.iterations = iterations;
  // Running all M selections is the normal end of OMP.
  est.converged = true;
  est.residual_history = std::move(history);
  return est;
}

SparseEstimate cosamp(const SensingSystem& system, const CVector& y, const SolverConfig& config) {
  config.validate();
  check_measurements(system, y);
  const auto sparsity = static_cast<std::size_t>(config.sparsity);
  if (2 * config.sparsity > system.measurements() || config.sparsity > system.atoms()) {
    throw Error(ErrorCode::InvalidArgument, "CoSaMP needs 2 * sparsity <= measurements");
  }

  const double y_norm = y.norm();
  const double stop_norm = config.residual_tol * y_norm;

  SparseEstimate best;
  best.coefficients = CVector::Zero(system.atoms());
  best.residual_norm = y_norm;
  best.residual_history.push_back(y_norm);
  if (y_norm <= stop_norm) {
    best.converged = true;
    return best;
  }

  std::vector<std::size_t> support;
  CVector residual = y;
  double previous_norm = y_norm;
  std::vector<double> history{y_norm};
  bool converged = false;
  int iterations = 0;

  while (iterations < config.max_iterations) {
    ++iterations;
    const RVector proxy = correlate(system, residual);
    std::vector<std::size_t> merged = top_k(proxy, 2 * sparsity);
    merged.insert(merged.end(), support.begin(), support.end());
    std::sort(merged.begin(), merged.end());
    merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
    if (static_cast<Eigen::Index>(merged.size()) > system.measurements()) {
      throw Error(ErrorCode::RankDeficient, "CoSaMP merged support exceeds measurement count");
    }

    const CVector fit = least_squares(gather_columns(system.psi(), merged), y);
    const std::vector<std::size_t> keep = top_k(fit.cwiseAbs(), sparsity);
    std::vector<std::size_t> next_support;
    CVector next_values(static_cast<Eigen::Index>(keep.size()));
    for (std::size_t k = 0; k < keep.size(); ++k) {
      next_support.push_back(merged[keep[k]]);
      next_values[static_cast<Eigen::Index>(k)] = fit[static_cast<Eigen::Index>(keep[k])];
    }

    SparseEstimate current = finish(system, y, next_support, next_values);
    support = current.support;
    residual = y - system.psi() * current.coefficients;
    const double residual_norm = current.residual_norm;
    history.push_back(residual_norm);

    if (residual_norm < best.residual_norm || best.support.empty()) {
      best = std::move(current);
    }
    if (residual_norm <= stop_norm) {
      converged = true;
      break;
    }
    if (residual_norm > previous_norm * (1.0 - kStagnationTol)) {
      // Fixed point (or worse): further iterations repeat the same selection.
      converged = true;
      break;
    }
    previous_norm = residual_norm;
  }

  best.iterations = iterations;
  best.converged = converged;
  best.residual_history = std::move(history);
  return best;
}

SparseEstimate l0_oracle(const SensingSystem& system, const CVector& y, int sparsity) {
  check_measurements(system, y);
  const auto n = static_cast<std::size_t>(system.atoms());
  if (sparsity < 1 || static_cast<std::size_t>(sparsity) > n) {
    throw Error(ErrorCode::InvalidArgument, "oracle sparsity must lie in [1, N_s]");
  }
  const auto k = static_cast<std::size_t>(sparsity);
  double subsets = 1.0;
  for (std::size_t i = 0; i < k; ++i) {
    subsets = subsets * static_cast<double>(n - i) / static_cast<double>(i + 1);
  }
  if (subsets > kMaxOracleSubsets) {
    throw Error(ErrorCode::InstanceTooLarge,
                "C(" + std::to_string(n) + ", " + std::to_string(k) + ") exceeds 1e6 subsets");
  }

  std::vector<std::size_t> subset(k);
  std::iota(subset.begin(), subset.end(), std::size_t{0});
  std::vector<std::size_t> best_subset;
  CVector best_values;
  double best_norm = std::numeric_limits<double>::infinity();

  // Lexicographic enumeration; strict improvement keeps the earliest on ties.
  while (true) {
    try {
      const CMatrix basis = gather_columns(system.psi(), subset);
      const CVector values = least_squares(basis, y);
      const double norm = (y - basis * values).norm();
      if (norm < best_norm) {
        best_norm = norm;
        best_subset = subset;
        best_values = values;
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::RankDeficient) throw;
    }

    std::size_t i = k;
    while (i > 0 && subset[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) break;
    ++subset[i - 1];
    for (std::size_t j = i; j < k; ++j) subset[j] = subset[j - 1] + 1;
  }

  if (best_subset.empty()) {
    throw Error(ErrorCode::RankDeficient, "every candidate subset is rank deficient");
  }
  SparseEstimate est = finish(system, y, best_subset, best_values);
  est.iterations = 0;
  est.converged = true;
  est.residual_history = {y.norm(), est.residual_norm};
  return est;
}

}  // namespace csdoa
