// SPDX-License-Identifier: Apache-2.0
#include "csdoa/array_model.hpp"
#include "csdoa/error.hpp"
#include "csdoa/sensing.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace csdoa;

TEST_CASE("min_measurements") {
  CHECK(min_measurements(3, 15) == 9);  // 3 ln 15 = 8.124
  CHECK(min_measurements(1, 3) == 2);   // ln 3 = 1.099
  CHECK(min_measurements(2, 15) == 6);  // 2 ln 15 = 5.416
  CHECK_THROWS_AS(min_measurements(0, 15), Error);
  CHECK_THROWS_AS(min_measurements(1, 1), Error);
  for (int sources = 1; sources <= 5; ++sources) {
    for (int n = 2; n <= 40; ++n) {
      const int m = min_measurements(sources, n);
      CHECK(m > sources * std::log(n));
      CHECK(m - 1 <= sources * std::log(n));
    }
  }
}

TEST_CASE("draw_measurement_matrix") {
  SUBCASE("identity") {
    const auto phi = draw_measurement_matrix(15, 15, MeasurementKind::Identity, 0);
    CHECK((phi.entries - CMatrix::Identity(15, 15)).norm() == 0.0);
    oracle::Gaussian g(1);
    const CVector x = g.vector(15);
    CHECK((compress(phi, x) - x).norm() == 0.0);
  }
  SUBCASE("identity needs a square shape") {
    try {
      draw_measurement_matrix(10, 15, MeasurementKind::Identity, 0);
      FAIL("expected DimensionMismatch");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DimensionMismatch);
    }
  }
  SUBCASE("gaussian draws are seed-deterministic") {
    const auto a = draw_measurement_matrix(10, 15, MeasurementKind::ComplexGaussian, 7);
    const auto b = draw_measurement_matrix(10, 15, MeasurementKind::ComplexGaussian, 7);
    const auto c = draw_measurement_matrix(10, 15, MeasurementKind::ComplexGaussian, 8);
    CHECK((a.entries - b.entries).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.entries - c.entries).norm() > 0.0);
    CHECK(a.seed == 7);
  }
  SUBCASE("unit expected column energy") {
    double total = 0.0;
    int columns = 0;
    for (std::uint64_t seed = 0; seed < 2000; ++seed) {
      const auto phi = draw_measurement_matrix(10, 15, MeasurementKind::ComplexGaussian, seed);
      total += phi.entries.colwise().squaredNorm().sum();
      columns += 15;
    }
    CHECK(total / columns == doctest::Approx(1.0).epsilon(0.05));
  }
  SUBCASE("compression cannot expand") {
    CHECK_THROWS_AS(draw_measurement_matrix(16, 15, MeasurementKind::ComplexGaussian, 1), Error);
  }
}

TEST_CASE("compress is linear") {
  const auto phi = draw_measurement_matrix(10, 15, MeasurementKind::ComplexGaussian, 3);
  CHECK(compress(phi, CVector::Zero(15)).norm() == 0.0);
  oracle::Gaussian g(42);
  for (int trial = 0; trial < 100; ++trial) {
    const CVector x1 = g.vector(15);
    const CVector x2 = g.vector(15);
    const Complex alpha = g.complex();
    const CVector lhs = compress(phi, alpha * x1 + x2);
    const CVector rhs = alpha * compress(phi, x1) + compress(phi, x2);
    CHECK((lhs - rhs).norm() <= 1e-12 * std::max(1.0, rhs.norm()));
  }
  CHECK_THROWS_AS(compress(phi, CVector::Zero(14)), Error);
}

TEST_CASE("build_sensing_system") {
  const ArrayGeometry geo{15, 0.5};
  const auto grid = make_grid(-90, 90, 1);
  const CMatrix A = build_manifold(grid, geo);

  SUBCASE("identity phi leaves the manifold unchanged") {
    const auto sys = build_sensing_system(draw_measurement_matrix(15, 15, MeasurementKind::Identity, 0), A);
    CHECK((sys.psi() - A).norm() == 0.0);
    CHECK((sys.column_norms().array() - std::sqrt(15.0)).abs().maxCoeff() < 1e-12);
  }
  SUBCASE("row of ones sums a broadside column") {
    MeasurementMatrix ones;
    ones.kind = MeasurementKind::ComplexGaussian;
    ones.entries = CMatrix::Ones(1, 15);
    const auto sys = build_sensing_system(ones, build_manifold(make_grid(0, 0, 1), geo));
    CHECK(std::abs(sys.psi()(0, 0) - Complex(15.0, 0.0)) < 1e-12);
  }
  SUBCASE("each psi column equals phi times its manifold column") {
    const auto phi = draw_measurement_matrix(10, 15, MeasurementKind::ComplexGaussian, 5);
    const auto sys = build_sensing_system(phi, A);
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      CVector col = CVector::Zero(10);
      for (Eigen::Index i = 0; i < 10; ++i)
        for (Eigen::Index k = 0; k < 15; ++k) col[i] += phi.entries(i, k) * A(k, j);
      CHECK(oracle::relative_error(sys.psi().col(j), col) < 1e-10);
      CHECK(std::abs(sys.column_norms()[j] - col.norm()) < 1e-10 * col.norm());
      CHECK(sys.column_norms()[j] > 0.0);
    }
  }
  SUBCASE("dimension mismatch and zero columns") {
    const auto phi = draw_measurement_matrix(10, 14, MeasurementKind::ComplexGaussian, 5);
    CHECK_THROWS_AS(build_sensing_system(phi, A), Error);
    CMatrix zero_col = A.leftCols(3);
    zero_col.col(1).setZero();
    try {
      build_sensing_system(draw_measurement_matrix(15, 15, MeasurementKind::Identity, 0), zero_col);
      FAIL("expected DegenerateColumn");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::DegenerateColumn);
    }
  }
}
