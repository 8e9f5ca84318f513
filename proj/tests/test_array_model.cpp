// SPDX-License-Identifier: Apache-2.0
#include "csdoa/array_model.hpp"
#include "csdoa/error.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace csdoa;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected csdoa::Error");
  return ErrorCode::InvalidArgument;
}

double max_abs_diff(const CVector& a, const CVector& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("make_grid") {
  SUBCASE("full scan grid has 181 points") {
    const auto g = make_grid(-90, 90, 1);
    REQUIRE(g.size() == 181);
    CHECK(g.angles_deg.front() == -90.0);
    CHECK(g.angles_deg.back() == 90.0);
    for (std::size_t j = 1; j < g.size(); ++j) {
      CHECK(std::abs(g.angles_deg[j] - g.angles_deg[j - 1] - 1.0) < 1e-12);
    }
  }
  SUBCASE("step larger than the span yields a single point") {
    const auto g = make_grid(0, 0.5, 1);
    CHECK(g.angles_deg == std::vector<double>{0.0});
  }
  SUBCASE("coarse grid") {
    CHECK(make_grid(-10, 10, 5).angles_deg == std::vector<double>{-10, -5, 0, 5, 10});
  }
  SUBCASE("fractional step keeps its last point") {
    const auto g = make_grid(0, 0.3, 0.1);
    CHECK(g.size() == 4);
    CHECK(g.angles_deg.back() <= 0.3);
  }
  SUBCASE("errors") {
    CHECK(code_of([] { make_grid(0, 10, 0); }) == ErrorCode::NonPositiveStep);
    CHECK(code_of([] { make_grid(0, 10, -1); }) == ErrorCode::NonPositiveStep);
    CHECK(code_of([] { make_grid(10, 0, 1); }) == ErrorCode::EmptyGrid);
    CHECK(code_of([] { make_grid(-91, 0, 1); }) == ErrorCode::AngleOutOfRange);
  }
  SUBCASE("index_of") {
    const auto g = make_grid(-90, 90, 1);
    CHECK(g.index_of(-90.0) == 0u);
    CHECK(g.index_of(40.0) == 130u);
    CHECK_FALSE(g.index_of(40.5).has_value());
    CHECK_FALSE(g.index_of(91.0).has_value());
  }
}

TEST_CASE("steering_vector closed forms") {
  const ArrayGeometry four{4, 0.5};
  SUBCASE("broadside is all ones") {
    const auto a = steering_vector(0.0, ArrayGeometry{7, 0.5});
    CHECK(max_abs_diff(a, CVector::Ones(7)) == 0.0);
  }
  SUBCASE("endfire alternates sign") {
    CVector want(4);
    want << 1, -1, 1, -1;
    CHECK(max_abs_diff(steering_vector(90.0, four), want) < 1e-14);
  }
  SUBCASE("thirty degrees gives quarter turns") {
    CVector want(4);
    want << Complex(1, 0), Complex(0, -1), Complex(-1, 0), Complex(0, 1);
    CHECK(max_abs_diff(steering_vector(30.0, four), want) < 1e-14);
  }
  SUBCASE("element 0 is the phase reference") {
    CHECK(steering_vector(-37.0, four)[0] == Complex(1.0, 0.0));
  }
  SUBCASE("matches an explicit cos/sin evaluation") {
    for (double theta : {-89.0, -60.0, -1.0, 13.0, 75.0}) {
      CHECK(max_abs_diff(steering_vector(theta, ArrayGeometry{15, 0.37}),
                         oracle::steering(theta, 15, 0.37)) < 1e-12);
    }
  }
  SUBCASE("errors") {
    CHECK(code_of([&] { steering_vector(90.5, four); }) == ErrorCode::AngleOutOfRange);
    CHECK(code_of([] { steering_vector(0.0, ArrayGeometry{1, 0.5}); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([] { steering_vector(0.0, ArrayGeometry{4, 0.0}); }) == ErrorCode::InvalidArgument);
  }
}

TEST_CASE("steering identities over the scan grid") {
  const ArrayGeometry geo{15, 0.5};
  for (double theta : make_grid(-90, 90, 1).angles_deg) {
    const auto a = steering_vector(theta, geo);
    CHECK((a.cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-14);
    CHECK(std::abs(a.norm() - std::sqrt(15.0)) < 1e-12);
    CHECK(max_abs_diff(steering_vector(-theta, geo), a.conjugate()) < 1e-14);
  }
}

TEST_CASE("build_manifold") {
  SUBCASE("single broadside column") {
    const auto A = build_manifold(make_grid(0, 0, 1), ArrayGeometry{3, 0.5});
    CHECK(A.rows() == 3);
    CHECK(A.cols() == 1);
    CHECK(max_abs_diff(A.col(0), CVector::Ones(3)) == 0.0);
  }
  SUBCASE("15 x 181 manifold") {
    const ArrayGeometry geo{15, 0.5};
    const auto grid = make_grid(-90, 90, 1);
    const auto A = build_manifold(grid, geo);
    REQUIRE(A.rows() == 15);
    REQUIRE(A.cols() == 181);
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      CHECK(std::abs(A.col(j).norm() - std::sqrt(15.0)) < 1e-12);
      // Bit-exact against the standalone routine.
      CHECK((A.col(j) - steering_vector(grid.angles_deg[j], geo)).cwiseAbs().maxCoeff() == 0.0);
    }
  }
  SUBCASE("empty grid rejected") {
    AngleGrid empty;
    CHECK(code_of([&] { build_manifold(empty, ArrayGeometry{}); }) == ErrorCode::EmptyGrid);
  }
}

TEST_CASE("make_sources and SourceSet validation") {
  const auto s = make_sources({-60, 0, 40}, {{1, 2}});
  CHECK(s.coherent_groups == std::vector<std::vector<std::size_t>>{{0}, {1, 2}});
  CHECK(code_of([] { make_sources({10, 10}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { make_sources({}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { make_sources({1, 2}, {{0, 1}, {1}}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { make_sources({1, 2}, {{0, 5}}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { make_sources({95}); }) == ErrorCode::AngleOutOfRange);
}

TEST_CASE("synthesize") {
  const ArrayGeometry geo{15, 0.5};
  const auto grid = make_grid(-90, 90, 1);

  SUBCASE("noiseless unit source at broadside is the all-ones vector") {
    Rng rng(3);
    const auto snap = synthesize(geo, grid, make_sources({0}, {}, AmplitudeModel::UnitReal),
                                 kNoiseless, rng);
    CHECK(max_abs_diff(snap.data, CVector::Ones(15)) == 0.0);
    CHECK(snap.noise.norm() == 0.0);
  }
  SUBCASE("noiseless unit source equals its manifold column") {
    const auto A = build_manifold(grid, geo);
    for (double theta : {-73.0, 12.0, 88.0}) {
      Rng rng(1);
      const auto snap = synthesize(geo, grid, make_sources({theta}, {}, AmplitudeModel::UnitReal),
                                   kNoiseless, rng);
      CHECK((snap.data - A.col(static_cast<Eigen::Index>(*grid.index_of(theta)))).norm() == 0.0);
    }
  }
  SUBCASE("data is clean plus noise exactly") {
    Rng rng(8);
    const auto snap = synthesize(geo, grid, make_sources({-60, 0, 40}), 0.0, rng);
    CHECK((snap.data - (snap.clean + snap.noise)).cwiseAbs().maxCoeff() == 0.0);
    CHECK((snap.amplitudes.cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-14);
  }
  SUBCASE("coherent sources share one amplitude") {
    Rng rng(21);
    const auto snap = synthesize(geo, grid, make_sources({-60, 0, 40}, {{1, 2}}), 5.0, rng);
    CHECK(snap.amplitudes[1] == snap.amplitudes[2]);
    CHECK(snap.amplitudes[0] != snap.amplitudes[1]);
  }
  SUBCASE("reproducible from the seed") {
    Rng a(77), b(77);
    const auto sa = synthesize(geo, grid, make_sources({-60, 60}), 3.0, a);
    const auto sb = synthesize(geo, grid, make_sources({-60, 60}), 3.0, b);
    CHECK((sa.data - sb.data).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("empirical SNR converges to the configured SNR") {
    for (double snr : {0.0, 10.0}) {
      Rng rng(2024);
      double noise = 0, clean = 0;
      for (int i = 0; i < 10000; ++i) {
        const auto snap = synthesize(geo, grid, make_sources({-60, 0, 40}), snr, rng);
        noise += snap.noise.squaredNorm();
        clean += snap.clean.squaredNorm();
      }
      CHECK(noise / clean == doctest::Approx(std::pow(10.0, -snr / 10.0)).epsilon(0.05));
    }
  }
  SUBCASE("off-grid source and bad SNR rejected") {
    Rng rng(1);
    CHECK(code_of([&] { synthesize(geo, grid, make_sources({10.5}), 0.0, rng); }) ==
          ErrorCode::OffGridSource);
    CHECK(code_of([&] { synthesize(geo, grid, make_sources({10}), std::nan(""), rng); }) ==
          ErrorCode::InvalidArgument);
  }
}

TEST_CASE("synthesize_multi") {
  const ArrayGeometry geo{15, 0.5};
  const auto grid = make_grid(-90, 90, 1);
  const auto sources = make_sources({-60, 0, 40});

  SUBCASE("K = 1 equals synthesize") {
    Rng a(4), b(4);
    const auto multi = synthesize_multi(geo, grid, sources, 0.0, 1, a);
    const auto single = synthesize(geo, grid, sources, 0.0, b);
    REQUIRE(multi.size() == 1);
    CHECK((multi[0].data - single.data).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("independent noise per snapshot") {
    Rng rng(4);
    const auto multi = synthesize_multi(geo, grid, sources, 0.0, 3, rng);
    CHECK((multi[0].noise - multi[1].noise).norm() > 0.0);
    CHECK((multi[1].noise - multi[2].noise).norm() > 0.0);
    CHECK((multi[0].noise - multi[2].noise).norm() > 0.0);
  }
  SUBCASE("one coherent group makes the clean snapshots rank one") {
    Rng rng(9);
    const auto all = make_sources({-60, 0, 40}, {{0, 1, 2}});
    const auto multi = synthesize_multi(geo, grid, all, kNoiseless, 2, rng);
    const CVector& x1 = multi[0].clean;
    const CVector& x2 = multi[1].clean;
    const Complex g12 = x1.dot(x2);
    const double det = x1.squaredNorm() * x2.squaredNorm() - std::norm(g12);
    CHECK(std::abs(det) < 1e-10 * x1.squaredNorm() * x2.squaredNorm());
  }
  SUBCASE("K must be positive") {
    Rng rng(1);
    CHECK(code_of([&] { synthesize_multi(geo, grid, sources, 0.0, 0, rng); }) ==
          ErrorCode::InvalidArgument);
  }
}
