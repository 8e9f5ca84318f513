// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <numeric>

#include "csdoa/error.hpp"
#include "csdoa/spectrum.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace csdoa;

namespace {

SparseEstimate estimate_with(std::size_t length, std::vector<std::pair<std::size_t, Complex>> entries) {
  SparseEstimate e;
  e.coefficients = CVector::Zero(static_cast<Eigen::Index>(length));
  for (auto [j, v] : entries) {
    e.coefficients[static_cast<Eigen::Index>(j)] = v;
    e.support.push_back(j);
  }
  std::sort(e.support.begin(), e.support.end());
  return e;
}

AngleSpectrum spectrum_of(const AngleGrid& grid, std::vector<double> power) {
  return AngleSpectrum{grid, std::move(power)};
}

}  // namespace

TEST_CASE("angle_spectrum") {
  const auto grid = make_grid(-90, 90, 1);
  SUBCASE("real spike") {
    const auto s = angle_spectrum(estimate_with(181, {{30, {2.0, 0.0}}}), grid);
    for (std::size_t j = 0; j < 181; ++j) CHECK(s.power[j] == (j == 30 ? 4.0 : 0.0));
  }
  SUBCASE("zero estimate") {
    const auto s = angle_spectrum(estimate_with(181, {}), grid);
    CHECK(std::all_of(s.power.begin(), s.power.end(), [](double p) { return p == 0.0; }));
  }
  SUBCASE("complex spike") {
    CHECK(angle_spectrum(estimate_with(181, {{7, {3.0, -4.0}}}), grid).power[7] == 25.0);
  }
  SUBCASE("global phase does not change the spectrum") {
    oracle::Gaussian g(1);
    auto e = estimate_with(181, {{3, g.complex()}, {90, g.complex()}, {150, g.complex()}});
    const auto base = angle_spectrum(e, grid);
    e.coefficients *= std::polar(1.0, 1.234);
    const auto rotated = angle_spectrum(e, grid);
    for (std::size_t j = 0; j < 181; ++j) CHECK(rotated.power[j] == doctest::Approx(base.power[j]).epsilon(1e-14));
  }
  SUBCASE("length must match the grid") {
    CHECK_THROWS_AS(angle_spectrum(estimate_with(180, {}), grid), Error);
  }
}

TEST_CASE("pick_peaks") {
  const auto grid = make_grid(-90, 90, 1);
  SUBCASE("simulation-1 support") {
    std::vector<double> power(181, 0.0);
    power[*grid.index_of(40)] = 0.7;
    power[*grid.index_of(-60)] = 1.2;
    power[*grid.index_of(0)] = 0.9;
    const auto d = pick_peaks(spectrum_of(grid, power), 3);
    CHECK(d.doas_deg == std::vector<double>{-60, 0, 40});
    CHECK(d.powers == std::vector<double>{1.2, 0.9, 0.7});
  }
  SUBCASE("zero spectrum gives nothing") {
    CHECK(pick_peaks(spectrum_of(grid, std::vector<double>(181, 0.0)), 2).doas_deg.empty());
  }
  SUBCASE("top two of three") {
    const auto d = pick_peaks(spectrum_of(make_grid(-10, 10, 10), {1, 5, 3}), 2);
    CHECK(d.doas_deg == std::vector<double>{0, 10});
  }
  SUBCASE("ties go to the lower angle") {
    const auto d = pick_peaks(spectrum_of(make_grid(-10, 10, 10), {2, 1, 2}), 1);
    CHECK(d.doas_deg == std::vector<double>{-10});
  }
  SUBCASE("fewer positive entries than requested") {
    const auto d = pick_peaks(spectrum_of(make_grid(-10, 10, 10), {0, 1, 0}), 3);
    CHECK(d.doas_deg == std::vector<double>{0});
  }
  SUBCASE("a sparse estimate's peaks are its support") {
    oracle::Gaussian g(2);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<std::pair<std::size_t, Complex>> entries;
      std::vector<std::size_t> idx(181);
      std::iota(idx.begin(), idx.end(), 0u);
      std::shuffle(idx.begin(), idx.end(), g.engine());
      for (int k = 0; k < 3; ++k) entries.emplace_back(idx[k], g.complex() + Complex(1e-3, 0));
      const auto e = estimate_with(181, entries);
      const auto d = pick_peaks(angle_spectrum(e, grid), 3);
      std::vector<double> want;
      for (auto j : e.support) want.push_back(grid.angles_deg[j]);
      CHECK(d.doas_deg == want);
    }
  }
  CHECK_THROWS_AS(pick_peaks(spectrum_of(grid, std::vector<double>(181, 0.0)), 0), Error);
}

TEST_CASE("trial_error") {
  const auto truth = make_sources({-60, 60});
  SUBCASE("perfect") {
    const auto e = trial_error(DoaEstimate{{-60, 60}, {}}, truth);
    CHECK(e.errors_deg == std::vector<double>{0, 0});
    CHECK(e.misses == 0);
  }
  SUBCASE("unit offsets") {
    CHECK(trial_error(DoaEstimate{{-59, 61}, {}}, truth).errors_deg == std::vector<double>{1, 1});
  }
  SUBCASE("missed source costs the penalty") {
    const auto e = trial_error(DoaEstimate{{60}, {}}, truth);
    CHECK(e.errors_deg == std::vector<double>{180, 0});
    CHECK(e.misses == 1);
    const auto left = trial_error(DoaEstimate{{-58}, {}}, truth);
    CHECK(left.errors_deg == std::vector<double>{2, 180});
  }
  SUBCASE("nothing estimated") {
    const auto e = trial_error(DoaEstimate{}, make_sources({-60, 0, 40}));
    CHECK(e.errors_deg == std::vector<double>{180, 180, 180});
    CHECK(e.misses == 3);
  }
  SUBCASE("extra estimates are ignored") {
    const auto e = trial_error(DoaEstimate{{-61, 5, 60}, {}}, truth);
    CHECK(e.errors_deg == std::vector<double>{1, 0});
    CHECK(e.misses == 0);
  }
  SUBCASE("input order does not matter") {
    const auto a = trial_error(DoaEstimate{{40, -62, 1}, {}}, make_sources({0, 40, -60}));
    const auto b = trial_error(DoaEstimate{{-62, 1, 40}, {}}, make_sources({-60, 0, 40}));
    CHECK(a.errors_deg == b.errors_deg);
    CHECK(a.errors_deg == std::vector<double>{2, 1, 0});
  }
}
