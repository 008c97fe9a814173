// SPDX-License-Identifier: Apache-2.0
//
// ris-locate  RIS-assisted MISO localization simulator and estimator
// Copyright (C) 2026 ris-locate contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "risloc/localizer.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "risloc/harness.hpp"
#include "risloc/rng.hpp"

using namespace risloc;

namespace {

Complex expi(double phase) { return std::exp(Complex{0.0, phase}); }

Complex brute_phase_sum(double step, std::size_t n) {
  Complex s{0.0, 0.0};
  for (std::size_t t = 0; t < n; ++t) {
    s += expi(static_cast<double>(t) * step);
  }
  return s;
}

}  // namespace

TEST_CASE("calibration schedule carries the four sign patterns") {
  auto cal = calibration_schedule(3);
  REQUIRE(cal.size() == 4);
  const double want[4][3] = {{0, 0, 0},
                             {0, M_PI, 0},
                             {M_PI, M_PI, 0},
                             {0, 0, M_PI}};
  for (std::size_t s = 0; s < 4; ++s) {
    CHECK(cal[s].repeats == 3);
    for (std::size_t g = 0; g < 3; ++g) {
      const auto* u = std::get_if<UniformPhase>(&cal[s].profiles[g]);
      REQUIRE(u != nullptr);
      CHECK(u->value == want[s][g]);
    }
  }
}

TEST_CASE("sweep schedule ramps one RIS and parks the others") {
  auto slots = sweep_schedule(2, 4, 2);
  REQUIRE(slots.size() == 4);
  const double steps[4] = {0.0, M_PI / 2.0, M_PI, 3.0 * M_PI / 2.0};
  for (std::size_t s = 0; s < 4; ++s) {
    CHECK(slots[s].repeats == 2);
    const auto* ramp = std::get_if<LinearRamp>(&slots[s].profiles[2]);
    REQUIRE(ramp != nullptr);
    CHECK(ramp->step == doctest::Approx(steps[s]).epsilon(1e-15));
    for (std::size_t g = 0; g < 2; ++g) {
      const auto* u = std::get_if<UniformPhase>(&slots[s].profiles[g]);
      REQUIRE(u != nullptr);
      CHECK(u->value == 0.0);
    }
  }
  CHECK_THROWS_AS(sweep_schedule(3, 4, 1), std::invalid_argument);
  CHECK_THROWS_AS(sweep_schedule(0, 1, 1), std::invalid_argument);
}

TEST_CASE("separate_components inverts the calibration combinations") {
  // Worked example: components (direct, ris1, ris2, ris3) = (1, j, 2, -1)
  // under the four sign patterns give these received samples.
  Complex y1{2.0, 1.0};
  Complex y2{-2.0, 1.0};
  Complex y3{-2.0, -1.0};
  Complex y4{4.0, 1.0};
  SeparatedComponents c = separate_components(y1, y2, y3, y4);
  CHECK(std::abs(c.direct - Complex{1.0, 0.0}) < 1e-15);
  CHECK(std::abs(c.ris[0] - Complex{0.0, 1.0}) < 1e-15);
  CHECK(std::abs(c.ris[1] - Complex{2.0, 0.0}) < 1e-15);
  CHECK(std::abs(c.ris[2] - Complex{-1.0, 0.0}) < 1e-15);
}

TEST_CASE("separation round-trips random components") {
  NoiseStream rng(404);
  for (int i = 0; i < 200; ++i) {
    Complex h0{rng.uniform01() - 0.5, rng.uniform01() - 0.5};
    Complex h1{rng.uniform01() - 0.5, rng.uniform01() - 0.5};
    Complex h2{rng.uniform01() - 0.5, rng.uniform01() - 0.5};
    Complex h3{rng.uniform01() - 0.5, rng.uniform01() - 0.5};
    Complex y1 = h0 + h1 + h2 + h3;
    Complex y2 = h0 + h1 - h2 + h3;
    Complex y3 = h0 - h1 - h2 + h3;
    Complex y4 = h0 + h1 + h2 - h3;
    SeparatedComponents c = separate_components(y1, y2, y3, y4);
    CHECK(std::abs(c.direct - h0) < 1e-13);
    CHECK(std::abs(c.ris[0] - h1) < 1e-13);
    CHECK(std::abs(c.ris[1] - h2) < 1e-13);
    CHECK(std::abs(c.ris[2] - h3) < 1e-13);
  }
}

TEST_CASE("sweep_residual strips everything but the swept component") {
  SeparatedComponents c;
  c.direct = {1.0, 1.0};
  c.ris = {Complex{0.5, 0.0}, Complex{0.0, 0.5}, Complex{-0.5, 0.0}};
  Complex swept_value{2.0, -1.0};
  Complex y = c.direct + c.ris[0] + swept_value + c.ris[2];
  CHECK(std::abs(sweep_residual(y, c, 1) - swept_value) < 1e-15);
  CHECK_THROWS_AS(sweep_residual(y, c, 3), std::invalid_argument);
}

TEST_CASE("peak_search recovers an off-grid parabola vertex") {
  const std::size_t n = 16;
  std::vector<double> grid(n), mags(n);
  double step = 2.0 * M_PI / n;
  double vertex = 5.3;
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = i * step;
    double d = static_cast<double>(i) - vertex;
    mags[i] = 10.0 - 0.2 * d * d;
  }
  PeakEstimate est = peak_search(mags, grid);
  CHECK_FALSE(est.flat);
  CHECK(est.rho_star == doctest::Approx(vertex * step).epsilon(1e-12));
  CHECK(est.magnitude == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("peak_search wraps cyclically at the grid boundary") {
  const std::size_t n = 16;
  std::vector<double> grid(n), mags(n);
  double step = 2.0 * M_PI / n;
  double vertex = 0.25;  // between the last and first grid points
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = i * step;
    double d = std::abs(static_cast<double>(i) - vertex);
    d = std::min(d, static_cast<double>(n) - d);
    mags[i] = 8.0 - d * d;
  }
  PeakEstimate est = peak_search(mags, grid);
  CHECK(est.rho_star == doctest::Approx(vertex * step).epsilon(1e-12));
}

TEST_CASE("peak_search reports flat sweeps and validates input") {
  std::vector<double> grid{0.0, 1.0, 2.0, 3.0};
  std::vector<double> flat{5.0, 5.0, 5.0, 5.0};
  PeakEstimate est = peak_search(flat, grid);
  CHECK(est.flat);
  CHECK(est.rho_star == 0.0);
  CHECK(est.magnitude == 5.0);

  std::vector<double> two{1.0, 2.0};
  CHECK_THROWS_AS(peak_search(two, std::vector<double>{0.0, 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(peak_search(flat, two), std::invalid_argument);
}

TEST_CASE("estimator knowledge is free of mobile-side information") {
  Scene a = Scene::reference();
  Scene b = a;
  b.geometry.ms_true = {12.0, -34.0, 7.0};
  EstimatorKnowledge ka = EstimatorKnowledge::from_scene(a);
  EstimatorKnowledge kb = EstimatorKnowledge::from_scene(b);
  CHECK(ka.rho_bs_ris == kb.rho_bs_ris);
  CHECK(ka.theta_bs_ris == kb.theta_bs_ris);
  CHECK(ka.k_bs == kb.k_bs);
  CHECK(ka.n_bs == kb.n_bs);

  CHECK(ka.rho_bs_ris[0] ==
        doctest::Approx(1.0 / std::sqrt(1400.0)).epsilon(1e-12));
  CHECK(ka.theta_bs_ris[0] == doctest::Approx(M_PI / 6.0));
  CHECK(ka.ms_height_m == 0.0);
}

TEST_CASE("estimate_distance inverts the forward magnitude model") {
  EstimatorKnowledge kn;
  kn.n_bs = 4;
  kn.k_bs = M_PI / 2.0;
  kn.theta_bs_ris = {M_PI / 3.0, M_PI / 3.0, M_PI / 3.0};
  kn.rho_bs_ris = {0.04, 0.04, 0.04};
  kn.n_ris = {100, 100, 100};
  kn.mu = 2.0;
  kn.pilot = {1.0, 0.0};

  double xi_mag =
      std::abs(brute_phase_sum(-kn.k_bs * std::cos(M_PI / 3.0), 4));
  double d_true = 50.0;
  double peak = 0.04 * std::pow(d_true, -1.0) * 100.0 * xi_mag;
  CHECK(estimate_distance(peak, 0, kn) ==
        doctest::Approx(50.0).epsilon(1e-12));

  kn.mu = 4.0;
  peak = 0.04 * std::pow(d_true, -2.0) * 100.0 * xi_mag;
  CHECK(estimate_distance(peak, 1, kn) ==
        doctest::Approx(50.0).epsilon(1e-12));

  CHECK_THROWS_AS(estimate_distance(0.0, 0, kn), std::invalid_argument);
  CHECK_THROWS_AS(estimate_distance(-1.0, 0, kn), std::invalid_argument);
  CHECK_THROWS_AS(estimate_distance(1.0, 5, kn), std::invalid_argument);

  // Two antennas in perfect opposition: the departure sum vanishes and the
  // magnitude carries no distance information.
  EstimatorKnowledge null_kn = kn;
  null_kn.n_bs = 2;
  null_kn.k_bs = M_PI;
  null_kn.theta_bs_ris = {0.0, 0.0, 0.0};
  CHECK_THROWS_AS(estimate_distance(0.1, 0, null_kn), std::domain_error);
}

TEST_CASE("transmission_count sums repeats") {
  MeasurementLog log;
  SlotConfig c;
  c.repeats = 5;
  log.entries.push_back({c, Complex{}});
  c.repeats = 2;
  log.entries.push_back({c, Complex{}});
  CHECK(log.transmission_count() == 7);
  CHECK(MeasurementLog{}.transmission_count() == 0);
}

TEST_CASE("coherent_average is the arithmetic mean") {
  std::vector<Complex> v{{1.0, 0.0}, {3.0, 2.0}};
  CHECK(std::abs(coherent_average(v) - Complex{2.0, 1.0}) < 1e-15);
  CHECK_THROWS_AS(coherent_average(std::vector<Complex>{}),
                  std::invalid_argument);
}

TEST_CASE("localize recovers the reference position from a noiseless log") {
  Scene s = Scene::reference();
  ChannelSimulator sim(s);
  EstimatorKnowledge kn = EstimatorKnowledge::from_scene(s);
  NoiseStream unused(0);
  MeasurementLog log = simulate_measurement_log(sim, 1600, 1, 0.0, unused);
  CHECK(log.entries.size() == 4 + 3 * 1600);
  CHECK(log.transmission_count() == 4 + 3 * 1600);

  LocalizationResult r = localize(log, kn);
  CHECK(std::abs(r.position.x - 60.0) < 1e-6);
  CHECK(std::abs(r.position.y - 20.0) < 1e-6);
  for (std::size_t g = 0; g < 3; ++g) {
    double true_d = distance(s.geometry.ris[g], s.geometry.ms_true);
    CHECK(std::abs(r.distances_m[g] - true_d) < 1e-6);
    CHECK_FALSE(r.warnings.flat_sweep[g]);
  }
  CHECK_FALSE(r.warnings.clamped_range);
  CHECK(r.warnings.bits() == 0);
}

TEST_CASE("localize handles peaks that fall between grid points") {
  Scene s = Scene::reference();
  // Departure angles toward the mobile differ from the arrival angles, so
  // the sweep peak lands off the grid and interpolation has to work.
  s.aod_ris_ms = {0.4, 1.1, 0.9};
  ChannelSimulator sim(s);
  EstimatorKnowledge kn = EstimatorKnowledge::from_scene(s);
  NoiseStream unused(0);
  MeasurementLog log = simulate_measurement_log(sim, 1600, 1, 0.0, unused);
  LocalizationResult r = localize(log, kn);

  double err = std::hypot(r.position.x - 60.0, r.position.y - 20.0);
  CHECK(err < 1e-2);

  double k = s.k_ris(0);
  for (std::size_t g = 0; g < 3; ++g) {
    double want = std::fmod(
        k * (std::cos(s.aod_ris_ms[g]) - std::cos(s.aoa_bs_ris[g])),
        2.0 * M_PI);
    if (want < 0.0) want += 2.0 * M_PI;
    CHECK(std::abs(r.rho_star[g] - want) < 1e-3);
  }
}

TEST_CASE("localize rejects malformed logs") {
  Scene s = Scene::reference();
  s.n_ris = {8, 8, 8};
  ChannelSimulator sim(s);
  EstimatorKnowledge kn = EstimatorKnowledge::from_scene(s);
  NoiseStream unused(0);
  MeasurementLog log = simulate_measurement_log(sim, 16, 1, 0.0, unused);
  REQUIRE_NOTHROW(localize(log, kn));

  // Calibration slots out of order.
  MeasurementLog swapped = log;
  std::swap(swapped.entries[0], swapped.entries[2]);
  CHECK_THROWS_AS(localize(swapped, kn), std::invalid_argument);

  // A sweep slot that parked the swept RIS instead of ramping it.
  MeasurementLog parked = log;
  parked.entries[4 + 3].config.profiles[0] = UniformPhase{0.0};
  CHECK_THROWS_AS(localize(parked, kn), std::invalid_argument);

  // An idle RIS that was not actually parked at zero.
  MeasurementLog busy = log;
  busy.entries[4 + 1].config.profiles[1] = UniformPhase{0.5};
  CHECK_THROWS_AS(localize(busy, kn), std::invalid_argument);

  // Sweep entries that do not divide into three equal blocks.
  MeasurementLog ragged = log;
  ragged.entries.pop_back();
  CHECK_THROWS_AS(localize(ragged, kn), std::invalid_argument);

  // Too short to hold calibration plus three sweeps.
  MeasurementLog tiny = log;
  tiny.entries.resize(7);
  CHECK_THROWS_AS(localize(tiny, kn), std::invalid_argument);
}
