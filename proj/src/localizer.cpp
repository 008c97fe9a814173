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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace risloc {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

/// Tolerance for recognizing scheduled phases in a log.
constexpr double kPhaseTol = 1e-12;

bool is_uniform_near(const PhaseProfile& p, double value) {
  const auto* u = std::get_if<UniformPhase>(&p);
  return u != nullptr && std::abs(u->value - value) <= kPhaseTol;
}

bool is_ramp_near(const PhaseProfile& p, double step) {
  const auto* r = std::get_if<LinearRamp>(&p);
  return r != nullptr && std::abs(r->step - step) <= kPhaseTol;
}

[[noreturn]] void malformed(std::size_t entry, const std::string& what) {
  throw std::invalid_argument("localize: log entry " + std::to_string(entry) +
                              ": " + what);
}

}  // namespace

std::size_t MeasurementLog::transmission_count() const {
  std::size_t n = 0;
  for (const auto& e : entries) {
    n += e.config.repeats;
  }
  return n;
}

std::array<SlotConfig, 4> calibration_schedule(std::size_t repeats) {
  auto slot = [repeats](double w1, double w2, double w3) {
    SlotConfig c;
    c.profiles = {UniformPhase{w1}, UniformPhase{w2}, UniformPhase{w3}};
    c.repeats = repeats;
    return c;
  };
  // Flipping one RIS by pi negates its component; these four sign patterns
  // make the separation combinations in separate_components exact.
  return {slot(0.0, 0.0, 0.0), slot(0.0, M_PI, 0.0), slot(M_PI, M_PI, 0.0),
          slot(0.0, 0.0, M_PI)};
}

std::vector<SlotConfig> sweep_schedule(std::size_t ris_index,
                                       std::size_t n_points,
                                       std::size_t repeats) {
  if (ris_index > 2) {
    throw std::invalid_argument("sweep_schedule: ris_index must be 0..2");
  }
  if (n_points < 2) {
    throw std::invalid_argument("sweep_schedule: need at least 2 points");
  }
  std::vector<SlotConfig> slots(n_points);
  for (std::size_t s = 0; s < n_points; ++s) {
    SlotConfig c;
    c.repeats = repeats;
    c.profiles = {UniformPhase{0.0}, UniformPhase{0.0}, UniformPhase{0.0}};
    c.profiles[ris_index] =
        LinearRamp{kTwoPi * static_cast<double>(s) /
                   static_cast<double>(n_points)};
    slots[s] = c;
  }
  return slots;
}

SeparatedComponents separate_components(Complex y1, Complex y2, Complex y3,
                                        Complex y4) {
  SeparatedComponents c;
  c.ris[0] = 0.5 * (y2 - y3);
  c.ris[1] = 0.5 * (y1 - y2);
  c.ris[2] = 0.5 * (y1 - y4);
  c.direct = 0.5 * (y3 + y4);
  return c;
}

Complex sweep_residual(Complex y_sweep, const SeparatedComponents& c,
                       std::size_t swept_ris) {
  if (swept_ris > 2) {
    throw std::invalid_argument("sweep_residual: swept_ris must be 0..2");
  }
  Complex r = y_sweep - c.direct;
  for (std::size_t g = 0; g < 3; ++g) {
    if (g != swept_ris) {
      r -= c.ris[g];
    }
  }
  return r;
}

PeakEstimate peak_search(std::span<const double> magnitudes,
                         std::span<const double> grid_rad) {
  std::size_t n = magnitudes.size();
  if (n < 3 || grid_rad.size() != n) {
    throw std::invalid_argument(
        "peak_search: need matching grids of at least 3 points");
  }

  auto it = std::max_element(magnitudes.begin(), magnitudes.end());
  auto mn = std::min_element(magnitudes.begin(), magnitudes.end());
  std::size_t i = static_cast<std::size_t>(it - magnitudes.begin());

  PeakEstimate est;
  if (*it == *mn) {
    est.rho_star = grid_rad[0];
    est.magnitude = magnitudes[0];
    est.flat = true;
    return est;
  }

  // Cyclic three-point parabola through the argmax and its neighbors; the
  // sweep grid is periodic so wrapping is exact.
  double a = magnitudes[(i + n - 1) % n];
  double b = magnitudes[i];
  double c = magnitudes[(i + 1) % n];
  double denom = a - 2.0 * b + c;
  double delta = 0.0;
  double fitted = b;
  if (denom < 0.0) {
    delta = 0.5 * (a - c) / denom;
    delta = std::clamp(delta, -0.5, 0.5);
    fitted = b - 0.25 * (a - c) * delta;
  }
  double step = grid_rad[1] - grid_rad[0];
  double loc = std::fmod(grid_rad[i] + delta * step, kTwoPi);
  if (loc < 0.0) loc += kTwoPi;
  est.rho_star = loc;
  est.magnitude = std::max(fitted, b);
  return est;
}

EstimatorKnowledge EstimatorKnowledge::from_scene(const Scene& scene) {
  EstimatorKnowledge kn;
  kn.bs = scene.geometry.bs;
  kn.ris = scene.geometry.ris;
  // BS-RIS links are between fixed infrastructure; their losses and
  // departure angles are known to the estimator. Nothing here depends on
  // the MS position.
  LinkSet links = make_links(scene);
  for (std::size_t g = 0; g < 3; ++g) {
    kn.rho_bs_ris[g] = links.bs_ris[g].rho;
    kn.theta_bs_ris[g] = links.bs_ris[g].aod_theta;
    kn.n_ris[g] = scene.n_ris[g];
    kn.k_ris[g] = scene.k_ris(g);
  }
  kn.n_bs = scene.n_bs;
  kn.k_bs = scene.k_bs();
  kn.mu = scene.geometry.mu;
  kn.pilot = scene.pilot;
  kn.ms_height_m = scene.ms_height_m;
  return kn;
}

double estimate_distance(double peak_magnitude, std::size_t ris_index,
                         const EstimatorKnowledge& kn) {
  if (ris_index > 2) {
    throw std::invalid_argument("estimate_distance: ris_index must be 0..2");
  }
  if (!(peak_magnitude > 0.0) || !std::isfinite(peak_magnitude)) {
    throw std::invalid_argument(
        "estimate_distance: peak magnitude must be positive and finite");
  }
  Complex x = xi(kn.n_bs, kn.k_bs, kn.theta_bs_ris[ris_index]);
  double xi_mag = std::abs(kn.pilot * x);
  if (xi_mag <= 1e-6 * static_cast<double>(kn.n_bs)) {
    throw std::domain_error(
        "estimate_distance: departure sum is near zero; magnitude is not "
        "invertible");
  }
  double denom = kn.rho_bs_ris[ris_index] *
                 static_cast<double>(kn.n_ris[ris_index]) * xi_mag;
  // |peak| = rho * d^{-mu/2} * n_ris * |pilot Xi|  =>  d.
  return std::pow(peak_magnitude / denom, -2.0 / kn.mu);
}

std::uint32_t LocalizationWarnings::bits() const {
  std::uint32_t b = clamped_range ? 1u : 0u;
  for (std::size_t g = 0; g < 3; ++g) {
    if (flat_sweep[g]) {
      b |= (1u << (g + 1));
    }
  }
  return b;
}

Complex coherent_average(std::span<const Complex> samples) {
  if (samples.empty()) {
    throw std::invalid_argument("coherent_average: no samples");
  }
  Complex s{0.0, 0.0};
  for (const Complex& v : samples) {
    s += v;
  }
  return s / static_cast<double>(samples.size());
}

LocalizationResult localize(const MeasurementLog& log,
                            const EstimatorKnowledge& kn) {
  const auto& e = log.entries;
  if (e.size() < 4 + 3 * 2) {
    throw std::invalid_argument(
        "localize: log too short for 4 calibration slots and 3 sweep blocks");
  }
  if ((e.size() - 4) % 3 != 0) {
    throw std::invalid_argument(
        "localize: sweep entries do not divide into 3 equal blocks");
  }
  std::size_t sweep_points = (e.size() - 4) / 3;

  // Calibration block: uniform patterns (0,0,0), (0,pi,0), (pi,pi,0),
  // (0,0,pi).
  const double expected_cal[4][3] = {{0.0, 0.0, 0.0},
                                     {0.0, M_PI, 0.0},
                                     {M_PI, M_PI, 0.0},
                                     {0.0, 0.0, M_PI}};
  for (std::size_t s = 0; s < 4; ++s) {
    for (std::size_t g = 0; g < 3; ++g) {
      if (!is_uniform_near(e[s].config.profiles[g], expected_cal[s][g])) {
        malformed(s, "expected calibration slot " + std::to_string(s + 1));
      }
    }
  }

  SeparatedComponents comps = separate_components(e[0].sample, e[1].sample,
                                                  e[2].sample, e[3].sample);

  LocalizationResult out;
  std::array<double, 3> distances{};
  for (std::size_t g = 0; g < 3; ++g) {
    std::vector<double> mags(sweep_points);
    std::vector<double> grid(sweep_points);
    for (std::size_t s = 0; s < sweep_points; ++s) {
      std::size_t idx = 4 + g * sweep_points + s;
      double expected_step = kTwoPi * static_cast<double>(s) /
                             static_cast<double>(sweep_points);
      const SlotConfig& cfg = e[idx].config;
      for (std::size_t other = 0; other < 3; ++other) {
        if (other == g) continue;
        if (!is_uniform_near(cfg.profiles[other], 0.0)) {
          malformed(idx, "idle RIS " + std::to_string(other + 1) +
                             " is not at uniform zero phase");
        }
      }
      const auto* ramp = std::get_if<LinearRamp>(&cfg.profiles[g]);
      if (ramp == nullptr || !is_ramp_near(cfg.profiles[g], expected_step)) {
        malformed(idx, "expected sweep ramp step " +
                           std::to_string(expected_step) + " on RIS " +
                           std::to_string(g + 1));
      }
      grid[s] = ramp->step;
      mags[s] = std::abs(sweep_residual(e[idx].sample, comps, g));
    }

    PeakEstimate peak = peak_search(mags, grid);
    out.warnings.flat_sweep[g] = peak.flat;
    out.rho_star[g] = peak.rho_star;
    distances[g] = estimate_distance(peak.magnitude, g, kn);
  }

  TrilaterationResult tri = trilaterate(distances, kn.ris, kn.ms_height_m);
  out.distances_m = distances;
  out.position = tri.position;
  out.residual_norm = tri.residual_norm;
  out.warnings.clamped_range = tri.clamped_range;
  return out;
}

}  // namespace risloc
