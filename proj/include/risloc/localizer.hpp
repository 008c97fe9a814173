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
//
// The estimator side. It sees only a measurement log (per-slot RIS phase
// configurations and received samples) plus the fixed infrastructure
// constants; it never touches MS ground truth. Processing: separate the
// four calibration slots into per-link components, then for each RIS sweep
// a phase ramp, locate the array-gain peak, invert the peak magnitude to a
// RIS-MS distance, and trilaterate the three distances.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "risloc/channel.hpp"
#include "risloc/geometry.hpp"

namespace risloc {

// ---------------------------------------------------------------- schedule

/// One transmission slot: the phase profile commanded at every RIS, and how
/// many repeated pilot transmissions to average.
struct SlotConfig {
  std::array<PhaseProfile, 3> profiles{UniformPhase{0.0}, UniformPhase{0.0},
                                       UniformPhase{0.0}};
  std::size_t repeats = 1;
  bool operator==(const SlotConfig&) const = default;
};

/// One executed slot: its configuration and the (averaged) received sample.
struct LogEntry {
  SlotConfig config;
  Complex sample{0.0, 0.0};
};

/// Ordered record of an acquisition round: 4 calibration slots followed by
/// three sweep blocks (RIS 1, 2, 3).
struct MeasurementLog {
  std::vector<LogEntry> entries;

  /// Total pilot transmissions represented, counting repeats.
  std::size_t transmission_count() const;
};

/// The four calibration slots. All-element uniform phases per RIS:
/// (0,0,0), (0,pi,0), (pi,pi,0), (0,0,pi).
std::array<SlotConfig, 4> calibration_schedule(std::size_t repeats);

/// Sweep block for one RIS (0-based index): n_points slots where that RIS
/// runs a linear ramp of step 2*pi*s/n_points, s = 0..n_points-1, and the
/// other two hold uniform zero phase. Throws std::invalid_argument for
/// ris_index > 2 or n_points < 2.
std::vector<SlotConfig> sweep_schedule(std::size_t ris_index,
                                       std::size_t n_points,
                                       std::size_t repeats);

// -------------------------------------------------------------- separation

/// Per-link components recovered from the calibration slots.
struct SeparatedComponents {
  Complex direct;              // direct link plus noise average
  std::array<Complex, 3> ris;  // one two-hop component per RIS
};

/// Invert the calibration combinations: with y_k the sample of calibration
/// slot k, ris1 = (y2 - y3)/2, ris2 = (y1 - y2)/2, ris3 = (y1 - y4)/2,
/// direct = (y3 + y4)/2.
SeparatedComponents separate_components(Complex y1, Complex y2, Complex y3,
                                        Complex y4);

/// Sweep sample with everything but the swept RIS removed: subtracts the
/// direct component and the two idle RIS components (at their sweep-block
/// state, uniform zero phase, equal to their calibration-slot values).
Complex sweep_residual(Complex y_sweep, const SeparatedComponents& c,
                       std::size_t swept_ris);

// ------------------------------------------------------------- peak search

struct PeakEstimate {
  double rho_star = 0.0;   // refined peak location, rad
  double magnitude = 0.0;  // refined |peak|
  bool flat = false;       // all grid magnitudes equal; location meaningless
};

/// Grid argmax plus cyclic three-point quadratic refinement of both the
/// location and the magnitude. Grid points are positions in [0, 2*pi);
/// magnitudes and grid must have equal size >= 3 or std::invalid_argument.
PeakEstimate peak_search(std::span<const double> magnitudes,
                         std::span<const double> grid_rad);

// -------------------------------------------------------------- estimation

/// Everything the estimator is allowed to know: infrastructure geometry and
/// constants. Contains nothing derived from the MS position.
struct EstimatorKnowledge {
  Position3 bs;
  std::array<Position3, 3> ris;
  std::array<double, 3> rho_bs_ris;    // known BS-RIS path losses
  std::array<double, 3> theta_bs_ris;  // known BS departure angles
  std::size_t n_bs = 0;
  std::array<std::size_t, 3> n_ris{};
  double k_bs = 0.0;
  std::array<double, 3> k_ris{};
  double mu = 2.0;
  Complex pilot{1.0, 0.0};
  double ms_height_m = 0.0;

  static EstimatorKnowledge from_scene(const Scene& scene);
};

/// Invert a residual peak magnitude to the RIS-MS distance:
/// |peak| = rho_bs_ris * dist^{-mu/2} * n_ris * |pilot * Xi|, solved for
/// dist. Throws std::invalid_argument for peak_magnitude <= 0 and
/// std::domain_error when |Xi| vanishes (no invertible signal).
double estimate_distance(double peak_magnitude, std::size_t ris_index,
                         const EstimatorKnowledge& kn);

struct LocalizationWarnings {
  bool clamped_range = false;
  std::array<bool, 3> flat_sweep{false, false, false};

  /// Bit 0: clamped_range; bits 1..3: flat_sweep per RIS.
  std::uint32_t bits() const;
};

struct LocalizationResult {
  std::array<double, 3> distances_m{};
  std::array<double, 3> rho_star{};
  Position2 position;
  double residual_norm = 0.0;
  LocalizationWarnings warnings;
};

/// Run the full pipeline on a measurement log. The log must contain the
/// four calibration slots followed by three sweep blocks in RIS order;
/// structural violations throw std::invalid_argument with a message naming
/// the first offending entry.
LocalizationResult localize(const MeasurementLog& log,
                            const EstimatorKnowledge& kn);

/// Arithmetic mean of repeated complex samples.
Complex coherent_average(std::span<const Complex> samples);

}  // namespace risloc
