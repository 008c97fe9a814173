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
// Monte Carlo experiment drivers. Each trial simulates one acquisition
// round (4 calibration slots + 3 sweep blocks) at a given noise level and
// runs the estimator on the resulting log. Seeds are derived per
// (experiment group, trial), so results are byte-identical across reruns
// and across thread counts.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "risloc/channel.hpp"
#include "risloc/geometry.hpp"
#include "risloc/localizer.hpp"
#include "risloc/rng.hpp"

namespace risloc {

/// Knobs shared by the experiment drivers.
struct ExperimentConfig {
  Scene scene = Scene::reference();
  std::vector<double> snr_grid_db{0, 6, 12, 18, 24};
  std::vector<std::size_t> n_ris_grid{25, 50, 100, 200};
  std::size_t trials = 200;
  std::uint64_t master_seed = 1;
  std::size_t sweep_points_per_element = 16;  // grid = this * n_ris points
  std::size_t repeats = 1;                    // pilot repeats per slot
  double elements_snr_db = 12.0;              // SNR held in elements sweep
  bool baseline_mode = false;                 // set by the compare subcommand
  std::size_t threads = 1;
};

/// Noise scale for a target SNR: sigma^2 = |y_cal1|^2 / 10^(snr_db/10),
/// where y_cal1 is the noiseless sample of the first calibration slot
/// (all RIS phases zero).
double snr_to_sigma(const ChannelSimulator& sim, double snr_db);

/// Simulate one full acquisition round. Each slot is received `repeats`
/// times and coherently averaged.
MeasurementLog simulate_measurement_log(const ChannelSimulator& sim,
                                        std::size_t sweep_points,
                                        std::size_t repeats, double sigma,
                                        NoiseStream& noise);

// --------------------------------------------------------------- noiseless

struct TrajectoryPoint {
  Position2 actual;
  Position2 estimated;
  double error_m = 0.0;
  bool failed = false;       // estimator threw; estimated is zero
  std::string failure;
};

/// Run the noiseless pipeline over a list of MS positions (same height as
/// scene.ms_height_m). Per-point estimator failures are recorded, not fatal.
std::vector<TrajectoryPoint> run_noiseless(const Scene& scene,
                                           const std::vector<Position2>& path,
                                           std::size_t sweep_points_per_element,
                                           std::size_t repeats);

/// Default evaluation path: n_points on a circle of the given radius around
/// the scene's true MS position.
std::vector<Position2> circle_path(const Scene& scene, std::size_t n_points,
                                   double radius_m);

// ------------------------------------------------------------- Monte Carlo

struct TrialResult {
  std::size_t trial = 0;
  double snr_db = 0.0;
  std::size_t n_ris = 0;
  std::array<double, 3> distance_errors_m{};
  double position_error_m = 0.0;
  Position2 estimated;
  std::uint32_t warnings = 0;
  bool failed = false;
};

/// Aggregates of position error over the trials of one sweep point.
/// Statistics stay NaN when every trial of the point failed.
struct SummaryRow {
  double key = 0.0;          // snr_db or n_ris, depending on the sweep
  double mean_err_m = std::numeric_limits<double>::quiet_NaN();
  double median_err_m = std::numeric_limits<double>::quiet_NaN();
  double p90_err_m = std::numeric_limits<double>::quiet_NaN();
  std::size_t trials = 0;
};

double mean(const std::vector<double>& v);
double median(std::vector<double> v);   // average of middle pair when even
double percentile90(std::vector<double> v);  // nearest-rank

struct SweepResult {
  std::vector<TrialResult> trials;
  std::vector<SummaryRow> summary;
};

/// Position error vs SNR at the scene's configured array sizes.
SweepResult run_snr_sweep(const ExperimentConfig& cfg);

/// Position error vs per-RIS element count at cfg.elements_snr_db. The
/// sweep grid replaces all three RIS sizes; sigma is recomputed per point.
SweepResult run_elements_sweep(const ExperimentConfig& cfg);

// -------------------------------------------------------------- comparison

struct ComparisonTrial {
  std::size_t trial = 0;
  double snr_db = 0.0;
  double proposed_err_m = 0.0;
  double baseline_err_m = 0.0;
  bool proposed_failed = false;
  bool baseline_failed = false;
};

/// Medians stay NaN when no pair survived at the SNR point.
struct ComparisonSummaryRow {
  double snr_db = 0.0;
  double proposed_median_m = std::numeric_limits<double>::quiet_NaN();
  double baseline_median_m = std::numeric_limits<double>::quiet_NaN();
  std::size_t trials = 0;
};

struct ComparisonResult {
  std::vector<ComparisonTrial> trials;
  std::vector<ComparisonSummaryRow> summary;
};

/// The scene with the BS reduced to a single antenna; everything else,
/// including the noise level, is inherited from the proposed arm.
Scene baseline_variant(const Scene& scene);

/// Paired comparison of the full array against the single-antenna baseline.
/// Both arms share per-trial noise seeds and the sigma computed from the
/// proposed arm, so differences isolate the transmit array gain.
ComparisonResult run_baseline_comparison(const ExperimentConfig& cfg);

/// Deterministic index-space parallel map: calls fn(i) for i in [0, n) on
/// up to `threads` workers; fn must only write state owned by index i.
void parallel_for(std::size_t n, std::size_t threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace risloc
