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

#include "risloc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace risloc {

namespace {

std::size_t max_elements(const Scene& scene) {
  return std::max({scene.n_ris[0], scene.n_ris[1], scene.n_ris[2]});
}

/// One localization trial against known ground truth.
TrialResult run_trial(const ChannelSimulator& sim,
                      const EstimatorKnowledge& kn, std::size_t sweep_points,
                      std::size_t repeats, double sigma,
                      std::uint64_t seed) {
  const Scene& scene = sim.scene();
  TrialResult r;
  r.n_ris = scene.n_ris[0];
  NoiseStream stream(seed);
  MeasurementLog log =
      simulate_measurement_log(sim, sweep_points, repeats, sigma, stream);
  try {
    LocalizationResult loc = localize(log, kn);
    for (std::size_t g = 0; g < 3; ++g) {
      double true_d = distance(scene.geometry.ris[g], scene.geometry.ms_true);
      r.distance_errors_m[g] = std::abs(loc.distances_m[g] - true_d);
    }
    r.position_error_m = std::hypot(loc.position.x - scene.geometry.ms_true.x,
                                    loc.position.y - scene.geometry.ms_true.y);
    r.estimated = loc.position;
    r.warnings = loc.warnings.bits();
  } catch (const std::exception&) {
    r.failed = true;
  }
  return r;
}

void validate_common(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) {
    throw std::invalid_argument("experiment.trials: must be >= 1");
  }
  if (cfg.sweep_points_per_element < 1) {
    throw std::invalid_argument(
        "experiment.sweep_points_per_element: must be >= 1");
  }
  if (cfg.repeats < 1) {
    throw std::invalid_argument("experiment.repeats: must be >= 1");
  }
}

SummaryRow summarize(double key, const std::vector<double>& errors) {
  SummaryRow row;
  row.key = key;
  row.trials = errors.size();
  if (!errors.empty()) {
    row.mean_err_m = mean(errors);
    row.median_err_m = median(errors);
    row.p90_err_m = percentile90(errors);
  }
  return row;
}

}  // namespace

double snr_to_sigma(const ChannelSimulator& sim, double snr_db) {
  if (!std::isfinite(snr_db)) {
    throw std::invalid_argument("snr_to_sigma: snr_db must be finite");
  }
  std::array<PhaseProfile, 3> all_zero{UniformPhase{0.0}, UniformPhase{0.0},
                                       UniformPhase{0.0}};
  double power = std::norm(sim.received_noiseless(all_zero));
  return std::sqrt(power / std::pow(10.0, snr_db / 10.0));
}

MeasurementLog simulate_measurement_log(const ChannelSimulator& sim,
                                        std::size_t sweep_points,
                                        std::size_t repeats, double sigma,
                                        NoiseStream& noise) {
  if (repeats < 1) {
    throw std::invalid_argument("simulate_measurement_log: repeats >= 1");
  }
  MeasurementLog log;
  log.entries.reserve(4 + 3 * sweep_points);

  auto record = [&](const SlotConfig& cfg) {
    std::vector<Complex> samples(cfg.repeats);
    for (std::size_t i = 0; i < cfg.repeats; ++i) {
      samples[i] = sim.receive(cfg.profiles, sigma, noise);
    }
    log.entries.push_back(LogEntry{cfg, coherent_average(samples)});
  };

  for (const SlotConfig& cfg : calibration_schedule(repeats)) {
    record(cfg);
  }
  for (std::size_t g = 0; g < 3; ++g) {
    for (const SlotConfig& cfg : sweep_schedule(g, sweep_points, repeats)) {
      record(cfg);
    }
  }
  return log;
}

// --------------------------------------------------------------- noiseless

std::vector<Position2> circle_path(const Scene& scene, std::size_t n_points,
                                   double radius_m) {
  std::vector<Position2> path(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    double a = 2.0 * M_PI * static_cast<double>(i) /
               static_cast<double>(n_points);
    path[i] = {scene.geometry.ms_true.x + radius_m * std::cos(a),
               scene.geometry.ms_true.y + radius_m * std::sin(a)};
  }
  return path;
}

std::vector<TrajectoryPoint> run_noiseless(
    const Scene& scene, const std::vector<Position2>& path,
    std::size_t sweep_points_per_element, std::size_t repeats) {
  if (path.empty()) {
    throw std::invalid_argument("run_noiseless: empty path");
  }
  std::vector<TrajectoryPoint> out;
  out.reserve(path.size());
  for (const Position2& p : path) {
    TrajectoryPoint tp;
    tp.actual = p;
    try {
      Scene s = scene;
      s.geometry.ms_true = {p.x, p.y, scene.ms_height_m};
      ChannelSimulator sim(s);
      EstimatorKnowledge kn = EstimatorKnowledge::from_scene(s);
      std::size_t sweep_points = sweep_points_per_element * max_elements(s);
      NoiseStream unused(0);
      MeasurementLog log =
          simulate_measurement_log(sim, sweep_points, repeats, 0.0, unused);
      LocalizationResult loc = localize(log, kn);
      tp.estimated = loc.position;
      tp.error_m = std::hypot(loc.position.x - p.x, loc.position.y - p.y);
    } catch (const std::exception& ex) {
      tp.failed = true;
      tp.failure = ex.what();
    }
    out.push_back(tp);
  }
  return out;
}

// ------------------------------------------------------------- Monte Carlo

double mean(const std::vector<double>& v) {
  if (v.empty()) {
    throw std::invalid_argument("mean: empty input");
  }
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double median(std::vector<double> v) {
  if (v.empty()) {
    throw std::invalid_argument("median: empty input");
  }
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  if (n % 2 == 1) {
    return v[n / 2];
  }
  return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double percentile90(std::vector<double> v) {
  if (v.empty()) {
    throw std::invalid_argument("percentile90: empty input");
  }
  std::sort(v.begin(), v.end());
  // Nearest-rank definition: the ceil(0.9 n)-th smallest value.
  std::size_t rank = static_cast<std::size_t>(
      std::ceil(0.9 * static_cast<double>(v.size())));
  if (rank < 1) rank = 1;
  return v[rank - 1];
}

void parallel_for(std::size_t n, std::size_t threads,
                  const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::size_t workers = std::min(threads, n);
  std::atomic<std::size_t> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;

  auto body = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back(body);
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

SweepResult run_snr_sweep(const ExperimentConfig& cfg) {
  validate_common(cfg);
  if (cfg.snr_grid_db.empty()) {
    throw std::invalid_argument("experiment.snr_grid_db: must be non-empty");
  }
  ChannelSimulator sim(cfg.scene);
  EstimatorKnowledge kn = EstimatorKnowledge::from_scene(cfg.scene);
  std::size_t sweep_points =
      cfg.sweep_points_per_element * max_elements(cfg.scene);

  SweepResult result;
  result.trials.resize(cfg.snr_grid_db.size() * cfg.trials);
  for (std::size_t gi = 0; gi < cfg.snr_grid_db.size(); ++gi) {
    double snr_db = cfg.snr_grid_db[gi];
    double sigma = snr_to_sigma(sim, snr_db);
    std::size_t base = gi * cfg.trials;
    parallel_for(cfg.trials, cfg.threads, [&, gi, snr_db, sigma,
                                           base](std::size_t t) {
      TrialResult r = run_trial(sim, kn, sweep_points, cfg.repeats, sigma,
                                derive_seed(cfg.master_seed, gi, t));
      r.trial = t;
      r.snr_db = snr_db;
      result.trials[base + t] = r;
    });

    std::vector<double> errors;
    errors.reserve(cfg.trials);
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const TrialResult& r = result.trials[base + t];
      if (!r.failed) errors.push_back(r.position_error_m);
    }
    result.summary.push_back(summarize(snr_db, errors));
  }
  return result;
}

SweepResult run_elements_sweep(const ExperimentConfig& cfg) {
  validate_common(cfg);
  if (cfg.n_ris_grid.empty()) {
    throw std::invalid_argument("experiment.n_ris_grid: must be non-empty");
  }
  SweepResult result;
  result.trials.resize(cfg.n_ris_grid.size() * cfg.trials);
  for (std::size_t gi = 0; gi < cfg.n_ris_grid.size(); ++gi) {
    std::size_t n_ris = cfg.n_ris_grid[gi];
    Scene scene = cfg.scene;
    scene.n_ris = {n_ris, n_ris, n_ris};
    ChannelSimulator sim(scene);
    EstimatorKnowledge kn = EstimatorKnowledge::from_scene(scene);
    double sigma = snr_to_sigma(sim, cfg.elements_snr_db);
    std::size_t sweep_points = cfg.sweep_points_per_element * n_ris;
    std::size_t base = gi * cfg.trials;

    parallel_for(cfg.trials, cfg.threads, [&, gi, sigma, base](std::size_t t) {
      TrialResult r = run_trial(sim, kn, sweep_points, cfg.repeats, sigma,
                                derive_seed(cfg.master_seed, gi, t));
      r.trial = t;
      r.snr_db = cfg.elements_snr_db;
      result.trials[base + t] = r;
    });

    std::vector<double> errors;
    errors.reserve(cfg.trials);
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const TrialResult& r = result.trials[base + t];
      if (!r.failed) errors.push_back(r.position_error_m);
    }
    result.summary.push_back(summarize(static_cast<double>(n_ris), errors));
  }
  return result;
}

// -------------------------------------------------------------- comparison

Scene baseline_variant(const Scene& scene) {
  Scene b = scene;
  b.n_bs = 1;  // single transmit antenna; the departure sum collapses to 1
  return b;
}

ComparisonResult run_baseline_comparison(const ExperimentConfig& cfg) {
  validate_common(cfg);
  if (cfg.snr_grid_db.empty()) {
    throw std::invalid_argument("experiment.snr_grid_db: must be non-empty");
  }
  ChannelSimulator sim_p(cfg.scene);
  Scene base_scene = baseline_variant(cfg.scene);
  ChannelSimulator sim_b(base_scene);
  EstimatorKnowledge kn_p = EstimatorKnowledge::from_scene(cfg.scene);
  EstimatorKnowledge kn_b = EstimatorKnowledge::from_scene(base_scene);
  std::size_t sweep_points =
      cfg.sweep_points_per_element * max_elements(cfg.scene);

  ComparisonResult result;
  result.trials.resize(cfg.snr_grid_db.size() * cfg.trials);
  for (std::size_t gi = 0; gi < cfg.snr_grid_db.size(); ++gi) {
    double snr_db = cfg.snr_grid_db[gi];
    // One noise floor for both arms, referenced to the full-array received
    // power; the baseline sees the identical noise realizations.
    double sigma = snr_to_sigma(sim_p, snr_db);
    std::size_t base = gi * cfg.trials;

    parallel_for(cfg.trials, cfg.threads, [&, gi, snr_db, sigma,
                                           base](std::size_t t) {
      std::uint64_t seed = derive_seed(cfg.master_seed, gi, t);
      TrialResult p =
          run_trial(sim_p, kn_p, sweep_points, cfg.repeats, sigma, seed);
      TrialResult b =
          run_trial(sim_b, kn_b, sweep_points, cfg.repeats, sigma, seed);
      ComparisonTrial ct;
      ct.trial = t;
      ct.snr_db = snr_db;
      ct.proposed_err_m = p.position_error_m;
      ct.baseline_err_m = b.position_error_m;
      ct.proposed_failed = p.failed;
      ct.baseline_failed = b.failed;
      result.trials[base + t] = ct;
    });

    std::vector<double> perr;
    std::vector<double> berr;
    perr.reserve(cfg.trials);
    berr.reserve(cfg.trials);
    for (std::size_t t = 0; t < cfg.trials; ++t) {
      const ComparisonTrial& ct = result.trials[base + t];
      if (ct.proposed_failed || ct.baseline_failed) continue;
      perr.push_back(ct.proposed_err_m);
      berr.push_back(ct.baseline_err_m);
    }
    ComparisonSummaryRow row;
    row.snr_db = snr_db;
    row.trials = perr.size();
    if (!perr.empty()) {
      row.proposed_median_m = median(perr);
      row.baseline_median_m = median(berr);
    }
    result.summary.push_back(row);
  }
  return result;
}

}  // namespace risloc
