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

#include "risloc/cli.hpp"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "risloc/config.hpp"
#include "risloc/csv.hpp"
#include "risloc/harness.hpp"

namespace risloc {

namespace {

std::string fd(double v) { return format_double(v); }

std::string join_path(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

void write_trajectory(const std::string& dir,
                      const std::vector<TrajectoryPoint>& points) {
  CsvTable t;
  t.header = {"actual_x", "actual_y", "est_x", "est_y", "err_m"};
  for (const auto& p : points) {
    double ex = p.failed ? std::nan("") : p.estimated.x;
    double ey = p.failed ? std::nan("") : p.estimated.y;
    double err = p.failed ? std::nan("") : p.error_m;
    t.rows.push_back({fd(p.actual.x), fd(p.actual.y), fd(ex), fd(ey),
                      fd(err)});
  }
  std::string path = join_path(dir, "trajectory.csv");
  write_csv(path, t);
  std::cout << "wrote " << path << "\n";
}

void write_sweep(const std::string& dir, const SweepResult& result,
                 const std::string& key_column) {
  CsvTable summary;
  summary.header = {key_column, "mean_err_m", "median_err_m", "p90_err_m",
                    "trials"};
  for (const auto& row : result.summary) {
    std::string key = key_column == "n_ris"
                          ? std::to_string(static_cast<std::size_t>(row.key))
                          : fd(row.key);
    if (row.trials == 0) {
      std::cerr << "warning: " << key_column << " = " << key
                << ": all trials failed\n";
    }
    summary.rows.push_back({key, fd(row.mean_err_m), fd(row.median_err_m),
                            fd(row.p90_err_m), std::to_string(row.trials)});
  }
  std::string spath = join_path(dir, "summary.csv");
  write_csv(spath, summary);
  std::cout << "wrote " << spath << "\n";

  CsvTable trials;
  trials.header = {"snr_db", "n_ris",    "trial",    "d1_err_m",
                   "d2_err_m", "d3_err_m", "pos_err_m", "est_x",
                   "est_y",   "warnings", "failed"};
  for (const auto& r : result.trials) {
    auto masked = [&r](double v) { return fd(r.failed ? std::nan("") : v); };
    trials.rows.push_back({fd(r.snr_db), std::to_string(r.n_ris),
                           std::to_string(r.trial),
                           masked(r.distance_errors_m[0]),
                           masked(r.distance_errors_m[1]),
                           masked(r.distance_errors_m[2]),
                           masked(r.position_error_m), masked(r.estimated.x),
                           masked(r.estimated.y), std::to_string(r.warnings),
                           r.failed ? "1" : "0"});
  }
  std::string tpath = join_path(dir, "trials.csv");
  write_csv(tpath, trials);
  std::cout << "wrote " << tpath << "\n";
}

void write_comparison(const std::string& dir, const ComparisonResult& result) {
  CsvTable summary;
  summary.header = {"snr_db", "proposed_median_m", "baseline_median_m",
                    "trials"};
  for (const auto& row : result.summary) {
    if (row.trials == 0) {
      std::cerr << "warning: snr_db = " << fd(row.snr_db)
                << ": no paired trial succeeded\n";
    }
    summary.rows.push_back({fd(row.snr_db), fd(row.proposed_median_m),
                            fd(row.baseline_median_m),
                            std::to_string(row.trials)});
  }
  std::string spath = join_path(dir, "summary.csv");
  write_csv(spath, summary);
  std::cout << "wrote " << spath << "\n";

  CsvTable trials;
  trials.header = {"snr_db",        "trial",           "proposed_err_m",
                   "baseline_err_m", "proposed_failed", "baseline_failed"};
  for (const auto& r : result.trials) {
    double pe = r.proposed_failed ? std::nan("") : r.proposed_err_m;
    double be = r.baseline_failed ? std::nan("") : r.baseline_err_m;
    trials.rows.push_back({fd(r.snr_db), std::to_string(r.trial), fd(pe),
                           fd(be), r.proposed_failed ? "1" : "0",
                           r.baseline_failed ? "1" : "0"});
  }
  std::string tpath = join_path(dir, "trials.csv");
  write_csv(tpath, trials);
  std::cout << "wrote " << tpath << "\n";
}

struct Flags {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  bool seed_set = false;
  bool trials_set = false;
  bool out_set = false;
};

void add_common_flags(CLI::App* sub, Flags& flags) {
  sub->add_option("--config", flags.config_path,
                  "Configuration file (defaults apply when omitted)");
  sub->add_option("--seed", flags.seed, "Master seed override")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--trials", flags.trials, "Trial count override")
      ->check(CLI::PositiveNumber);
  sub->add_option("--out", flags.out_dir, "Output directory (default .)");
}

RunConfig resolve_config(const CLI::App* sub, const Flags& flags) {
  RunConfig rc = flags.config_path.empty() ? parse_config("")
                                           : load_config(flags.config_path);
  if (sub->count("--seed") > 0) {
    rc.experiment.master_seed = flags.seed;
  }
  if (sub->count("--trials") > 0) {
    rc.experiment.trials = static_cast<std::size_t>(flags.trials);
  }
  if (sub->count("--out") > 0) {
    rc.out_dir = flags.out_dir;
  }
  return rc;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"RIS-assisted MISO localization simulator"};
  app.name("ris-locate");
  app.require_subcommand(1);

  Flags flags;
  CLI::App* noiseless =
      app.add_subcommand("noiseless", "Noiseless trajectory localization");
  CLI::App* snr_sweep =
      app.add_subcommand("snr-sweep", "Position error versus SNR");
  CLI::App* elements_sweep = app.add_subcommand(
      "elements-sweep", "Position error versus RIS element count");
  CLI::App* compare = app.add_subcommand(
      "compare-baseline",
      "Paired comparison against the single-antenna baseline");
  for (CLI::App* sub : {noiseless, snr_sweep, elements_sweep, compare}) {
    add_common_flags(sub, flags);
  }

  // CLI11 wants mutable argv in reverse order.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cerr << "run 'ris-locate --help' for usage\n";
    return 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    RunConfig rc = resolve_config(sub, flags);
    if (sub == compare) {
      rc.experiment.baseline_mode = true;
    }
    std::filesystem::create_directories(rc.out_dir);

    if (sub == noiseless) {
      std::vector<Position2> path =
          rc.explicit_path.empty()
              ? circle_path(rc.experiment.scene, rc.path_points,
                            rc.path_radius_m)
              : rc.explicit_path;
      auto points = run_noiseless(rc.experiment.scene, path,
                                  rc.experiment.sweep_points_per_element,
                                  rc.experiment.repeats);
      for (const auto& p : points) {
        if (p.failed) {
          std::cerr << "warning: point (" << fd(p.actual.x) << ", "
                    << fd(p.actual.y) << ") failed: " << p.failure << "\n";
        }
      }
      write_trajectory(rc.out_dir, points);
    } else if (sub == snr_sweep) {
      write_sweep(rc.out_dir, run_snr_sweep(rc.experiment), "snr_db");
    } else if (sub == elements_sweep) {
      write_sweep(rc.out_dir, run_elements_sweep(rc.experiment), "n_ris");
    } else {
      write_comparison(rc.out_dir, run_baseline_comparison(rc.experiment));
    }
  } catch (const ConfigError& e) {
    for (const auto& issue : e.issues()) {
      std::cerr << "error: " << issue << "\n";
    }
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace risloc
