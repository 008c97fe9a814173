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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

using namespace risloc;
namespace fs = std::filesystem;

namespace {

/// Fresh output directory per test case.
std::string out_dir(const std::string& name) {
  fs::path dir = fs::path("cli_test_out") / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir.string();
}

std::string write_config(const std::string& name, const std::string& text) {
  fs::path dir = fs::path("cli_test_out");
  fs::create_directories(dir);
  fs::path p = dir / name;
  std::ofstream f(p);
  f << text;
  return p.string();
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::stringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

// Small scene so CLI-level tests stay fast.
const char* kFastScene = R"(
[scene]
n_ris = 8 8 8
n_bs = 4
[experiment]
trials = 6
snr_grid_db = 12 24
n_ris_grid = 4 8
sweep_points_per_element = 2
[noiseless]
path_points = 4
)";

// Same run on three worker threads.
const char* kFastSceneThreaded = R"(
[scene]
n_ris = 8 8 8
n_bs = 4
[experiment]
trials = 6
snr_grid_db = 12 24
n_ris_grid = 4 8
sweep_points_per_element = 2
threads = 3
[noiseless]
path_points = 4
)";

}  // namespace

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli({}) == 2);
  CHECK(run_cli({"frobnicate"}) == 2);
  CHECK(run_cli({"noiseless", "--frobnicate"}) == 2);
  CHECK(run_cli({"--help"}) == 0);
}

TEST_CASE("configuration errors exit with code 1 and write nothing") {
  std::string cfg = write_config("bad.ini", "[scene]\nmu = -1\n");
  std::string dir = out_dir("bad_config");
  CHECK(run_cli({"noiseless", "--config", cfg, "--out", dir}) == 1);
  CHECK_FALSE(fs::exists(fs::path(dir) / "trajectory.csv"));
  CHECK(run_cli({"noiseless", "--config", "/no/such/file", "--out", dir}) ==
        1);
}

TEST_CASE("noiseless subcommand writes the trajectory table") {
  std::string cfg = write_config("fast.ini", kFastScene);
  std::string dir = out_dir("noiseless");
  CHECK(run_cli({"noiseless", "--config", cfg, "--out", dir}) == 0);

  auto lines = lines_of(read_file(dir + "/trajectory.csv"));
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "actual_x,actual_y,est_x,est_y,err_m");
  // Noise-free runs localize to numerical precision.
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto last_comma = lines[i].find_last_of(',');
    double err = std::strtod(lines[i].c_str() + last_comma + 1, nullptr);
    CHECK(err <= 1e-2);
  }
}

TEST_CASE("snr-sweep output is byte-identical across reruns and threads") {
  std::string cfg = write_config("fast.ini", kFastScene);
  std::string threaded = write_config("fast_threaded.ini", kFastSceneThreaded);
  std::string d1 = out_dir("sweep1");
  std::string d2 = out_dir("sweep2");
  std::string d3 = out_dir("sweep3");

  CHECK(run_cli({"snr-sweep", "--config", cfg, "--out", d1}) == 0);
  CHECK(run_cli({"snr-sweep", "--config", cfg, "--out", d2}) == 0);
  CHECK(run_cli({"snr-sweep", "--config", threaded, "--out", d3}) == 0);

  CHECK(read_file(d1 + "/summary.csv") == read_file(d2 + "/summary.csv"));
  CHECK(read_file(d1 + "/trials.csv") == read_file(d2 + "/trials.csv"));
  CHECK(read_file(d1 + "/summary.csv") == read_file(d3 + "/summary.csv"));
  CHECK(read_file(d1 + "/trials.csv") == read_file(d3 + "/trials.csv"));

  auto lines = lines_of(read_file(d1 + "/summary.csv"));
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "snr_db,mean_err_m,median_err_m,p90_err_m,trials");
  auto trial_lines = lines_of(read_file(d1 + "/trials.csv"));
  REQUIRE(trial_lines.size() == 1 + 2 * 6);
  CHECK(trial_lines[0] ==
        "snr_db,n_ris,trial,d1_err_m,d2_err_m,d3_err_m,pos_err_m,est_x,"
        "est_y,warnings,failed");
}

TEST_CASE("seed and trial flags override the config") {
  std::string cfg = write_config("fast.ini", kFastScene);
  std::string d1 = out_dir("seed1");
  std::string d2 = out_dir("seed2");
  std::string d3 = out_dir("trials3");

  CHECK(run_cli({"snr-sweep", "--config", cfg, "--out", d1}) == 0);
  CHECK(run_cli({"snr-sweep", "--config", cfg, "--seed", "5", "--out", d2}) ==
        0);
  CHECK(read_file(d1 + "/trials.csv") != read_file(d2 + "/trials.csv"));

  CHECK(run_cli({"snr-sweep", "--config", cfg, "--trials", "3", "--out",
                 d3}) == 0);
  CHECK(lines_of(read_file(d3 + "/trials.csv")).size() == 1 + 2 * 3);
}

TEST_CASE("elements-sweep keys the summary by element count") {
  std::string cfg = write_config("fast.ini", kFastScene);
  std::string dir = out_dir("elements");
  CHECK(run_cli({"elements-sweep", "--config", cfg, "--out", dir}) == 0);
  auto lines = lines_of(read_file(dir + "/summary.csv"));
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "n_ris,mean_err_m,median_err_m,p90_err_m,trials");
  CHECK(lines[1].substr(0, 2) == "4,");
  CHECK(lines[2].substr(0, 2) == "8,");
}

TEST_CASE("compare-baseline writes the paired summary") {
  std::string cfg = write_config("fast.ini", kFastScene);
  std::string dir = out_dir("compare");
  CHECK(run_cli({"compare-baseline", "--config", cfg, "--out", dir}) == 0);
  auto lines = lines_of(read_file(dir + "/summary.csv"));
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "snr_db,proposed_median_m,baseline_median_m,trials");
  auto trial_lines = lines_of(read_file(dir + "/trials.csv"));
  CHECK(trial_lines[0] ==
        "snr_db,trial,proposed_err_m,baseline_err_m,proposed_failed,"
        "baseline_failed");
  CHECK(trial_lines.size() == 1 + 2 * 6);
}

TEST_CASE("defaults run without any configuration file") {
  // Shrink via flags only; the scene falls back to the built-in defaults.
  std::string dir = out_dir("no_config");
  CHECK(run_cli({"snr-sweep", "--trials", "1", "--out", dir}) == 0);
  auto lines = lines_of(read_file(dir + "/summary.csv"));
  REQUIRE(lines.size() == 6);  // five default SNR points
}

TEST_CASE("an all-failed sweep writes nan statistics and flags every row") {
  // Eight quarter-wave transmit antennas null the departure sum toward the
  // second surface (default angle pi/3), so every trial fails honestly.
  std::string cfg = write_config("null.ini",
                                 "[scene]\n"
                                 "n_bs = 8\n"
                                 "n_ris = 8 8 8\n"
                                 "[experiment]\n"
                                 "trials = 4\n"
                                 "snr_grid_db = 12\n"
                                 "sweep_points_per_element = 2\n");
  std::string dir = out_dir("null_sweep");
  CHECK(run_cli({"snr-sweep", "--config", cfg, "--out", dir}) == 0);

  auto summary = lines_of(read_file(dir + "/summary.csv"));
  REQUIRE(summary.size() == 2);
  CHECK(summary[1] == "12,nan,nan,nan,0");

  auto trials = lines_of(read_file(dir + "/trials.csv"));
  REQUIRE(trials.size() == 5);
  for (std::size_t i = 1; i < trials.size(); ++i) {
    CHECK(trials[i].find(",nan,") != std::string::npos);
    CHECK(trials[i].back() == '1');
  }
}
