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

#include "risloc/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string_view>

namespace risloc {

namespace {

std::string join_issues(const std::vector<std::string>& issues) {
  std::ostringstream msg;
  msg << "configuration errors:";
  for (const auto& i : issues) msg << "\n  " << i;
  return msg.str();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string> split_tokens(std::string_view value) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < value.size()) {
    while (i < value.size() && (value[i] == ' ' || value[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < value.size() && value[i] != ' ' && value[i] != '\t') ++i;
    if (i > start) out.emplace_back(value.substr(start, i - start));
  }
  return out;
}

bool parse_double_token(const std::string& tok, double& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

bool parse_uint_token(const std::string& tok, std::uint64_t& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

/// Raw parsed file: section.key -> value string, plus syntax issues.
struct RawConfig {
  std::map<std::string, std::string> values;
  std::vector<std::string> issues;

  bool has(const std::string& path) const { return values.count(path) > 0; }
};

RawConfig tokenize(const std::string& text) {
  RawConfig raw;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv = trim(line);
    if (sv.empty() || sv.front() == '#' || sv.front() == ';') continue;
    if (sv.front() == '[') {
      if (sv.back() != ']' || sv.size() < 3) {
        raw.issues.push_back("line " + std::to_string(lineno) +
                             ": malformed section header");
        continue;
      }
      section = std::string(trim(sv.substr(1, sv.size() - 2)));
      if (section != "scene" && section != "experiment" &&
          section != "noiseless") {
        raw.issues.push_back("line " + std::to_string(lineno) +
                             ": unknown section [" + section + "]");
        section.clear();
      }
      continue;
    }
    std::size_t eq = sv.find('=');
    if (eq == std::string_view::npos) {
      raw.issues.push_back("line " + std::to_string(lineno) +
                           ": expected key = value");
      continue;
    }
    if (section.empty()) {
      raw.issues.push_back("line " + std::to_string(lineno) +
                           ": key outside of a known section");
      continue;
    }
    std::string key(trim(sv.substr(0, eq)));
    std::string value(trim(sv.substr(eq + 1)));
    if (key.empty()) {
      raw.issues.push_back("line " + std::to_string(lineno) + ": empty key");
      continue;
    }
    std::string path = section + "." + key;
    if (raw.values.count(path) > 0) {
      raw.issues.push_back("line " + std::to_string(lineno) + ": " + path +
                           ": duplicate key");
      continue;
    }
    raw.values[path] = value;
  }
  return raw;
}

/// Typed readers; each consumes a key so unknown-key detection can run on
/// the leftovers.
class Extractor {
 public:
  Extractor(RawConfig raw) : raw_(std::move(raw)) {
    issues_ = raw_.issues;
  }

  bool fetch(const std::string& path, std::vector<std::string>& tokens) {
    auto it = raw_.values.find(path);
    if (it == raw_.values.end()) return false;
    tokens = split_tokens(it->second);
    consumed_.insert(path);
    return true;
  }

  void read_doubles(const std::string& path, std::size_t count,
                    double* out) {
    std::vector<std::string> toks;
    if (!fetch(path, toks)) return;
    if (toks.size() != count) {
      issue(path + ": expected " + std::to_string(count) + " number" +
            (count == 1 ? "" : "s") + ", got " + std::to_string(toks.size()));
      return;
    }
    for (std::size_t i = 0; i < count; ++i) {
      double v = 0.0;
      if (!parse_double_token(toks[i], v)) {
        issue(path + ": not a number: " + toks[i]);
        return;
      }
      out[i] = v;
    }
  }

  void read_double(const std::string& path, double& out) {
    read_doubles(path, 1, &out);
  }

  void read_double_list(const std::string& path, std::vector<double>& out) {
    std::vector<std::string> toks;
    if (!fetch(path, toks)) return;
    if (toks.empty()) {
      issue(path + ": must list at least one number");
      return;
    }
    std::vector<double> parsed;
    for (const auto& t : toks) {
      double v = 0.0;
      if (!parse_double_token(t, v)) {
        issue(path + ": not a number: " + t);
        return;
      }
      parsed.push_back(v);
    }
    out = std::move(parsed);
  }

  void read_uint(const std::string& path, std::uint64_t& out,
                 std::uint64_t min_value) {
    std::vector<std::string> toks;
    if (!fetch(path, toks)) return;
    std::uint64_t v = 0;
    if (toks.size() != 1 || !parse_uint_token(toks[0], v)) {
      issue(path + ": expected one non-negative integer");
      return;
    }
    if (v < min_value) {
      issue(path + ": must be >= " + std::to_string(min_value));
      return;
    }
    out = v;
  }

  void read_size(const std::string& path, std::size_t& out,
                 std::uint64_t min_value) {
    std::uint64_t v = out;
    read_uint(path, v, min_value);
    out = static_cast<std::size_t>(v);
  }

  void read_size_list(const std::string& path, std::vector<std::size_t>& out,
                      std::size_t count_or_zero) {
    std::vector<std::string> toks;
    if (!fetch(path, toks)) return;
    if (count_or_zero > 0 && toks.size() != count_or_zero) {
      issue(path + ": expected " + std::to_string(count_or_zero) +
            " integers, got " + std::to_string(toks.size()));
      return;
    }
    if (toks.empty()) {
      issue(path + ": must list at least one integer");
      return;
    }
    std::vector<std::size_t> parsed;
    for (const auto& t : toks) {
      std::uint64_t v = 0;
      if (!parse_uint_token(t, v) || v < 1) {
        issue(path + ": entries must be positive integers, got " + t);
        return;
      }
      parsed.push_back(static_cast<std::size_t>(v));
    }
    out = std::move(parsed);
  }

  void read_position(const std::string& path, Position3& out) {
    double v[3] = {out.x, out.y, out.z};
    read_doubles(path, 3, v);
    out = {v[0], v[1], v[2]};
  }

  void read_axis(const std::string& path, std::array<double, 3>& out) {
    read_doubles(path, 3, out.data());
  }

  void issue(const std::string& message) { issues_.push_back(message); }

  void check_unknown_keys() {
    for (const auto& [path, value] : raw_.values) {
      if (consumed_.count(path) == 0) {
        issue(path + ": unknown key");
      }
    }
  }

  bool was_set(const std::string& path) const { return raw_.has(path); }
  std::vector<std::string>& issues() { return issues_; }

 private:
  RawConfig raw_;
  std::set<std::string> consumed_;
  std::vector<std::string> issues_;
};

}  // namespace

ConfigError::ConfigError(std::vector<std::string> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

RunConfig parse_config(const std::string& text) {
  Extractor ex(tokenize(text));
  RunConfig rc;
  Scene& scene = rc.experiment.scene;

  ex.read_position("scene.bs", scene.geometry.bs);
  ex.read_position("scene.ris1", scene.geometry.ris[0]);
  ex.read_position("scene.ris2", scene.geometry.ris[1]);
  ex.read_position("scene.ris3", scene.geometry.ris[2]);
  ex.read_position("scene.ms", scene.geometry.ms_true);
  ex.read_double("scene.carrier_freq_hz", scene.geometry.carrier_freq_hz);
  ex.read_double("scene.bs_spacing_m", scene.geometry.bs_spacing_m);
  ex.read_doubles("scene.ris_spacing_m", 3, scene.geometry.ris_spacing_m.data());
  ex.read_double("scene.mu", scene.geometry.mu);
  ex.read_size("scene.n_bs", scene.n_bs, 1);
  {
    std::vector<std::size_t> n_ris(scene.n_ris.begin(), scene.n_ris.end());
    ex.read_size_list("scene.n_ris", n_ris, 3);
    if (n_ris.size() == 3) {
      std::copy(n_ris.begin(), n_ris.end(), scene.n_ris.begin());
    }
  }
  {
    double pilot[2] = {scene.pilot.real(), scene.pilot.imag()};
    ex.read_doubles("scene.pilot", 2, pilot);
    scene.pilot = {pilot[0], pilot[1]};
  }
  ex.read_double("scene.ms_height_m", scene.ms_height_m);
  // A mobile set off the ground plane implies its known height unless the
  // height was given explicitly.
  if (ex.was_set("scene.ms") && !ex.was_set("scene.ms_height_m")) {
    scene.ms_height_m = scene.geometry.ms_true.z;
  }
  {
    std::vector<std::string> toks;
    if (ex.fetch("scene.angle_mode", toks)) {
      if (toks.size() == 1 && toks[0] == "explicit") {
        scene.angle_mode = AngleMode::explicit_angles;
      } else if (toks.size() == 1 && toks[0] == "derived") {
        scene.angle_mode = AngleMode::derived;
      } else {
        ex.issue("scene.angle_mode: must be 'explicit' or 'derived'");
      }
    }
  }
  ex.read_doubles("scene.aoa_bs_ris_rad", 3, scene.aoa_bs_ris.data());
  ex.read_doubles("scene.aod_bs_ris_rad", 3, scene.aod_bs_ris.data());
  ex.read_doubles("scene.aod_ris_ms_rad", 3, scene.aod_ris_ms.data());
  ex.read_double("scene.aod_bs_ms_rad", scene.aod_bs_ms);
  ex.read_axis("scene.bs_axis", scene.bs_axis);
  ex.read_axis("scene.ris1_axis", scene.ris_axis[0]);
  ex.read_axis("scene.ris2_axis", scene.ris_axis[1]);
  ex.read_axis("scene.ris3_axis", scene.ris_axis[2]);

  ExperimentConfig& exp = rc.experiment;
  ex.read_size("experiment.trials", exp.trials, 1);
  ex.read_uint("experiment.master_seed", exp.master_seed, 0);
  ex.read_double_list("experiment.snr_grid_db", exp.snr_grid_db);
  ex.read_size_list("experiment.n_ris_grid", exp.n_ris_grid, 0);
  ex.read_size("experiment.sweep_points_per_element",
               exp.sweep_points_per_element, 1);
  ex.read_size("experiment.repeats", exp.repeats, 1);
  ex.read_double("experiment.elements_snr_db", exp.elements_snr_db);
  ex.read_size("experiment.threads", exp.threads, 1);

  ex.read_size("noiseless.path_points", rc.path_points, 1);
  ex.read_double("noiseless.path_radius_m", rc.path_radius_m);
  {
    std::vector<std::string> toks;
    if (ex.fetch("noiseless.path", toks)) {
      if (toks.empty() || toks.size() % 2 != 0) {
        ex.issue("noiseless.path: expected an even number of coordinates");
      } else {
        std::vector<Position2> path;
        bool ok = true;
        for (std::size_t i = 0; i + 1 < toks.size(); i += 2) {
          double x = 0.0, y = 0.0;
          if (!parse_double_token(toks[i], x) ||
              !parse_double_token(toks[i + 1], y)) {
            ex.issue("noiseless.path: not a number: " + toks[i] + " " +
                     toks[i + 1]);
            ok = false;
            break;
          }
          path.push_back({x, y});
        }
        if (ok) rc.explicit_path = std::move(path);
      }
    }
  }

  ex.check_unknown_keys();

  // Cross-field validation on the fully merged configuration.
  for (const auto& e : scene_errors(scene)) {
    ex.issue(e);
  }
  if (ex.was_set("scene.bs_spacing_m") && !(scene.geometry.bs_spacing_m > 0)) {
    ex.issue("scene.bs_spacing_m: must be > 0");
  }
  if (ex.was_set("scene.ris_spacing_m")) {
    for (double d : scene.geometry.ris_spacing_m) {
      if (!(d > 0)) {
        ex.issue("scene.ris_spacing_m: entries must be > 0");
        break;
      }
    }
  }
  for (double v : exp.snr_grid_db) {
    if (!std::isfinite(v)) {
      ex.issue("experiment.snr_grid_db: entries must be finite");
      break;
    }
  }
  if (!std::isfinite(exp.elements_snr_db)) {
    ex.issue("experiment.elements_snr_db: must be finite");
  }
  if (!(rc.path_radius_m >= 0.0) || !std::isfinite(rc.path_radius_m)) {
    ex.issue("noiseless.path_radius_m: must be >= 0");
  }

  if (!ex.issues().empty()) {
    throw ConfigError(std::move(ex.issues()));
  }
  return rc;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    throw ConfigError({"config: cannot read " + path});
  }
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_config(buf.str());
}

}  // namespace risloc
