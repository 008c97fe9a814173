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
// Configuration file parsing. The format is strict INI: [section] headers,
// key = value lines, '#' or ';' comments, multi-number values separated by
// whitespace. Every key is optional; omitted keys take the documented
// defaults (the reference scene). Unknown sections or keys are errors, and
// all problems are collected and reported together, each naming its
// section.key path.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "risloc/geometry.hpp"
#include "risloc/harness.hpp"

namespace risloc {

/// Carries every validation message; what() joins them.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const { return issues_; }

 private:
  std::vector<std::string> issues_;
};

/// Fully resolved run settings: experiment knobs plus the noiseless-path
/// shape and the output directory (the latter settable only by flags).
struct RunConfig {
  ExperimentConfig experiment;
  std::size_t path_points = 20;       // noiseless circle resolution
  double path_radius_m = 10.0;        // noiseless circle radius
  std::vector<Position2> explicit_path;  // overrides the circle when set
  std::string out_dir = ".";
};

/// Parse and validate configuration text. Throws ConfigError listing every
/// syntax error, unknown key, type mismatch, and invariant violation.
RunConfig parse_config(const std::string& text);

/// parse_config over a file's contents; file read errors also become
/// ConfigError.
RunConfig load_config(const std::string& path);

}  // namespace risloc
