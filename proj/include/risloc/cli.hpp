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
// Command-line front end. Subcommands: noiseless, snr-sweep,
// elements-sweep, compare-baseline. Flags --config, --seed, --trials,
// --out; flag values override config file values, which override defaults.
// Identical inputs produce byte-identical CSV outputs.

#pragma once

#include <string>
#include <vector>

namespace risloc {

/// Run the tool. args excludes the program name. Returns the process exit
/// code: 0 on success, 1 on configuration or runtime errors, 2 on usage
/// errors. Diagnostics go to stderr.
int run_cli(const std::vector<std::string>& args);

}  // namespace risloc
