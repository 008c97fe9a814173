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
// Deterministic CSV output. Doubles are printed with 17 significant digits
// so a round-trip parse recovers the exact values; files are written to a
// temporary name and renamed, so readers never observe a partial file.

#pragma once

#include <string>
#include <vector>

namespace risloc {

/// Shortest representation that parses back to the same double (%.17g).
std::string format_double(double value);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Rendered text, one trailing newline, comma separators, no quoting
  /// (cells must not contain commas or newlines; throws otherwise).
  std::string to_text() const;
};

/// Write content to path via a temporary file in the same directory plus
/// rename. Throws std::runtime_error on any I/O failure.
void write_file_atomic(const std::string& path, const std::string& content);

void write_csv(const std::string& path, const CsvTable& table);

}  // namespace risloc
