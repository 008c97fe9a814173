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

#include "risloc/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace risloc {

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

namespace {

void append_row(std::string& out, const std::vector<std::string>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    const std::string& cell = row[i];
    if (cell.find_first_of(",\n\r") != std::string::npos) {
      throw std::invalid_argument("csv: cell contains a separator: " + cell);
    }
    if (i > 0) out += ',';
    out += cell;
  }
  out += '\n';
}

}  // namespace

std::string CsvTable::to_text() const {
  std::string out;
  append_row(out, header);
  for (const auto& row : rows) {
    if (row.size() != header.size()) {
      throw std::invalid_argument("csv: row width does not match header");
    }
    append_row(out, row);
  }
  return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) {
      throw std::runtime_error("cannot open for writing: " + tmp);
    }
    f.write(content.data(),
            static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) {
      throw std::runtime_error("write failed: " + tmp);
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("rename failed: " + path);
  }
}

void write_csv(const std::string& path, const CsvTable& table) {
  write_file_atomic(path, table.to_text());
}

}  // namespace risloc
