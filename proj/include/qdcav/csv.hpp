// Copyright 2026 The qdcavity Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "qdcav/observables.hpp"
#include "qdcav/scenario.hpp"

namespace qdcav {

/// Column order of the time-series files.
inline constexpr const char* kCsvColumns =
    "t_fs,n_qd1,n_qd2,n_pl,n_cav1,n_cav2,n_total,C,C_ph,C_tot,F2,g2_11,g2_22,g2_12,trace_err";

/// Shortest text that reads back to the same double.
std::string format_number(double v);

/// "#"-prefixed block holding the version and every config key, then the column line.
void write_csv_header(std::ostream& out, const ScenarioConfig& config);
/// One data row; missing optional values become empty fields.
void write_csv_row(std::ostream& out, double t_fs, const ObservableRecord& record, double trace_error);
/// Marker closing a file whose run failed.
void write_truncation_marker(std::ostream& out, double t_fs, const std::string& reason);

struct CsvFile {
  ScenarioConfig config;
  SampleTable table;
  bool truncated = false;
};

/// Reads a file written by the functions above. Throws ParseError.
CsvFile read_csv(const std::filesystem::path& path);
CsvFile parse_csv(std::istream& in);

}  // namespace qdcav
