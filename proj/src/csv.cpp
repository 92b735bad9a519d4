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


#include "qdcav/csv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "qdcav/errors.hpp"
#include "qdcav/version.hpp"

namespace qdcav {

namespace {

constexpr const char* kTruncated = "# TRUNCATED";
constexpr std::size_t kColumnCount = 15;

std::string optional_field(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_number(const std::string& text, std::size_t line_no) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError("line " + std::to_string(line_no), "bad number '" + text + "'");
  }
  return v;
}

std::optional<double> parse_optional(const std::string& text, std::size_t line_no) {
  if (text.empty()) return std::nullopt;
  return parse_number(text, line_no);
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void write_csv_header(std::ostream& out, const ScenarioConfig& config) {
  out << "# version = \"" << kVersion << "\"\n";
  for (const auto& key : config_keys()) out << "# " << key << " = " << get_value(config, key) << "\n";
  out << kCsvColumns << "\n";
}

void write_csv_row(std::ostream& out, double t_fs, const ObservableRecord& r, double trace_error) {
  out << format_number(t_fs) << ',' << format_number(r.n_qd[0]) << ',' << format_number(r.n_qd[1]) << ','
      << format_number(r.n_pl) << ',' << format_number(r.n_cav[0]) << ',' << format_number(r.n_cav[1]) << ','
      << format_number(r.n_total) << ',' << format_number(r.C) << ',' << optional_field(r.C_ph) << ','
      << optional_field(r.C_tot) << ',' << format_number(r.F2) << ',' << optional_field(r.g2_11) << ','
      << optional_field(r.g2_22) << ',' << optional_field(r.g2_12) << ',' << format_number(trace_error) << '\n';
}

void write_truncation_marker(std::ostream& out, double t_fs, const std::string& reason) {
  std::string flat = reason;
  for (char& ch : flat) {
    if (ch == '\n' || ch == '\r') ch = ' ';
  }
  out << kTruncated << " after t_fs = " << format_number(t_fs) << ": " << flat << '\n';
}

CsvFile parse_csv(std::istream& in) {
  CsvFile file;
  bool columns_seen = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.rfind(kTruncated, 0) == 0) {
      file.truncated = true;
      continue;
    }
    if (!line.empty() && line[0] == '#') {
      if (columns_seen) throw ParseError("line " + std::to_string(line_no), "header line after the column row");
      const auto eq = line.find(" = ");
      if (line.size() < 2 || line[1] != ' ' || eq == std::string::npos) {
        throw ParseError("line " + std::to_string(line_no), "malformed header line");
      }
      const std::string key = line.substr(2, eq - 2);
      if (key == "version") continue;
      set_value(file.config, key, line.substr(eq + 3));
      continue;
    }
    if (!columns_seen) {
      if (line != kCsvColumns) throw ParseError("line " + std::to_string(line_no), "unexpected column row");
      columns_seen = true;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != kColumnCount) {
      throw ParseError("line " + std::to_string(line_no), "expected " + std::to_string(kColumnCount) + " fields");
    }
    ObservableRecord r;
    const double t = parse_number(f[0], line_no);
    r.n_qd = {parse_number(f[1], line_no), parse_number(f[2], line_no)};
    r.n_pl = parse_number(f[3], line_no);
    r.n_cav = {parse_number(f[4], line_no), parse_number(f[5], line_no)};
    r.n_total = parse_number(f[6], line_no);
    r.C = parse_number(f[7], line_no);
    r.C_ph = parse_optional(f[8], line_no);
    r.C_tot = parse_optional(f[9], line_no);
    r.F2 = parse_number(f[10], line_no);
    r.g2_11 = parse_optional(f[11], line_no);
    r.g2_22 = parse_optional(f[12], line_no);
    r.g2_12 = parse_optional(f[13], line_no);
    file.table.t_fs.push_back(t);
    file.table.records.push_back(r);
    file.table.trace_error.push_back(parse_number(f[14], line_no));
  }
  if (!columns_seen) throw ParseError("", "missing column row");
  return file;
}

CsvFile read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("", "cannot read " + path.string());
  return parse_csv(in);
}

}  // namespace qdcav
