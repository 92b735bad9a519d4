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

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qdcav/model.hpp"
#include "qdcav/observables.hpp"
#include "qdcav/propagator.hpp"

namespace qdcav {

/// A complete run description. Values are kept in the units named by the
/// configuration keys (meV, ueV, ...) so that configs survive a text round
/// trip unchanged; conversion to model units happens in system_params().
struct ScenarioConfig {
  std::string name = "custom";
  std::string description;

  struct System {
    std::array<double, 2> omega_qd_ev{2.05, 2.05};
    double omega_pl_ev = 2.05;
    std::array<double, 2> omega_cav_ev{2.05, 2.05};
    std::array<double, 2> g_s_mev{30.0, 17.3};
    double g_mev = 1.0;
    std::array<double, 2> d_qd_debye{13.0, 13.0};
    double d_pl_debye = 4000.0;
    std::array<double, 2> gamma_qd_decay_uev{0.05, 0.05};
    std::array<double, 2> gamma_qd_dephase_uev{8.6, 8.6};
    double gamma_pl_mev = 150.0;
    double gamma_pl_dephase_uev = 0.0;
    std::array<double, 2> gamma_cav_decay_uev{100.0, 100.0};
    std::array<double, 2> gamma_cav_dephase_uev{8.6, 8.6};
    std::size_t n_pl_levels = 24;
    std::size_t n_ph_levels = 4;
    double eps_med = 2.25;
    DephasingConvention dephasing = DephasingConvention::coherence_rate;
    PlasmonFrame plasmon_frame = PlasmonFrame::lab;
    bool operator==(const System&) const = default;
  } system;

  struct Pulse {
    PulseShape shape = PulseShape::gaussian;
    double e_max_v_per_m = 2.5e6;
    double fwhm_fs = 20.0;
    double t_peak_fs = 36.3;
    double t0_fs = 26.3;
    double t1_fs = 46.3;
    double delta_fs = 10.0;
    double omega_drive_ev = 2.05;
    double rwa_factor = 1.0;
    bool operator==(const Pulse&) const = default;
  } pulse;

  IntegratorConfig integrator;

  struct Analysis {
    /// Concurrence above this value counts as entangled. The onset is the
    /// start of the entangled stretch that contains the global maximum.
    double onset_threshold = 1e-3;
    /// Peak prominence as a fraction of the series range.
    double prominence_fraction = 0.05;
    /// Probe time for storage comparisons; the end of the run when empty.
    std::optional<double> storage_probe_fs;
    bool operator==(const Analysis&) const = default;
  } analysis;

  std::string output_dir = ".";

  SystemParams system_params() const;
  PulseSpec pulse_spec() const;
  /// Throws ParseError when any component invariant fails.
  void validate() const;
  bool operator==(const ScenarioConfig&) const = default;
};

/// Dotted keys accepted by set_value / config files, in echo order.
const std::vector<std::string>& config_keys();

/// Sets one dotted key from a JSON-syntax value ("10", "[30, 30]", "\"lab\"";
/// bare words are read as strings). Throws ParseError naming the key.
void set_value(ScenarioConfig& config, const std::string& key, const std::string& value);
/// JSON text of one key's value.
std::string get_value(const ScenarioConfig& config, const std::string& key);

struct BuiltinScenario {
  std::string name;
  std::string summary;
};
const std::vector<BuiltinScenario>& builtin_scenarios();
ScenarioConfig builtin(const std::string& name);

/// Builtin name or path to a JSON file. A file may name a builtin under
/// "base" and override any subset of keys. Throws ParseError.
ScenarioConfig load_config(const std::string& name_or_path);
ScenarioConfig parse_config(const std::string& json_text);
/// Nested JSON document holding every key.
std::string to_json(const ScenarioConfig& config);

/// Applies "key=value" overrides in order.
void apply_overrides(ScenarioConfig& config, const std::vector<std::string>& assignments);

/// Summary statistics of a run; every field except the wall time is a
/// function of the emitted CSV rows.
struct RunSummary {
  std::string scenario;
  std::string status = "ok";  // "ok" or "truncated"
  double wall_time_s = 0.0;
  std::size_t samples = 0;
  double t_end_fs = 0.0;
  double max_trace_error = 0.0;
  std::optional<double> onset_fs;
  std::optional<double> c_max;
  std::optional<double> t_c_max_fs;
  std::optional<OscillationReport> c_oscillations;
  std::optional<OscillationReport> g2_12_oscillations;
  double xi = 0.0;
  double fluence_nj_cm2 = 0.0;
  double purcell_rate_mev = 0.0;
};

/// Samples of a run as read from, or written to, CSV.
struct SampleTable {
  std::vector<double> t_fs;
  std::vector<ObservableRecord> records;
  std::vector<double> trace_error;
};

RunSummary summarize(const ScenarioConfig& config, const SampleTable& table);
std::string summary_json(const RunSummary& summary);

struct RunResult {
  RunSummary summary;
  SampleTable table;
  std::filesystem::path csv_path;
  std::filesystem::path summary_path;
  std::optional<std::string> error;  // set when propagation failed
};

/// Runs one scenario and writes <output_dir>/<name>.csv and
/// <output_dir>/<name>.summary.json. Numeric failures are reported through
/// RunResult::error after the partial CSV is closed with a truncation marker.
RunResult run(const ScenarioConfig& config);

/// Propagates without writing files.
SampleTable simulate(const ScenarioConfig& config, const SampleObserver& observer = {});

struct StorageReport {
  double t_probe_fs = 0.0;
  double c_cavity = 0.0;
  double c_open = 0.0;
  double ratio = 0.0;
};

/// Concurrence ratio C_cavity(t*) / C_open(t*) for two configs that differ
/// only in the dot-cavity coupling. The probe defaults to the cavity run's
/// storage probe or end time. Throws InvalidArgument for mismatched configs.
StorageReport compare_storage(const ScenarioConfig& cavity, const ScenarioConfig& open,
                              std::optional<double> t_probe_fs = std::nullopt);
/// The open-geometry twin of `cavity` (g = 0).
ScenarioConfig open_geometry(const ScenarioConfig& cavity);

}  // namespace qdcav
