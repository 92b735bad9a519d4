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


#include "qdcav/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <json.hpp>

#include "qdcav/csv.hpp"
#include "qdcav/errors.hpp"

namespace qdcav {

using nlohmann::json;

namespace {

// ---- typed assignment from JSON values ------------------------------------

[[noreturn]] void type_error(const std::string& key, const char* expected) {
  throw ParseError(key, std::string("expected ") + expected);
}

void assign(double& dst, const json& v, const std::string& key) {
  if (!v.is_number()) type_error(key, "a number");
  dst = v.get<double>();
}

void assign(std::size_t& dst, const json& v, const std::string& key) {
  if (v.is_number_unsigned()) {
    dst = v.get<std::size_t>();
  } else if (v.is_number_integer() && v.get<long long>() >= 0) {
    dst = std::size_t(v.get<long long>());
  } else {
    type_error(key, "a non-negative integer");
  }
}

void assign(bool& dst, const json& v, const std::string& key) {
  if (!v.is_boolean()) type_error(key, "true or false");
  dst = v.get<bool>();
}

void assign(std::string& dst, const json& v, const std::string& key) {
  if (!v.is_string()) type_error(key, "a string");
  dst = v.get<std::string>();
}

void assign(std::array<double, 2>& dst, const json& v, const std::string& key) {
  if (v.is_number()) {
    dst = {v.get<double>(), v.get<double>()};
    return;
  }
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    type_error(key, "a number or a pair of numbers");
  }
  dst = {v[0].get<double>(), v[1].get<double>()};
}

void assign(std::optional<double>& dst, const json& v, const std::string& key) {
  if (v.is_null()) {
    dst.reset();
    return;
  }
  if (!v.is_number()) type_error(key, "a number or null");
  dst = v.get<double>();
}

template <class E>
using Names = std::vector<std::pair<E, const char*>>;

const Names<DephasingConvention> kDephasingNames = {{DephasingConvention::coherence_rate, "coherence_rate"},
                                                    {DephasingConvention::channel_rate, "channel_rate"}};
const Names<PlasmonFrame> kFrameNames = {{PlasmonFrame::lab, "lab"}, {PlasmonFrame::displaced, "displaced"}};
const Names<PulseShape> kShapeNames = {
    {PulseShape::off, "off"}, {PulseShape::gaussian, "gaussian"}, {PulseShape::flat_top, "flat_top"}};

template <class E>
void assign_enum(E& dst, const json& v, const std::string& key, const Names<E>& names) {
  if (v.is_string()) {
    for (const auto& [e, n] : names) {
      if (v.get<std::string>() == n) {
        dst = e;
        return;
      }
    }
  }
  std::string options;
  for (const auto& [e, n] : names) options += (options.empty() ? "" : ", ") + std::string(n);
  type_error(key, ("one of " + options).c_str());
}

template <class E>
json enum_json(E e, const Names<E>& names) {
  for (const auto& [value, n] : names) {
    if (value == e) return n;
  }
  return nullptr;
}

json to_json_value(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }
template <class T>
json to_json_value(const T& v) {
  return json(v);
}

// ---- key table ---------------------------------------------------------------

struct Field {
  std::string key;
  std::function<json(const ScenarioConfig&)> get;
  std::function<void(ScenarioConfig&, const json&)> set;
};

#define QDCAV_FIELD(KEY, MEMBER)                                                     \
  Field {                                                                            \
    KEY, [](const ScenarioConfig& c) { return to_json_value(c.MEMBER); },            \
        [](ScenarioConfig& c, const json& v) { assign(c.MEMBER, v, KEY); }           \
  }
#define QDCAV_ENUM_FIELD(KEY, MEMBER, NAMES)                                        \
  Field {                                                                            \
    KEY, [](const ScenarioConfig& c) { return enum_json(c.MEMBER, NAMES); },         \
        [](ScenarioConfig& c, const json& v) { assign_enum(c.MEMBER, v, KEY, NAMES); } \
  }

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      QDCAV_FIELD("name", name),
      QDCAV_FIELD("description", description),
      QDCAV_FIELD("system.omega_qd_ev", system.omega_qd_ev),
      QDCAV_FIELD("system.omega_pl_ev", system.omega_pl_ev),
      QDCAV_FIELD("system.omega_cav_ev", system.omega_cav_ev),
      QDCAV_FIELD("system.g_s_mev", system.g_s_mev),
      QDCAV_FIELD("system.g_mev", system.g_mev),
      QDCAV_FIELD("system.d_qd_debye", system.d_qd_debye),
      QDCAV_FIELD("system.d_pl_debye", system.d_pl_debye),
      QDCAV_FIELD("system.gamma_qd_decay_uev", system.gamma_qd_decay_uev),
      QDCAV_FIELD("system.gamma_qd_dephase_uev", system.gamma_qd_dephase_uev),
      QDCAV_FIELD("system.gamma_pl_mev", system.gamma_pl_mev),
      QDCAV_FIELD("system.gamma_pl_dephase_uev", system.gamma_pl_dephase_uev),
      QDCAV_FIELD("system.gamma_cav_decay_uev", system.gamma_cav_decay_uev),
      QDCAV_FIELD("system.gamma_cav_dephase_uev", system.gamma_cav_dephase_uev),
      QDCAV_FIELD("system.n_pl_levels", system.n_pl_levels),
      QDCAV_FIELD("system.n_ph_levels", system.n_ph_levels),
      QDCAV_FIELD("system.eps_med", system.eps_med),
      QDCAV_ENUM_FIELD("system.dephasing_convention", system.dephasing, kDephasingNames),
      QDCAV_ENUM_FIELD("system.plasmon_frame", system.plasmon_frame, kFrameNames),
      QDCAV_ENUM_FIELD("pulse.shape", pulse.shape, kShapeNames),
      QDCAV_FIELD("pulse.e_max_v_per_m", pulse.e_max_v_per_m),
      QDCAV_FIELD("pulse.fwhm_fs", pulse.fwhm_fs),
      QDCAV_FIELD("pulse.t_peak_fs", pulse.t_peak_fs),
      QDCAV_FIELD("pulse.t0_fs", pulse.t0_fs),
      QDCAV_FIELD("pulse.t1_fs", pulse.t1_fs),
      QDCAV_FIELD("pulse.delta_fs", pulse.delta_fs),
      QDCAV_FIELD("pulse.omega_drive_ev", pulse.omega_drive_ev),
      QDCAV_FIELD("pulse.rwa_factor", pulse.rwa_factor),
      QDCAV_FIELD("integrator.dt_fs", integrator.dt_fs),
      QDCAV_FIELD("integrator.t_end_fs", integrator.t_end_fs),
      QDCAV_FIELD("integrator.record_every_fs", integrator.record_every_fs),
      QDCAV_FIELD("integrator.renormalize_trace", integrator.renormalize_trace),
      QDCAV_FIELD("integrator.memory_cap_mb", integrator.memory_cap_mb),
      QDCAV_FIELD("analysis.onset_threshold", analysis.onset_threshold),
      QDCAV_FIELD("analysis.prominence_fraction", analysis.prominence_fraction),
      QDCAV_FIELD("analysis.storage_probe_fs", analysis.storage_probe_fs),
      QDCAV_FIELD("output.dir", output_dir),
  };
  return table;
}

#undef QDCAV_FIELD
#undef QDCAV_ENUM_FIELD

const Field& field(const std::string& key) {
  for (const auto& f : fields()) {
    if (f.key == key) return f;
  }
  throw ParseError(key, "unknown key");
}

json parse_value(const std::string& text) {
  json v = json::parse(text, nullptr, false);
  if (v.is_discarded()) return json(text);
  return v;
}

// Flattens nested objects into dotted keys; arrays and scalars are leaves.
void flatten(const json& node, const std::string& prefix, std::vector<std::pair<std::string, json>>& out) {
  for (const auto& [k, v] : node.items()) {
    const std::string key = prefix.empty() ? k : prefix + "." + k;
    if (v.is_object()) {
      flatten(v, key, out);
    } else {
      out.emplace_back(key, v);
    }
  }
}

// ---- builtins ------------------------------------------------------------

ScenarioConfig weak_coupling() {
  ScenarioConfig c;
  c.name = "fig2";
  c.description =
      "Weak coupling, xi = 0.268: g_s = 30 / 17.3 meV, g = 1 meV, gamma_s = 150 meV, 20 fs Gaussian pulse";
  c.system.n_pl_levels = 4;
  c.system.n_ph_levels = 4;
  c.system.plasmon_frame = PlasmonFrame::displaced;
  c.integrator.dt_fs = 0.1;
  c.integrator.t_end_fs = 1000.0;
  c.integrator.record_every_fs = 1.0;
  return c;
}

ScenarioConfig strong_coupling() {
  ScenarioConfig c = weak_coupling();
  c.name = "fig3";
  c.description = "Strong coupling, xi = 2.68: the weak-coupling set with g = 10 meV";
  c.system.g_mev = 10.0;
  c.integrator.t_end_fs = 1500.0;
  return c;
}

ScenarioConfig two_level_photons() {
  ScenarioConfig c = strong_coupling();
  c.name = "fig4";
  c.description = "Strong coupling with two photon levels per cavity (photon and total concurrence)";
  c.system.n_ph_levels = 2;
  return c;
}

ScenarioConfig storage(double qd_decay_uev, double g_mev, double t_probe_fs, double dt_fs) {
  ScenarioConfig c = strong_coupling();
  c.system.g_mev = g_mev;
  c.system.gamma_qd_decay_uev = {qd_decay_uev, qd_decay_uev};
  c.system.gamma_cav_decay_uev = {2.05, 2.05};
  c.integrator.dt_fs = dt_fs;
  c.integrator.t_end_fs = t_probe_fs;
  c.integrator.record_every_fs = 1.0;
  c.analysis.storage_probe_fs = t_probe_fs;
  return c;
}

ScenarioConfig storage_main() {
  ScenarioConfig c = storage(500.0, 10.0, 4814.0, 0.25);
  c.name = "fig5";
  c.description =
      "Storage in Q = 1e6 cavities: QD decay 500 ueV, g = 10 meV, photon decay 2.05 ueV, probe 4814 fs "
      "(pulse assumed equal to the weak-coupling Gaussian)";
  return c;
}

ScenarioConfig storage_inset() {
  ScenarioConfig c = storage(50.0, 3.0, 9027.0, 0.25);
  c.name = "fig5_inset";
  c.description =
      "Storage in Q = 1e6 cavities: QD decay 50 ueV, g = 3 meV, photon decay 2.05 ueV, probe 9027 fs "
      "(pulse assumed equal to the weak-coupling Gaussian)";
  return c;
}

ScenarioConfig symmetric() {
  ScenarioConfig c = strong_coupling();
  c.name = "fig6";
  c.description = "Symmetric dot-plasmon coupling g_s = 30 / 30 meV with the strong-coupling g = 10 meV";
  c.system.g_s_mev = {30.0, 30.0};
  return c;
}

ScenarioConfig long_pump() {
  ScenarioConfig c = strong_coupling();
  c.name = "fig7";
  c.description = "Flat-top pump of 720 fs (t0 = 50 fs, t1 = 770 fs, delta = 10 fs), g = 10 meV";
  c.pulse.shape = PulseShape::flat_top;
  c.pulse.t0_fs = 50.0;
  c.pulse.t1_fs = 770.0;
  c.pulse.delta_fs = 10.0;
  c.integrator.t_end_fs = 1500.0;
  return c;
}

const std::map<std::string, ScenarioConfig (*)()>& builtin_table() {
  static const std::map<std::string, ScenarioConfig (*)()> table = {
      {"fig2", weak_coupling},    {"fig3", strong_coupling}, {"fig4", two_level_photons},
      {"fig5", storage_main},     {"fig5_inset", storage_inset}, {"fig6", symmetric},
      {"fig7", long_pump},
  };
  return table;
}

// ---- analysis helpers ------------------------------------------------------

std::optional<OscillationReport> oscillations(const std::vector<double>& t, const std::vector<double>& v,
                                              double fraction) {
  if (v.size() < 3) return std::nullopt;
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return analyze_oscillations(t, v, fraction * (*hi - *lo));
}

}  // namespace

SystemParams ScenarioConfig::system_params() const {
  SystemParams p;
  constexpr double mev = 1e-3;
  constexpr double uev = 1e-6;
  const auto scale = [](const std::array<double, 2>& a, double f) { return std::array<double, 2>{a[0] * f, a[1] * f}; };
  p.omega_qd = system.omega_qd_ev;
  p.omega_pl = system.omega_pl_ev;
  p.omega_cav = system.omega_cav_ev;
  p.g_s = scale(system.g_s_mev, mev);
  p.g = system.g_mev * mev;
  p.d_qd = system.d_qd_debye;
  p.d_pl = system.d_pl_debye;
  p.gamma_qd_decay = scale(system.gamma_qd_decay_uev, uev);
  p.gamma_qd_dephase = scale(system.gamma_qd_dephase_uev, uev);
  p.gamma_pl = system.gamma_pl_mev * mev;
  p.gamma_pl_dephase = system.gamma_pl_dephase_uev * uev;
  p.gamma_cav_decay = scale(system.gamma_cav_decay_uev, uev);
  p.gamma_cav_dephase = scale(system.gamma_cav_dephase_uev, uev);
  p.n_pl_levels = system.n_pl_levels;
  p.n_ph_levels = system.n_ph_levels;
  p.eps_med = system.eps_med;
  p.dephasing = system.dephasing;
  return p;
}

PulseSpec ScenarioConfig::pulse_spec() const {
  PulseSpec s;
  s.shape = pulse.shape;
  s.e_max = pulse.e_max_v_per_m;
  s.fwhm_fs = pulse.fwhm_fs;
  s.t_peak_fs = pulse.t_peak_fs;
  s.t0_fs = pulse.t0_fs;
  s.t1_fs = pulse.t1_fs;
  s.delta_fs = pulse.delta_fs;
  s.omega_drive = pulse.omega_drive_ev;
  s.rwa_factor = pulse.rwa_factor;
  return s;
}

void ScenarioConfig::validate() const {
  const auto check = [](const char* section, const auto& fn) {
    try {
      fn();
    } catch (const InvalidArgument& e) {
      throw ParseError(section, e.what());
    }
  };
  check("system", [&] { system_params().validate(); });
  check("pulse", [&] { pulse_spec().validate(); });
  check("integrator", [&] { integrator.validate(); });
  if (system.plasmon_frame == PlasmonFrame::displaced && system.gamma_pl_dephase_uev != 0.0) {
    throw ParseError("system.plasmon_frame", "the displaced frame requires gamma_pl_dephase_uev = 0");
  }
  if (!(analysis.onset_threshold >= 0.0)) throw ParseError("analysis.onset_threshold", "must be >= 0");
  if (!(analysis.prominence_fraction >= 0.0 && analysis.prominence_fraction <= 1.0)) {
    throw ParseError("analysis.prominence_fraction", "must lie in [0, 1]");
  }
  if (name.empty() || name.find_first_of("/\\") != std::string::npos) {
    throw ParseError("name", "must be a non-empty file name");
  }
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> out;
    for (const auto& f : fields()) out.push_back(f.key);
    return out;
  }();
  return keys;
}

void set_value(ScenarioConfig& config, const std::string& key, const std::string& value) {
  field(key).set(config, parse_value(value));
}

std::string get_value(const ScenarioConfig& config, const std::string& key) {
  return field(key).get(config).dump();
}

const std::vector<BuiltinScenario>& builtin_scenarios() {
  static const std::vector<BuiltinScenario> list = [] {
    std::vector<BuiltinScenario> out;
    for (const auto& [name, make] : builtin_table()) out.push_back({name, make().description});
    return out;
  }();
  return list;
}

ScenarioConfig builtin(const std::string& name) {
  const auto it = builtin_table().find(name);
  if (it == builtin_table().end()) throw ParseError("name", "no builtin scenario named '" + name + "'");
  return it->second();
}

ScenarioConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError("", e.what());
  }
  if (!doc.is_object()) throw ParseError("", "configuration must be a JSON object");

  ScenarioConfig config;
  if (doc.contains("base")) {
    if (!doc["base"].is_string()) throw ParseError("base", "expected a builtin scenario name");
    config = builtin(doc["base"].get<std::string>());
    doc.erase("base");
  }
  std::vector<std::pair<std::string, json>> leaves;
  flatten(doc, "", leaves);
  for (const auto& [key, value] : leaves) field(key).set(config, value);
  config.validate();
  return config;
}

ScenarioConfig load_config(const std::string& name_or_path) {
  if (builtin_table().count(name_or_path) != 0) return builtin(name_or_path);
  std::ifstream in(name_or_path);
  if (!in) throw ParseError("", "no builtin scenario or readable file named '" + name_or_path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string to_json(const ScenarioConfig& config) {
  json doc = json::object();
  for (const auto& f : fields()) doc[json::json_pointer("/" + [&] {
           std::string p = f.key;
           std::replace(p.begin(), p.end(), '.', '/');
           return p;
         }())] = f.get(config);
  return doc.dump(2);
}

void apply_overrides(ScenarioConfig& config, const std::vector<std::string>& assignments) {
  for (const auto& a : assignments) {
    const auto eq = a.find('=');
    if (eq == std::string::npos || eq == 0) throw ParseError(a, "override must look like key=value");
    set_value(config, a.substr(0, eq), a.substr(eq + 1));
  }
  config.validate();
}

RunSummary summarize(const ScenarioConfig& config, const SampleTable& table) {
  RunSummary s;
  s.scenario = config.name;
  s.samples = table.t_fs.size();
  const SystemParams p = config.system_params();
  s.xi = p.g_s_mean() > 0.0 && p.gamma_pl > 0.0 ? effective_xi(p.g, p.g_s_mean(), p.gamma_pl) : 0.0;
  s.fluence_nj_cm2 = fluence(config.pulse_spec(), p.eps_med);
  s.purcell_rate_mev = p.gamma_pl > 0.0 ? purcell_rate(p.g_s_mean(), p.gamma_pl) / 1e-3 : 0.0;
  if (table.t_fs.empty()) return s;

  s.t_end_fs = table.t_fs.back();
  s.max_trace_error = *std::max_element(table.trace_error.begin(), table.trace_error.end());

  std::vector<double> c(s.samples);
  for (std::size_t k = 0; k < s.samples; ++k) c[k] = table.records[k].C;
  const auto imax = std::size_t(std::max_element(c.begin(), c.end()) - c.begin());
  s.c_max = c[imax];
  s.t_c_max_fs = table.t_fs[imax];
  // Onset: start of the above-threshold stretch that holds the maximum, so
  // transient entanglement during the pulse is not counted.
  if (c[imax] > config.analysis.onset_threshold) {
    std::size_t k = imax;
    while (k > 0 && c[k - 1] > config.analysis.onset_threshold) --k;
    s.onset_fs = table.t_fs[k];
  }
  s.c_oscillations = oscillations(table.t_fs, c, config.analysis.prominence_fraction);

  std::vector<double> gt, gv;
  for (std::size_t k = 0; k < s.samples; ++k) {
    if (table.records[k].g2_12) {
      gt.push_back(table.t_fs[k]);
      gv.push_back(*table.records[k].g2_12);
    }
  }
  s.g2_12_oscillations = oscillations(gt, gv, config.analysis.prominence_fraction);
  return s;
}

std::string summary_json(const RunSummary& s) {
  const auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  const auto osc = [&](const std::optional<OscillationReport>& r) -> json {
    if (!r) return nullptr;
    return json{{"peak_times_fs", r->peak_times},
                {"peak_values", r->peak_values},
                {"mean_period_fs", opt(r->mean_period)},
                {"modulation_k", r->modulation_k}};
  };
  json doc = {{"scenario", s.scenario},
              {"status", s.status},
              {"wall_time_s", s.wall_time_s},
              {"samples", s.samples},
              {"t_end_fs", s.t_end_fs},
              {"max_trace_error", s.max_trace_error},
              {"concurrence_onset_fs", opt(s.onset_fs)},
              {"concurrence_max", opt(s.c_max)},
              {"concurrence_max_time_fs", opt(s.t_c_max_fs)},
              {"concurrence_oscillations", osc(s.c_oscillations)},
              {"g2_12_oscillations", osc(s.g2_12_oscillations)},
              {"xi", s.xi},
              {"fluence_nj_per_cm2", s.fluence_nj_cm2},
              {"purcell_rate_mev", s.purcell_rate_mev}};
  return doc.dump(2) + "\n";
}

SampleTable simulate(const ScenarioConfig& config, const SampleObserver& observer) {
  config.validate();
  const MasterEquation model(config.system_params(), config.pulse_spec(), config.system.plasmon_frame);
  SampleTable table;
  evolve(model, config.integrator, [&](const Sample& s, const DensityMatrix& rho) {
    table.t_fs.push_back(s.t_fs);
    table.records.push_back(s.record);
    table.trace_error.push_back(s.trace_error);
    if (observer) observer(s, rho);
  });
  return table;
}

RunResult run(const ScenarioConfig& config) {
  config.validate();
  RunResult result;
  const std::filesystem::path dir(config.output_dir);
  std::filesystem::create_directories(dir);
  result.csv_path = dir / (config.name + ".csv");
  result.summary_path = dir / (config.name + ".summary.json");

  std::ofstream csv(result.csv_path, std::ios::binary | std::ios::trunc);
  if (!csv) throw CapacityError("cannot open " + result.csv_path.string() + " for writing");
  write_csv_header(csv, config);

  const auto start = std::chrono::steady_clock::now();
  double last_t = 0.0;
  try {
    result.table = simulate(config, [&](const Sample& s, const DensityMatrix&) {
      write_csv_row(csv, s.t_fs, s.record, s.trace_error);
      last_t = s.t_fs;
    });
  } catch (const NumericBlowup& e) {
    write_truncation_marker(csv, last_t, e.what());
    result.error = e.what();
  } catch (const std::exception& e) {
    write_truncation_marker(csv, last_t, e.what());
    throw;
  }
  csv.flush();
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  // Statistics come from the file itself so they match a later re-read exactly.
  csv.close();
  const CsvFile written = read_csv(result.csv_path);
  result.table = written.table;
  result.summary = summarize(config, written.table);
  result.summary.wall_time_s = wall;
  if (result.error) result.summary.status = "truncated";

  std::ofstream out(result.summary_path, std::ios::binary | std::ios::trunc);
  out << summary_json(result.summary);
  return result;
}

ScenarioConfig open_geometry(const ScenarioConfig& cavity) {
  ScenarioConfig open = cavity;
  open.system.g_mev = 0.0;
  open.name = cavity.name + "_open";
  return open;
}

StorageReport compare_storage(const ScenarioConfig& cavity, const ScenarioConfig& open,
                              std::optional<double> t_probe_fs) {
  ScenarioConfig a = cavity;
  ScenarioConfig b = open;
  a.name = b.name = "";
  a.description = b.description = "";
  a.output_dir = b.output_dir = "";
  b.system.g_mev = a.system.g_mev;
  if (!(a == b)) throw InvalidArgument("compare_storage: configs must differ only in the dot-cavity coupling");

  StorageReport report;
  report.t_probe_fs = t_probe_fs.value_or(cavity.analysis.storage_probe_fs.value_or(cavity.integrator.t_end_fs));
  const auto concurrence_at = [&](ScenarioConfig c) {
    c.integrator.t_end_fs = report.t_probe_fs;
    c.integrator.record_every_fs = std::min(c.integrator.record_every_fs, report.t_probe_fs);
    const SampleTable t = simulate(c);
    if (t.t_fs.empty()) throw InvalidArgument("compare_storage: probe time must be > 0");
    return t.records.back().C;
  };
  report.c_cavity = concurrence_at(cavity);
  report.c_open = (cavity == open) ? report.c_cavity : concurrence_at(open);
  if (report.c_cavity == report.c_open) {
    report.ratio = 1.0;
  } else {
    report.ratio = report.c_open > 0.0 ? report.c_cavity / report.c_open : std::numeric_limits<double>::infinity();
  }
  return report;
}

}  // namespace qdcav
