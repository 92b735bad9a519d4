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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "qdcav/analytic.hpp"
#include "qdcav/errors.hpp"
#include "qdcav/model.hpp"
#include "qdcav/observables.hpp"
#include "qdcav/scenario.hpp"
#include "qdcav/units.hpp"
#include "qdcav/version.hpp"

namespace py = pybind11;
using namespace qdcav;

namespace {

ScenarioConfig configure(const std::string& name_or_path, const std::vector<std::string>& overrides) {
  ScenarioConfig config = load_config(name_or_path);
  apply_overrides(config, overrides);
  config.validate();
  return config;
}

py::array_t<double> column(const SampleTable& table, auto&& pick) {
  py::array_t<double> out(static_cast<py::ssize_t>(table.records.size()));
  auto view = out.mutable_unchecked<1>();
  for (std::size_t k = 0; k < table.records.size(); ++k) {
    const std::optional<double> v = pick(table.records[k]);
    view(static_cast<py::ssize_t>(k)) = v.value_or(NAN);
  }
  return out;
}

py::dict as_columns(const SampleTable& table) {
  py::dict d;
  d["t_fs"] = py::array_t<double>(static_cast<py::ssize_t>(table.t_fs.size()), table.t_fs.data());
  d["n_qd1"] = column(table, [](const ObservableRecord& r) -> std::optional<double> { return r.n_qd[0]; });
  d["n_qd2"] = column(table, [](const ObservableRecord& r) -> std::optional<double> { return r.n_qd[1]; });
  d["n_pl"] = column(table, [](const ObservableRecord& r) -> std::optional<double> { return r.n_pl; });
  d["n_cav1"] = column(table, [](const ObservableRecord& r) -> std::optional<double> { return r.n_cav[0]; });
  d["n_cav2"] = column(table, [](const ObservableRecord& r) -> std::optional<double> { return r.n_cav[1]; });
  d["n_total"] = column(table, [](const ObservableRecord& r) -> std::optional<double> { return r.n_total; });
  d["C"] = column(table, [](const ObservableRecord& r) -> std::optional<double> { return r.C; });
  d["C_ph"] = column(table, [](const ObservableRecord& r) { return r.C_ph; });
  d["C_tot"] = column(table, [](const ObservableRecord& r) { return r.C_tot; });
  d["F2"] = column(table, [](const ObservableRecord& r) -> std::optional<double> { return r.F2; });
  d["g2_11"] = column(table, [](const ObservableRecord& r) { return r.g2_11; });
  d["g2_22"] = column(table, [](const ObservableRecord& r) { return r.g2_22; });
  d["g2_12"] = column(table, [](const ObservableRecord& r) { return r.g2_12; });
  d["trace_err"] = py::array_t<double>(static_cast<py::ssize_t>(table.trace_error.size()), table.trace_error.data());
  return d;
}

DensityMatrix two_qubit(const DenseMatrix& m) { return DensityMatrix(SubsystemLayout({2, 2}), m); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Two quantum dots coupled through a plasmon and two cavities: Lindblad propagation and observables";
  m.attr("__version__") = kVersion;

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<NumericBlowup>(m, "NumericBlowup", PyExc_ArithmeticError);
  py::register_exception<CapacityError>(m, "CapacityError", PyExc_MemoryError);

  m.def(
      "builtin_scenarios",
      [] {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& b : qdcav::builtin_scenarios()) out.emplace_back(b.name, b.summary);
        return out;
      },
      "(name, summary) pairs of the built-in scenarios.");

  m.def(
      "config_json",
      [](const std::string& scenario, const std::vector<std::string>& overrides) {
        return to_json(configure(scenario, overrides));
      },
      py::arg("scenario"), py::arg("overrides") = std::vector<std::string>{},
      "Resolved configuration as a JSON document.");

  m.def(
      "simulate",
      [](const std::string& scenario, const std::vector<std::string>& overrides) {
        const ScenarioConfig config = configure(scenario, overrides);
        SampleTable table;
        {
          py::gil_scoped_release release;
          table = qdcav::simulate(config);
        }
        return as_columns(table);
      },
      py::arg("scenario"), py::arg("overrides") = std::vector<std::string>{},
      "Propagate a scenario in memory. Returns a dict of numpy arrays keyed by CSV column; "
      "undefined entries are NaN.");

  m.def(
      "run",
      [](const std::string& scenario, const std::vector<std::string>& overrides) {
        const ScenarioConfig config = configure(scenario, overrides);
        RunResult result;
        {
          py::gil_scoped_release release;
          result = qdcav::run(config);
        }
        py::dict d;
        d["csv"] = result.csv_path.string();
        d["summary"] = result.summary_path.string();
        d["summary_json"] = summary_json(result.summary);
        d["error"] = result.error;
        return d;
      },
      py::arg("scenario"), py::arg("overrides") = std::vector<std::string>{},
      "Run a scenario and write <output_dir>/<name>.csv and .summary.json.");

  m.def(
      "concurrence", [](const DenseMatrix& rho) { return qdcav::concurrence(two_qubit(rho)); }, py::arg("rho"),
      "Wootters concurrence of a 4x4 two-qubit density matrix.");
  m.def(
      "bell_fidelity_sq", [](const DenseMatrix& rho) { return qdcav::bell_fidelity_sq(two_qubit(rho)); },
      py::arg("rho"));

  m.def(
      "restricted_state", [](double x, double y) { return qdcav::restricted_state({x, y}).matrix(); }, py::arg("x"),
      py::arg("y") = 0.0, "Normalized pure state A (x|11> + y|00> + Psi-) of two photon qubits.");
  m.def("g12_from_cph", &qdcav::g12_from_cph, py::arg("c_ph"));
  m.def("g12_small_x", &qdcav::g12_small_x, py::arg("x"), py::arg("c_ph"));
  m.def("unnormalized_g12", &qdcav::unnormalized_g12, py::arg("c_ph"));
  m.def(
      "purcell_rate_mev", [](double g_s_mev, double gamma_s_mev) { return purcell_rate(g_s_mev * units::meV, gamma_s_mev * units::meV) / units::meV; },
      py::arg("g_s_mev"), py::arg("gamma_s_mev"));
  m.def(
      "effective_xi",
      [](double g_mev, double g_s_mev, double gamma_s_mev) { return qdcav::effective_xi(g_mev, g_s_mev, gamma_s_mev); },
      py::arg("g_mev"), py::arg("g_s_mev"), py::arg("gamma_s_mev"));
}
