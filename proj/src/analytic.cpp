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


#include "qdcav/analytic.hpp"

#include <cmath>
#include <vector>

#include "qdcav/errors.hpp"
#include "qdcav/observables.hpp"

namespace qdcav {

double RestrictedFamilyParams::A() const { return 1.0 / std::sqrt(1.0 + x * x + y * y); }

DensityMatrix restricted_state(const RestrictedFamilyParams& params) {
  if (!std::isfinite(params.x) || !std::isfinite(params.y)) {
    throw InvalidArgument("restricted_state: x and y must be finite");
  }
  const double a = params.A();
  const double r = a / std::sqrt(2.0);
  Eigen::VectorXcd psi(4);
  psi << a * params.y, r, -r, a * params.x;
  return DensityMatrix::pure(SubsystemLayout({2, 2}), psi);
}

double g12_from_cph(double c_ph) {
  if (!(c_ph >= 0.0 && c_ph <= 1.0)) throw DomainError("g12_from_cph: C_ph must lie in [0, 1]");
  const double den = 1.0 - 0.5 * c_ph;
  return (1.0 - c_ph) / (den * den);
}

double g12_small_x(double x, double c_ph) {
  if (!(c_ph > 0.0)) throw DomainError("g12_small_x: C_ph must be > 0");
  return 4.0 * x * x / c_ph;
}

double unnormalized_g12(double c_ph) { return 1.0 - c_ph; }

double DecayEstimateInputs::alpha_qd() const {
  const double total = n_bar_qd + n_bar_cav;
  if (!(total > 0.0)) throw DomainError("decay estimate: total occupation must be > 0");
  return n_bar_qd / total;
}

double DecayEstimateInputs::alpha_cav() const {
  const double total = n_bar_qd + n_bar_cav;
  if (!(total > 0.0)) throw DomainError("decay estimate: total occupation must be > 0");
  return n_bar_cav / total;
}

double concurrence_decay_rate(const DecayEstimateInputs& inputs) {
  return inputs.alpha_qd() * inputs.gamma_qd + inputs.alpha_cav() * inputs.gamma_cav;
}

DecayEstimateInputs decay_inputs(const Trajectory& trajectory, double gamma_qd, double gamma_cav,
                                 std::optional<double> t_from_fs) {
  const std::size_t n = trajectory.size();
  if (n < 2) throw InvalidArgument("decay_inputs: need at least two samples");
  double t_from = 0.0;
  if (t_from_fs) {
    t_from = *t_from_fs;
  } else {
    std::vector<double> c(n);
    for (std::size_t k = 0; k < n; ++k) c[k] = trajectory.records[k].C;
    const OscillationReport rep = analyze_oscillations(trajectory.times, c);
    if (rep.peak_times.empty()) throw InvalidArgument("decay_inputs: concurrence has no maximum");
    t_from = rep.peak_times.front();
  }

  // Trapezoidal time average over the window.
  double span = 0.0, qd = 0.0, cav = 0.0;
  for (std::size_t k = 1; k < n; ++k) {
    const double t0 = trajectory.times[k - 1];
    const double t1 = trajectory.times[k];
    if (t0 < t_from) continue;
    const auto& a = trajectory.records[k - 1];
    const auto& b = trajectory.records[k];
    const double h = t1 - t0;
    span += h;
    qd += 0.5 * h * (a.n_qd[0] + a.n_qd[1] + b.n_qd[0] + b.n_qd[1]);
    cav += 0.5 * h * (a.n_cav[0] + a.n_cav[1] + b.n_cav[0] + b.n_cav[1]);
  }
  if (!(span > 0.0)) throw InvalidArgument("decay_inputs: averaging window is empty");
  return DecayEstimateInputs{qd / span, cav / span, gamma_qd, gamma_cav};
}

}  // namespace qdcav
