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
#include <vector>

#include "qdcav/tensor.hpp"

namespace qdcav {

/// How a pure-dephasing rate maps onto a Lindblad channel with the number
/// operator as collapse operator.
enum class DephasingConvention {
  /// Channel rate 2*gamma: adjacent-level coherences decay as exp(-gamma t / hbar).
  coherence_rate,
  /// Channel rate gamma: adjacent-level coherences decay as exp(-gamma t / (2 hbar)).
  channel_rate,
};

/// Physical constants of the two-dot / plasmon / two-cavity model. Energies
/// and rates in eV, dipoles in Debye.
struct SystemParams {
  std::array<double, 2> omega_qd{2.05, 2.05};
  double omega_pl = 2.05;
  std::array<double, 2> omega_cav{2.05, 2.05};
  std::array<double, 2> g_s{30e-3, 17.3e-3};
  double g = 1e-3;
  std::array<double, 2> d_qd{13.0, 13.0};
  double d_pl = 4000.0;
  std::array<double, 2> gamma_qd_decay{0.05e-6, 0.05e-6};
  std::array<double, 2> gamma_qd_dephase{8.6e-6, 8.6e-6};
  double gamma_pl = 150e-3;
  double gamma_pl_dephase = 0.0;
  std::array<double, 2> gamma_cav_decay{0.1e-3, 0.1e-3};
  std::array<double, 2> gamma_cav_dephase{8.6e-6, 8.6e-6};
  std::size_t n_pl_levels = 24;
  std::size_t n_ph_levels = 4;
  double eps_med = 2.25;
  DephasingConvention dephasing = DephasingConvention::coherence_rate;

  /// Throws InvalidArgument naming the first violated invariant.
  void validate() const;
  SubsystemLayout layout() const { return SubsystemLayout::cavity_qed(n_pl_levels, n_ph_levels); }
  double g_s_mean() const { return 0.5 * (g_s[0] + g_s[1]); }

  bool operator==(const SystemParams&) const = default;
};

enum class PulseShape { off, gaussian, flat_top };

/// Driving-field envelope plus carrier. The Gaussian FWHM refers to the
/// intensity envelope E0(t)^2.
struct PulseSpec {
  PulseShape shape = PulseShape::gaussian;
  double e_max = 2.5e6;  // V/m
  double fwhm_fs = 20.0;
  double t_peak_fs = 36.3;
  double t0_fs = 26.3;
  double t1_fs = 46.3;
  double delta_fs = 10.0;
  double omega_drive = 2.05;  // eV
  /// Carrier average multiplying E0(t) in the rotating-frame drive.
  double rwa_factor = 1.0;

  void validate() const;
  bool operator==(const PulseSpec&) const = default;
};

struct LindbladChannel {
  QOperator op;
  double rate;  // eV
};

/// Field envelope E0(t) in V/m.
double envelope(const PulseSpec& pulse, double t_fs);

/// Interval outside which the envelope is below `rel` of its maximum.
std::array<double, 2> pulse_support(const PulseSpec& pulse, double rel = 1e-12);

/// Rotating-frame Hamiltonian H0 + Hint in eV, frame rotating at `omega_drive`.
QOperator hamiltonian_static(const SystemParams& params, double omega_drive);

/// Drive operator per unit envelope: -rwa_factor * [sum_i d_i (s_i + s_i^dag) + d_s (b + b^dag)]
/// in eV per (V/m). hamiltonian_drive(t) = envelope(t) * drive_coupling.
QOperator drive_coupling(const SystemParams& params, const PulseSpec& pulse);
QOperator hamiltonian_drive(const SystemParams& params, const PulseSpec& pulse, double t_fs);

/// Drive of the two dots alone, -rwa_factor * sum_i d_i (s_i + s_i^dag), per unit field.
QOperator qd_drive_coupling(const SystemParams& params, const PulseSpec& pulse);

/// Classical plasmon amplitude alpha(t) obeying
///   i hbar d(alpha)/dt = (omega_pl - omega_drive - i gamma_s / 2) alpha - rwa_factor d_s E0(t)
/// from alpha(t_origin) = 0. Tabulated over the pulse support with
/// cubic Hermite interpolation; free decay is used after the pulse.
class PlasmonAmplitude {
 public:
  PlasmonAmplitude(const SystemParams& params, const PulseSpec& pulse, double t_origin_fs = 0.0,
                   double step_fs = 0.01);
  Complex operator()(double t_fs) const;
  Complex derivative(double t_fs) const;

 private:
  Complex rhs(double t_fs, Complex alpha) const;

  PulseSpec pulse_;
  Complex lambda_;   // homogeneous rate, 1/fs
  double force_;     // i F / hbar per unit envelope, 1/fs per (V/m)
  double t_start_ = 0.0;
  double step_ = 0.0;
  std::vector<Complex> value_, slope_;
};

/// Collapse channels with nonzero rate: decays (s1, s2, b, c1, c2) then
/// dephasing (n_qd1, n_qd2, n_pl, n_cav1, n_cav2).
std::vector<LindbladChannel> build_channels(const SystemParams& params);

/// Pulse fluence in nJ/cm^2 with carrier average 1/2, by adaptive quadrature.
double fluence(const PulseSpec& pulse, double eps_med);

/// Purcell-enhanced dot decay rate 4 g_s^2 / gamma_s.
double purcell_rate(double g_s_mean, double gamma_pl);

/// Effective dot-cavity coupling g * gamma_s / g_s^2.
double effective_xi(double g, double g_s_mean, double gamma_pl);

inline double coupling_asymmetry(const std::array<double, 2>& g_s) { return g_s[0] - g_s[1]; }

}  // namespace qdcav
