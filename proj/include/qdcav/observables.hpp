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
#include <optional>
#include <span>
#include <vector>

#include "qdcav/tensor.hpp"

namespace qdcav {

enum class Mode { qd1, qd2, plasmon, cav1, cav2 };

/// Population floor below which g2 normalization is reported as missing.
inline constexpr double kPopulationFloor = 1e-6;

/// Everything recorded per sample of a trajectory. Optional entries are
/// missing when undefined (g2 below the population floor, photon concurrence
/// for more than two photon levels).
struct ObservableRecord {
  std::array<double, 2> n_qd{};
  std::array<double, 2> n_cav{};
  double n_pl = 0.0;
  double n_total = 0.0;
  std::optional<double> g2_11, g2_22, g2_12;
  double C = 0.0;
  std::optional<double> C_ph;
  std::optional<double> C_tot;
  double F2 = 0.0;

  double F() const;
};

struct OscillationReport {
  std::vector<double> peak_times;
  std::vector<double> peak_values;
  std::optional<double> mean_period;
  double modulation_k = 0.0;
};

/// Tr(n_mode rho) for a state on the five-site cavity layout.
double population(const DensityMatrix& rho, Mode mode);

/// Tr(b rho), the plasmon coherent amplitude.
Complex plasmon_coherence(const DensityMatrix& rho);

/// Unnormalized same-time pair correlation Tr(c_i^dag c_j^dag c_j c_i rho), i, j in {1, 2}.
double g2_numerator(const DensityMatrix& rho, int i, int j);

/// Normalized pair correlation, empty when n_i n_j < floor.
std::optional<double> g2_same_time(const DensityMatrix& rho, int i, int j,
                                   double floor = kPopulationFloor);

/// Reduced state on the sites listed in `keep` (kept in layout order).
/// Throws InvalidArgument for an empty or out-of-range set.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep);
DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<std::size_t> keep);

/// Wootters concurrence of a two-qubit state.
double concurrence(const DensityMatrix& rho_2qubit);

/// <Psi-|rho|Psi-> with Psi- = (|01> - |10>) / sqrt(2).
double bell_fidelity_sq(const DensityMatrix& rho_2qubit);

/// Two-dot reduced state.
DensityMatrix qd_reduce(const DensityMatrix& rho_full);

/// Two-cavity reduced state; requires two photon levels (UnsupportedLayout otherwise).
DensityMatrix photon_qubit_reduce(const DensityMatrix& rho_full);

/// All observables of a sample. For a state held in a plasmon frame displaced
/// by `plasmon_shift` (b = b' + shift) the plasmon population is reported in
/// the lab frame.
ObservableRecord observe(const DensityMatrix& rho_full, double floor = kPopulationFloor,
                         Complex plasmon_shift = {});

/// Local maxima with at least `prominence` on both sides, mean peak spacing
/// and k = (max - min) / (max + min) over the series.
OscillationReport analyze_oscillations(std::span<const double> times, std::span<const double> values,
                                       double prominence);
/// Prominence defaulting to 5% of the series range.
OscillationReport analyze_oscillations(std::span<const double> times, std::span<const double> values);

}  // namespace qdcav
