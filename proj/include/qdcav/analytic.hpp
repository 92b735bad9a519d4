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

#include <optional>

#include "qdcav/propagator.hpp"
#include "qdcav/tensor.hpp"

namespace qdcav {

/// Two-photon family A (x |11> + y |00> + Psi-) on two two-level cavities.
struct RestrictedFamilyParams {
  double x = 0.0;  // two-photon amplitude
  double y = 0.0;  // vacuum amplitude
  double A() const;
};

/// Pure state of the family in the basis {|00>, |01>, |10>, |11>} (layout dims {2, 2}).
DensityMatrix restricted_state(const RestrictedFamilyParams& params);

/// g2_12 = (1 - C_ph) / (1 - C_ph / 2)^2, valid for small vacuum amplitude.
/// Throws DomainError outside [0, 1].
double g12_from_cph(double c_ph);

/// g2_12 = 4 x^2 / C_ph, valid for small two-photon amplitude. Throws DomainError for C_ph <= 0.
double g12_small_x(double x, double c_ph);

/// Unnormalized pair correlation G2_12 = 1 - C_ph.
double unnormalized_g12(double c_ph);

/// Occupations and rates entering the effective concurrence decay rate.
struct DecayEstimateInputs {
  double n_bar_qd = 0.0;
  double n_bar_cav = 0.0;
  double gamma_qd = 0.0;   // eV
  double gamma_cav = 0.0;  // eV

  /// Occupation fractions; throw DomainError when both occupations vanish.
  double alpha_qd() const;
  double alpha_cav() const;
};

/// gamma = alpha_qd gamma_qd + alpha_cav gamma_cav in eV.
double concurrence_decay_rate(const DecayEstimateInputs& inputs);

/// Time-averaged dot and cavity occupations (summed over both sites) on
/// [t_from, end of run]. Without `t_from_fs` the window starts at the first
/// concurrence maximum. Throws InvalidArgument for an empty window.
DecayEstimateInputs decay_inputs(const Trajectory& trajectory, double gamma_qd, double gamma_cav,
                                 std::optional<double> t_from_fs = std::nullopt);

}  // namespace qdcav
