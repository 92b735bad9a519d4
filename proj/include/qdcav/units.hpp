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

// Unit system used throughout the library:
//   energy  eV        time     fs
//   dipole  Debye     field    V/m
//   fluence nJ/cm^2
// Every conversion between these and SI lives in this header.

namespace qdcav::units {

inline constexpr double hbar_ev_fs = 0.6582119569;  // eV fs

inline constexpr double speed_of_light = 299792458.0;        // m/s
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F/m

inline constexpr double debye_e_nm = 0.0208194;  // e nm per Debye
inline constexpr double meV = 1e-3;
inline constexpr double ueV = 1e-6;

/// Dipole coupling energy d*E in eV for a dipole in Debye and a field in V/m.
constexpr double dipole_energy_ev(double dipole_debye, double field_v_per_m) {
  return dipole_debye * debye_e_nm * field_v_per_m * 1e-9;
}

/// J/m^2 -> nJ/cm^2.
inline constexpr double j_per_m2_to_nj_per_cm2 = 1e5;

}  // namespace qdcav::units
