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

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "qdcav/model.hpp"
#include "qdcav/observables.hpp"
#include "qdcav/tensor.hpp"

namespace qdcav {

struct IntegratorConfig {
  double dt_fs = 0.02;
  double t_end_fs = 1000.0;
  double record_every_fs = 1.0;
  bool renormalize_trace = false;
  /// Upper bound on the integrator working set; exceeded -> CapacityError.
  double memory_cap_mb = 4096.0;

  void validate() const;
  bool operator==(const IntegratorConfig&) const = default;
};

class Liouvillian;

/// Frame for the plasmon mode. In the displaced frame b = b' + alpha(t) with
/// alpha the classical driven amplitude, so the state only carries the
/// fluctuations around the coherent field and needs far fewer plasmon levels.
/// The transformation is exact when the plasmon has no pure dephasing.
enum class PlasmonFrame { lab, displaced };

/// Hermitian drive operator with a real time-dependent coefficient.
struct DriveTerm {
  QOperator op;
  std::function<double(double)> coefficient;
};

/// Assembled Lindblad generator
///   d rho / dt = -i/hbar [H(t), rho] + sum_k gamma_k/hbar (A rho A^dag - {A^dag A, rho}/2)
/// with H(t) = H_static + sum_m f_m(t) V_m.
class MasterEquation {
 public:
  MasterEquation(const SystemParams& params, const PulseSpec& pulse, PlasmonFrame frame = PlasmonFrame::lab);
  MasterEquation(QOperator h_static, QOperator drive_coupling, std::function<double(double)> envelope,
                 std::vector<LindbladChannel> channels);
  MasterEquation(QOperator h_static, std::vector<DriveTerm> drives, std::vector<LindbladChannel> channels);
  ~MasterEquation();
  MasterEquation(MasterEquation&&) noexcept;
  MasterEquation& operator=(MasterEquation&&) noexcept;

  const SubsystemLayout& layout() const noexcept { return h_static_.layout(); }
  std::size_t dim() const noexcept { return h_static_.dim(); }
  const std::vector<LindbladChannel>& channels() const noexcept { return channels_; }
  PlasmonFrame frame() const noexcept { return frame_; }
  /// alpha(t) of the displaced frame; zero in the lab frame.
  Complex plasmon_shift(double t_fs) const;
  /// f_m(t) for every drive term.
  void drive_coefficients(double t_fs, std::vector<double>& out) const;
  QOperator hamiltonian(double t_fs) const;

  /// d rho / dt in 1/fs from explicit sparse products (reference path).
  DenseMatrix reference_derivative(const DenseMatrix& rho, double t_fs) const;
  /// d rho / dt through the banded kernel used by the integrator.
  DenseMatrix derivative(const DenseMatrix& rho, double t_fs) const;

  const Liouvillian& kernel() const { return *kernel_; }

 private:
  QOperator h_static_;
  std::vector<DriveTerm> drives_;
  std::vector<LindbladChannel> channels_;
  PlasmonFrame frame_ = PlasmonFrame::lab;
  std::function<Complex(double)> shift_;
  std::unique_ptr<Liouvillian> kernel_;
};

struct Sample {
  double t_fs;
  double trace_error;
  double hermiticity_error;
  ObservableRecord record;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<ObservableRecord> records;
  std::vector<double> trace_error;
  std::vector<double> hermiticity_error;

  std::size_t size() const { return times.size(); }
  double max_trace_error() const;
  double max_hermiticity_error() const;
};

/// Called for every recorded sample with the full state.
using SampleObserver = std::function<void(const Sample&, const DensityMatrix&)>;

/// Fixed-step RK4 state for one run.
class Rk4Integrator {
 public:
  Rk4Integrator(const MasterEquation& model, const DensityMatrix& initial, double t0_fs = 0.0,
                bool renormalize_trace = false);

  /// Advances by dt; throws NumericBlowup on non-finite entries.
  void step(double dt_fs);
  double time() const { return t_; }
  long steps_taken() const { return steps_; }
  DensityMatrix state() const;
  DenseMatrix state_matrix() const;
  Complex trace() const;
  /// Bytes held by the integrator for a given dimension.
  static double working_set_bytes(std::size_t dim);

 private:
  const MasterEquation* model_;
  std::size_t n_;
  double t_ = 0.0;
  double t_base_ = 0.0;
  double last_dt_ = 0.0;
  long steps_ = 0;
  long base_steps_ = 0;
  bool renormalize_;
  std::vector<double> rho_re_, rho_im_, acc_re_, acc_im_, sa_re_, sa_im_, sb_re_, sb_im_;
};

/// One classical RK4 step of the master equation.
DensityMatrix rk4_step(const DensityMatrix& rho, double t_fs, double dt_fs, const MasterEquation& model,
                       bool renormalize_trace = false);

/// Propagates from `initial` (ground state when empty) and records observables
/// every `record_every_fs`.
Trajectory evolve(const MasterEquation& model, const IntegratorConfig& config,
                  const DensityMatrix& initial, const SampleObserver& observer = {});
Trajectory evolve(const MasterEquation& model, const IntegratorConfig& config,
                  const SampleObserver& observer = {});

}  // namespace qdcav
