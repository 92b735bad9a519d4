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

#include "qdcav/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "liouvillian.hpp"
#include "qdcav/errors.hpp"
#include "qdcav/units.hpp"

namespace qdcav {

void IntegratorConfig::validate() const {
  if (!(std::isfinite(dt_fs) && dt_fs > 0.0)) throw InvalidArgument("dt_fs must be > 0");
  if (!(std::isfinite(t_end_fs) && t_end_fs >= 0.0)) throw InvalidArgument("t_end_fs must be >= 0");
  if (!(std::isfinite(record_every_fs) && record_every_fs >= dt_fs)) {
    throw InvalidArgument("record_every_fs must be >= dt_fs");
  }
  if (t_end_fs > 0.0 && record_every_fs > t_end_fs) {
    throw InvalidArgument("record_every_fs must be <= t_end_fs");
  }
  if (!(memory_cap_mb > 0.0)) throw InvalidArgument("memory_cap_mb must be > 0");
}

namespace {

std::vector<DriveTerm> single_drive(QOperator op, std::function<double(double)> envelope) {
  std::vector<DriveTerm> drives;
  drives.push_back({std::move(op), std::move(envelope)});
  return drives;
}

}  // namespace

MasterEquation::MasterEquation(const SystemParams& params, const PulseSpec& pulse, PlasmonFrame frame)
    : h_static_(hamiltonian_static(params, pulse.omega_drive)),
      channels_(build_channels(params)),
      frame_(frame) {
  pulse.validate();
  const auto env = [pulse](double t) { return qdcav::envelope(pulse, t); };
  if (frame == PlasmonFrame::lab) {
    drives_ = single_drive(drive_coupling(params, pulse), env);
  } else {
    if (params.gamma_pl_dephase != 0.0) {
      throw InvalidArgument("the displaced plasmon frame requires gamma_pl_dephase = 0");
    }
    const SubsystemLayout layout = params.layout();
    // -g_si (alpha s_i^dag + alpha^* s_i) = Re(alpha) X + Im(alpha) Y
    QOperator x = QOperator::zero(layout);
    QOperator y = QOperator::zero(layout);
    for (int i = 0; i < 2; ++i) {
      const QOperator s = embed(annihilation(2), i == 0 ? Site::qd1 : Site::qd2, layout);
      const QOperator sd = adjoint(s);
      x = add_scaled(x, -params.g_s[i], add_scaled(s, 1.0, sd));
      y = add_scaled(y, Complex(0.0, -params.g_s[i]), add_scaled(sd, -1.0, s));
    }
    auto alpha = std::make_shared<const PlasmonAmplitude>(params, pulse);
    shift_ = [alpha](double t) { return (*alpha)(t); };
    drives_.push_back({qd_drive_coupling(params, pulse), env});
    drives_.push_back({std::move(x), [alpha](double t) { return (*alpha)(t).real(); }});
    drives_.push_back({std::move(y), [alpha](double t) { return (*alpha)(t).imag(); }});
  }
  std::vector<QOperator> ops;
  for (const auto& d : drives_) ops.push_back(d.op);
  kernel_ = std::make_unique<Liouvillian>(h_static_, ops, channels_);
}

MasterEquation::MasterEquation(QOperator h_static, QOperator drive_coupling,
                               std::function<double(double)> envelope,
                               std::vector<LindbladChannel> channels)
    : MasterEquation(std::move(h_static), single_drive(std::move(drive_coupling), std::move(envelope)),
                     std::move(channels)) {}

MasterEquation::MasterEquation(QOperator h_static, std::vector<DriveTerm> drives,
                               std::vector<LindbladChannel> channels)
    : h_static_(std::move(h_static)), drives_(std::move(drives)), channels_(std::move(channels)) {
  std::vector<QOperator> ops;
  for (auto& d : drives_) {
    if (!(d.op.layout() == h_static_.layout())) {
      throw InvalidDimension("static and drive Hamiltonians live on different layouts");
    }
    if (!d.coefficient) d.coefficient = [](double) { return 0.0; };
    ops.push_back(d.op);
  }
  for (const auto& ch : channels_) {
    if (!(ch.op.layout() == h_static_.layout())) throw InvalidDimension("collapse operator layout mismatch");
    if (!(ch.rate >= 0.0)) throw InvalidArgument("channel rate must be >= 0");
  }
  kernel_ = std::make_unique<Liouvillian>(h_static_, ops, channels_);
}

MasterEquation::~MasterEquation() = default;
MasterEquation::MasterEquation(MasterEquation&&) noexcept = default;
MasterEquation& MasterEquation::operator=(MasterEquation&&) noexcept = default;

Complex MasterEquation::plasmon_shift(double t_fs) const { return shift_ ? shift_(t_fs) : Complex(0.0); }

void MasterEquation::drive_coefficients(double t_fs, std::vector<double>& out) const {
  out.resize(drives_.size());
  for (std::size_t m = 0; m < drives_.size(); ++m) out[m] = drives_[m].coefficient(t_fs);
}

QOperator MasterEquation::hamiltonian(double t_fs) const {
  QOperator h = h_static_;
  for (const auto& d : drives_) {
    const double f = d.coefficient(t_fs);
    if (f != 0.0) h = add_scaled(h, f, d.op);
  }
  return h;
}

DenseMatrix MasterEquation::reference_derivative(const DenseMatrix& rho, double t_fs) const {
  const SparseMatrix h = hamiltonian(t_fs).matrix();
  const Complex minus_i_over_hbar(0.0, -1.0 / units::hbar_ev_fs);
  DenseMatrix out = minus_i_over_hbar * (DenseMatrix(h * rho) - DenseMatrix(rho * h));
  for (const auto& ch : channels_) {
    const SparseMatrix& a = ch.op.matrix();
    const SparseMatrix ad = a.adjoint();
    const SparseMatrix ad_a = ad * a;
    const double rate = ch.rate / units::hbar_ev_fs;
    out += rate * (DenseMatrix(a * rho * ad) - 0.5 * (DenseMatrix(ad_a * rho) + DenseMatrix(rho * ad_a)));
  }
  return out;
}

namespace {

void mirror_lower(std::size_t n, double* re, double* im) {
  constexpr std::size_t kBlock = 64;
  for (std::size_t ib = 0; ib < n; ib += kBlock) {
    const std::size_t ie = std::min(n, ib + kBlock);
    for (std::size_t jb = 0; jb <= ib; jb += kBlock) {
      const std::size_t je = std::min(n, jb + kBlock);
      for (std::size_t i = ib; i < ie; ++i) {
        const std::size_t jend = std::min(je, i);
        for (std::size_t j = jb; j < jend; ++j) {
          re[i * n + j] = re[j * n + i];
          im[i * n + j] = -im[j * n + i];
        }
      }
    }
  }
}

void split(const DenseMatrix& m, std::vector<double>& re, std::vector<double>& im) {
  const auto n = std::size_t(m.rows());
  re.resize(n * n);
  im.resize(n * n);
  const Complex* src = m.data();
  for (std::size_t k = 0; k < n * n; ++k) {
    re[k] = src[k].real();
    im[k] = src[k].imag();
  }
}

DenseMatrix join(std::size_t n, const std::vector<double>& re, const std::vector<double>& im) {
  DenseMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  Complex* dst = m.data();
  for (std::size_t k = 0; k < n * n; ++k) dst[k] = Complex(re[k], im[k]);
  return m;
}

}  // namespace

DenseMatrix MasterEquation::derivative(const DenseMatrix& rho, double t_fs) const {
  const std::size_t n = dim();
  if (std::size_t(rho.rows()) != n || std::size_t(rho.cols()) != n) {
    throw InvalidDimension("density matrix does not match the model layout");
  }
  std::vector<double> re, im;
  split(rho, re, im);
  std::vector<double> out_re(n * n, 0.0), out_im(n * n, 0.0);
  auto coeff = kernel_->make_coefficients();
  std::vector<double> fields;
  drive_coefficients(t_fs, fields);
  kernel_->update(coeff, fields);
  for (std::size_t i = 0; i < n; ++i) {
    kernel_->row_upper(i, coeff, re.data(), im.data(), out_re.data() + i * n, out_im.data() + i * n);
  }
  mirror_lower(n, out_re.data(), out_im.data());
  return join(n, out_re, out_im);
}

double Trajectory::max_trace_error() const {
  return trace_error.empty() ? 0.0 : *std::max_element(trace_error.begin(), trace_error.end());
}

double Trajectory::max_hermiticity_error() const {
  return hermiticity_error.empty() ? 0.0
                                   : *std::max_element(hermiticity_error.begin(), hermiticity_error.end());
}

Rk4Integrator::Rk4Integrator(const MasterEquation& model, const DensityMatrix& initial, double t0_fs,
                             bool renormalize_trace)
    : model_(&model), n_(model.dim()), t_(t0_fs), t_base_(t0_fs), renormalize_(renormalize_trace) {
  if (!(initial.layout() == model.layout())) {
    throw InvalidDimension("initial state layout does not match the model");
  }
  split(initial.matrix(), rho_re_, rho_im_);
  acc_re_.assign(n_ * n_, 0.0);
  acc_im_.assign(n_ * n_, 0.0);
  sa_re_.assign(n_ * n_, 0.0);
  sa_im_.assign(n_ * n_, 0.0);
  sb_re_.assign(n_ * n_, 0.0);
  sb_im_.assign(n_ * n_, 0.0);
}

double Rk4Integrator::working_set_bytes(std::size_t dim) {
  // Eight split-storage buffers plus one complex copy for sampling.
  return double(dim) * double(dim) * (8.0 * sizeof(double) + sizeof(Complex));
}

void Rk4Integrator::step(double dt) {
  if (!(dt > 0.0)) throw InvalidArgument("dt must be > 0");
  const Liouvillian& kernel = model_->kernel();
  const std::size_t n = n_;
  std::vector<double> k_re(n), k_im(n);
  auto coeff = kernel.make_coefficients();
  std::vector<double> fields;

  // Stage s reads X_s and writes acc and X_{s+1} = rho + next_scale * k_s.
  const auto stage = [&](double t, const double* x_re, const double* x_im, double acc_weight,
                         bool first, double* next_re, double* next_im, double next_scale) {
    model_->drive_coefficients(t, fields);
    kernel.update(coeff, fields);
    for (std::size_t i = 0; i < n; ++i) {
      kernel.row_upper(i, coeff, x_re, x_im, k_re.data(), k_im.data());
      const std::size_t base = i * n;
      const double* __restrict r_re = rho_re_.data() + base;
      const double* __restrict r_im = rho_im_.data() + base;
      double* __restrict a_re = acc_re_.data() + base;
      double* __restrict a_im = acc_im_.data() + base;
      if (first) {
        for (std::size_t j = i; j < n; ++j) {
          a_re[j] = r_re[j] + acc_weight * k_re[j];
          a_im[j] = r_im[j] + acc_weight * k_im[j];
        }
      } else {
        for (std::size_t j = i; j < n; ++j) {
          a_re[j] += acc_weight * k_re[j];
          a_im[j] += acc_weight * k_im[j];
        }
      }
      if (next_re != nullptr) {
        double* __restrict nr = next_re + base;
        double* __restrict ni = next_im + base;
        for (std::size_t j = i; j < n; ++j) {
          nr[j] = r_re[j] + next_scale * k_re[j];
          ni[j] = r_im[j] + next_scale * k_im[j];
        }
      }
    }
    if (next_re != nullptr) mirror_lower(n, next_re, next_im);
  };

  const double t = t_;
  stage(t, rho_re_.data(), rho_im_.data(), dt / 6.0, true, sa_re_.data(), sa_im_.data(), 0.5 * dt);
  stage(t + 0.5 * dt, sa_re_.data(), sa_im_.data(), dt / 3.0, false, sb_re_.data(), sb_im_.data(), 0.5 * dt);
  stage(t + 0.5 * dt, sb_re_.data(), sb_im_.data(), dt / 3.0, false, sa_re_.data(), sa_im_.data(), dt);
  stage(t + dt, sa_re_.data(), sa_im_.data(), dt / 6.0, false, nullptr, nullptr, 0.0);
  rho_re_.swap(acc_re_);
  rho_im_.swap(acc_im_);
  mirror_lower(n, rho_re_.data(), rho_im_.data());

  ++steps_;
  if (dt != last_dt_) {
    t_base_ = t_;
    base_steps_ = steps_ - 1;
    last_dt_ = dt;
  }
  t_ = t_base_ + double(steps_ - base_steps_) * dt;

  double tr = 0.0;
  for (std::size_t i = 0; i < n; ++i) tr += rho_re_[i * n + i];
  if (!std::isfinite(tr)) throw NumericBlowup(steps_, t_, dt);
  if (renormalize_ && tr != 0.0) {
    const double s = 1.0 / tr;
    for (auto& v : rho_re_) v *= s;
    for (auto& v : rho_im_) v *= s;
  }
}

DenseMatrix Rk4Integrator::state_matrix() const { return join(n_, rho_re_, rho_im_); }

DensityMatrix Rk4Integrator::state() const {
  const DenseMatrix m = state_matrix();
  if (!m.allFinite()) throw NumericBlowup(steps_, t_, 0.0);
  return DensityMatrix(model_->layout(), m);
}

Complex Rk4Integrator::trace() const {
  Complex tr = 0.0;
  for (std::size_t i = 0; i < n_; ++i) tr += Complex(rho_re_[i * n_ + i], rho_im_[i * n_ + i]);
  return tr;
}

DensityMatrix rk4_step(const DensityMatrix& rho, double t_fs, double dt_fs, const MasterEquation& model,
                       bool renormalize_trace) {
  Rk4Integrator integrator(model, rho, t_fs, renormalize_trace);
  integrator.step(dt_fs);
  return integrator.state();
}

namespace {
constexpr double kDivergedMargin = 0.5;
}  // namespace

Trajectory evolve(const MasterEquation& model, const IntegratorConfig& config, const DensityMatrix& initial,
                  const SampleObserver& observer) {
  config.validate();
  const double needed_mb = Rk4Integrator::working_set_bytes(model.dim()) / (1024.0 * 1024.0);
  if (needed_mb > config.memory_cap_mb) {
    throw CapacityError("run needs about " + std::to_string(long(needed_mb)) + " MB, cap is " +
                        std::to_string(long(config.memory_cap_mb)) + " MB");
  }
  Trajectory traj;
  if (config.t_end_fs == 0.0) return traj;

  const auto whole_steps = [&](double span, const char* what) {
    const double r = span / config.dt_fs;
    const long k = std::lround(r);
    if (std::abs(r - double(k)) > 1e-6 * std::max(1.0, r)) {
      throw InvalidArgument(std::string(what) + " must be a multiple of dt_fs");
    }
    return k;
  };
  const long total = whole_steps(config.t_end_fs, "t_end_fs");
  const long every = whole_steps(config.record_every_fs, "record_every_fs");
  const bool full_layout = model.layout().size() == 5;

  Rk4Integrator integrator(model, initial, 0.0, config.renormalize_trace);
  const auto record = [&](long step) {
    const double t = double(step) * config.dt_fs;
    const DenseMatrix m = integrator.state_matrix();
    if (!m.allFinite()) throw NumericBlowup(step, t, config.dt_fs);
    Sample sample;
    sample.t_fs = t;
    sample.trace_error = std::abs(m.trace() - 1.0);
    // Entries of a density matrix are bounded by one in magnitude; the
    // trace alone stays put even while an unstable step size diverges.
    if (sample.trace_error > kDivergedMargin || m.cwiseAbs().maxCoeff() > 1.0 + kDivergedMargin) {
      throw NumericBlowup(step, t, config.dt_fs);
    }
    sample.hermiticity_error = hermiticity_error(m);
    // The state is validated against the loose sampling tolerance below;
    // drift beyond it is reported through trace_error.
    const DensityMatrix rho = DensityMatrix::unchecked(model.layout(), m);
    if (full_layout) sample.record = observe(rho, kPopulationFloor, model.plasmon_shift(t));
    traj.times.push_back(t);
    traj.records.push_back(sample.record);
    traj.trace_error.push_back(sample.trace_error);
    traj.hermiticity_error.push_back(sample.hermiticity_error);
    if (observer) observer(sample, rho);
  };

  record(0);
  for (long step = 1; step <= total; ++step) {
    integrator.step(config.dt_fs);
    if (step % every == 0 || step == total) record(step);
  }
  return traj;
}

Trajectory evolve(const MasterEquation& model, const IntegratorConfig& config, const SampleObserver& observer) {
  return evolve(model, config, DensityMatrix::ground_state(model.layout()), observer);
}

}  // namespace qdcav
