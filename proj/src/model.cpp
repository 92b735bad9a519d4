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

#include "qdcav/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "qdcav/errors.hpp"
#include "qdcav/units.hpp"

namespace qdcav {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument(what);
}

void require_nonneg(double v, const char* name) {
  require(std::isfinite(v) && v >= 0.0, std::string(name) + " must be finite and >= 0");
}

// 1 / (tanh(x) + 1) written without cancellation for large negative x.
double inv_tanh_plus_one(double x) { return 0.5 * (1.0 + std::exp(-2.0 * x)); }

}  // namespace

void SystemParams::validate() const {
  for (int i = 0; i < 2; ++i) {
    require_nonneg(g_s[i], "g_s");
    require_nonneg(d_qd[i], "d_qd");
    require_nonneg(gamma_qd_decay[i], "gamma_qd_decay");
    require_nonneg(gamma_qd_dephase[i], "gamma_qd_dephase");
    require_nonneg(gamma_cav_decay[i], "gamma_cav_decay");
    require_nonneg(gamma_cav_dephase[i], "gamma_cav_dephase");
    require(std::isfinite(omega_qd[i]) && std::isfinite(omega_cav[i]), "mode energies must be finite");
  }
  require(std::isfinite(omega_pl), "omega_pl must be finite");
  require_nonneg(g, "g");
  require_nonneg(d_pl, "d_pl");
  require_nonneg(gamma_pl, "gamma_pl");
  require_nonneg(gamma_pl_dephase, "gamma_pl_dephase");
  require(n_pl_levels >= 2, "n_pl_levels must be >= 2");
  require(n_ph_levels >= 2, "n_ph_levels must be >= 2");
  require(std::isfinite(eps_med) && eps_med >= 1.0, "eps_med must be >= 1");
}

void PulseSpec::validate() const {
  require(std::isfinite(e_max) && e_max >= 0.0, "e_max must be >= 0");
  require(std::isfinite(omega_drive), "omega_drive must be finite");
  require(std::isfinite(rwa_factor) && rwa_factor >= 0.0, "rwa_factor must be >= 0");
  if (shape == PulseShape::gaussian) {
    require(std::isfinite(fwhm_fs) && fwhm_fs > 0.0, "fwhm_fs must be > 0 for a gaussian pulse");
    require(std::isfinite(t_peak_fs), "t_peak_fs must be finite");
  } else if (shape == PulseShape::flat_top) {
    require(std::isfinite(t0_fs) && std::isfinite(t1_fs) && t1_fs > t0_fs,
            "flat_top pulse needs t1_fs > t0_fs");
    require(std::isfinite(delta_fs) && delta_fs > 0.0, "delta_fs must be > 0 for a flat_top pulse");
  }
}

double envelope(const PulseSpec& pulse, double t_fs) {
  switch (pulse.shape) {
    case PulseShape::off:
      return 0.0;
    case PulseShape::gaussian: {
      // Intensity E0^2 has the stated FWHM, so the field width is sqrt(2) larger.
      const double sigma_field = pulse.fwhm_fs / (2.0 * std::sqrt(std::numbers::ln2));
      const double x = (t_fs - pulse.t_peak_fs) / sigma_field;
      return pulse.e_max * std::exp(-0.5 * x * x);
    }
    case PulseShape::flat_top: {
      const double tc = 0.5 * (pulse.t0_fs + pulse.t1_fs);
      const double d = pulse.delta_fs;
      const double norm = inv_tanh_plus_one((tc - pulse.t0_fs) / d) + inv_tanh_plus_one((pulse.t1_fs - tc) / d);
      const double den = inv_tanh_plus_one((t_fs - pulse.t0_fs) / d) + inv_tanh_plus_one((pulse.t1_fs - t_fs) / d);
      return pulse.e_max * norm / den;
    }
  }
  return 0.0;
}

std::array<double, 2> pulse_support(const PulseSpec& pulse, double rel) {
  switch (pulse.shape) {
    case PulseShape::off:
      return {0.0, 0.0};
    case PulseShape::gaussian: {
      const double sigma_field = pulse.fwhm_fs / (2.0 * std::sqrt(std::numbers::ln2));
      const double half = sigma_field * std::sqrt(-2.0 * std::log(rel));
      return {pulse.t_peak_fs - half, pulse.t_peak_fs + half};
    }
    case PulseShape::flat_top: {
      // Tails fall off as exp(-2|t - t_edge| / delta).
      const double half = 0.5 * pulse.delta_fs * (-std::log(rel) + std::log(2.0));
      return {pulse.t0_fs - half, pulse.t1_fs + half};
    }
  }
  return {0.0, 0.0};
}

QOperator hamiltonian_static(const SystemParams& params, double omega_drive) {
  params.validate();
  const SubsystemLayout layout = params.layout();
  const QOperator sigma = annihilation(2);
  const QOperator b = embed(annihilation(params.n_pl_levels), Site::plasmon, layout);
  const QOperator s[2] = {embed(sigma, Site::qd1, layout), embed(sigma, Site::qd2, layout)};
  const QOperator c[2] = {embed(annihilation(params.n_ph_levels), Site::cav1, layout),
                          embed(annihilation(params.n_ph_levels), Site::cav2, layout)};

  QOperator h = QOperator::zero(layout);
  const auto add_number = [&](const QOperator& a, double detuning) {
    if (detuning != 0.0) h = add_scaled(h, detuning, multiply(adjoint(a), a));
  };
  const auto add_exchange = [&](const QOperator& a, const QOperator& bb, double coupling) {
    if (coupling == 0.0) return;
    // -coupling (a^dag bb + a bb^dag)
    h = add_scaled(h, -coupling, multiply(adjoint(a), bb));
    h = add_scaled(h, -coupling, multiply(a, adjoint(bb)));
  };

  for (int i = 0; i < 2; ++i) add_number(s[i], params.omega_qd[i] - omega_drive);
  add_number(b, params.omega_pl - omega_drive);
  for (int i = 0; i < 2; ++i) add_number(c[i], params.omega_cav[i] - omega_drive);
  for (int i = 0; i < 2; ++i) add_exchange(s[i], b, params.g_s[i]);
  for (int i = 0; i < 2; ++i) add_exchange(s[i], c[i], params.g);
  return h;
}

namespace {

QOperator dipole_coupling(const SystemParams& params, const PulseSpec& pulse, bool include_plasmon) {
  params.validate();
  const SubsystemLayout layout = params.layout();
  QOperator h = QOperator::zero(layout);
  const auto add_dipole = [&](const QOperator& a, double dipole_debye) {
    if (dipole_debye == 0.0) return;
    const double per_field = -pulse.rwa_factor * units::dipole_energy_ev(dipole_debye, 1.0);
    h = add_scaled(h, per_field, add_scaled(a, 1.0, adjoint(a)));
  };
  add_dipole(embed(annihilation(2), Site::qd1, layout), params.d_qd[0]);
  add_dipole(embed(annihilation(2), Site::qd2, layout), params.d_qd[1]);
  if (include_plasmon) add_dipole(embed(annihilation(params.n_pl_levels), Site::plasmon, layout), params.d_pl);
  return h;
}

}  // namespace

QOperator drive_coupling(const SystemParams& params, const PulseSpec& pulse) {
  return dipole_coupling(params, pulse, true);
}

QOperator qd_drive_coupling(const SystemParams& params, const PulseSpec& pulse) {
  return dipole_coupling(params, pulse, false);
}

PlasmonAmplitude::PlasmonAmplitude(const SystemParams& params, const PulseSpec& pulse, double t_origin_fs,
                                   double step_fs)
    : pulse_(pulse) {
  params.validate();
  pulse.validate();
  require(std::isfinite(step_fs) && step_fs > 0.0, "step_fs must be > 0");
  require(std::isfinite(t_origin_fs), "t_origin_fs must be finite");
  const double detuning = params.omega_pl - pulse.omega_drive;
  lambda_ = Complex(-0.5 * params.gamma_pl, -detuning) / units::hbar_ev_fs;
  force_ = pulse.rwa_factor * units::dipole_energy_ev(params.d_pl, 1.0) / units::hbar_ev_fs;
  if (pulse.shape == PulseShape::off || pulse.e_max == 0.0 || params.d_pl == 0.0) return;

  const auto support = pulse_support(pulse, 1e-14);
  const double a = std::max(support[0], t_origin_fs);
  const double b = std::max(support[1], a + step_fs);
  const auto count = static_cast<std::size_t>(std::ceil((b - a) / step_fs));
  t_start_ = a;
  step_ = (b - a) / double(count);
  value_.resize(count + 1);
  slope_.resize(count + 1);
  Complex y = 0.0;
  constexpr int kSub = 4;
  const double h = step_ / kSub;
  for (std::size_t k = 0; k <= count; ++k) {
    const double t = a + double(k) * step_;
    value_[k] = y;
    slope_[k] = rhs(t, y);
    if (k == count) break;
    for (int s = 0; s < kSub; ++s) {
      const double ts = t + s * h;
      const Complex k1 = rhs(ts, y);
      const Complex k2 = rhs(ts + 0.5 * h, y + 0.5 * h * k1);
      const Complex k3 = rhs(ts + 0.5 * h, y + 0.5 * h * k2);
      const Complex k4 = rhs(ts + h, y + h * k3);
      y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
  }
}

Complex PlasmonAmplitude::rhs(double t_fs, Complex alpha) const {
  return lambda_ * alpha + Complex(0.0, force_ * envelope(pulse_, t_fs));
}

Complex PlasmonAmplitude::operator()(double t_fs) const {
  if (value_.empty() || t_fs <= t_start_) return 0.0;
  const double u = (t_fs - t_start_) / step_;
  const std::size_t last = value_.size() - 1;
  if (u >= double(last)) {
    return value_[last] * std::exp(lambda_ * (t_fs - (t_start_ + double(last) * step_)));
  }
  const auto k = static_cast<std::size_t>(u);
  const double s = u - double(k);
  const double s2 = s * s;
  const double s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * value_[k] + (s3 - 2 * s2 + s) * step_ * slope_[k] +
         (-2 * s3 + 3 * s2) * value_[k + 1] + (s3 - s2) * step_ * slope_[k + 1];
}

Complex PlasmonAmplitude::derivative(double t_fs) const { return rhs(t_fs, (*this)(t_fs)); }

QOperator hamiltonian_drive(const SystemParams& params, const PulseSpec& pulse, double t_fs) {
  const double e0 = envelope(pulse, t_fs);
  const QOperator unit = drive_coupling(params, pulse);
  return QOperator(unit.layout(), SparseMatrix(e0 * unit.matrix()));
}

std::vector<LindbladChannel> build_channels(const SystemParams& params) {
  params.validate();
  const SubsystemLayout layout = params.layout();
  const double dephase_scale = params.dephasing == DephasingConvention::coherence_rate ? 2.0 : 1.0;

  const QOperator lowering[5] = {
      embed(annihilation(2), Site::qd1, layout),
      embed(annihilation(2), Site::qd2, layout),
      embed(annihilation(params.n_pl_levels), Site::plasmon, layout),
      embed(annihilation(params.n_ph_levels), Site::cav1, layout),
      embed(annihilation(params.n_ph_levels), Site::cav2, layout),
  };
  const double decay[5] = {params.gamma_qd_decay[0], params.gamma_qd_decay[1], params.gamma_pl,
                           params.gamma_cav_decay[0], params.gamma_cav_decay[1]};
  const double dephase[5] = {params.gamma_qd_dephase[0], params.gamma_qd_dephase[1],
                             params.gamma_pl_dephase, params.gamma_cav_dephase[0],
                             params.gamma_cav_dephase[1]};

  std::vector<LindbladChannel> channels;
  for (int k = 0; k < 5; ++k) {
    if (decay[k] > 0.0) channels.push_back({lowering[k], decay[k]});
  }
  for (int k = 0; k < 5; ++k) {
    if (dephase[k] > 0.0) {
      channels.push_back({multiply(adjoint(lowering[k]), lowering[k]), dephase_scale * dephase[k]});
    }
  }
  return channels;
}

double fluence(const PulseSpec& pulse, double eps_med) {
  if (pulse.shape == PulseShape::off || pulse.e_max == 0.0) return 0.0;
  pulse.validate();
  const auto [a, b] = pulse_support(pulse, 1e-20);
  const auto e2 = [&](double t) {
    const double e = envelope(pulse, t);
    return e * e;
  };
  using boost::math::quadrature::gauss_kronrod;
  // Split at the plateau edges so the adaptive rule sees smooth pieces.
  double integral = 0.0;
  if (pulse.shape == PulseShape::flat_top) {
    integral = gauss_kronrod<double, 31>::integrate(e2, a, pulse.t0_fs, 15, 1e-10) +
               gauss_kronrod<double, 31>::integrate(e2, pulse.t0_fs, pulse.t1_fs, 15, 1e-10) +
               gauss_kronrod<double, 31>::integrate(e2, pulse.t1_fs, b, 15, 1e-10);
  } else {
    integral = gauss_kronrod<double, 31>::integrate(e2, a, b, 15, 1e-10);
  }
  const double j_per_m2 = 0.5 * std::sqrt(eps_med) * units::speed_of_light *
                          units::vacuum_permittivity * integral * 1e-15;
  return j_per_m2 * units::j_per_m2_to_nj_per_cm2;
}

double purcell_rate(double g_s_mean, double gamma_pl) {
  if (!(gamma_pl > 0.0)) throw DomainError("purcell_rate: plasmon damping must be > 0");
  return 4.0 * g_s_mean * g_s_mean / gamma_pl;
}

double effective_xi(double g, double g_s_mean, double gamma_pl) {
  if (!(g_s_mean > 0.0)) throw DomainError("effective_xi: mean dot-plasmon coupling must be > 0");
  return g * gamma_pl / (g_s_mean * g_s_mean);
}

}  // namespace qdcav
