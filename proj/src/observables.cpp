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

#include "qdcav/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qdcav/errors.hpp"

namespace qdcav {

namespace {

constexpr double kImagTol = 1e-10;

void require_cavity_layout(const SubsystemLayout& layout) {
  if (layout.size() != 5) throw UnsupportedLayout("observable needs the five-site cavity layout");
}

std::size_t site_of(Mode m) { return static_cast<std::size_t>(m); }

void require_two_qubit(const DensityMatrix& rho, const char* what) {
  if (rho.dim() != 4 || rho.layout().size() != 2) {
    throw DomainError(std::string(what) + ": expected a 4x4 two-qubit density matrix");
  }
}

DensityMatrix normalized(const DensityMatrix& rho) {
  const double tr = rho.trace().real();
  if (!(tr > 0.0)) return rho;
  DenseMatrix m = rho.matrix() / tr;
  return DensityMatrix::unchecked(rho.layout(), std::move(m));
}

}  // namespace

double ObservableRecord::F() const { return std::sqrt(std::max(0.0, F2)); }

double population(const DensityMatrix& rho, Mode mode) {
  const SubsystemLayout& layout = rho.layout();
  require_cavity_layout(layout);
  const std::size_t site = site_of(mode);
  Complex acc = 0.0;
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    const std::size_t lvl = layout.level(i, site);
    if (lvl != 0) acc += double(lvl) * rho.matrix()(Eigen::Index(i), Eigen::Index(i));
  }
  if (std::abs(acc.imag()) > kImagTol) throw DomainError("population has an imaginary part");
  return acc.real();
}

double g2_numerator(const DensityMatrix& rho, int i, int j) {
  if (i < 1 || i > 2 || j < 1 || j > 2) throw InvalidArgument("cavity index must be 1 or 2");
  const SubsystemLayout& layout = rho.layout();
  require_cavity_layout(layout);
  const std::size_t si = site_index(i == 1 ? Site::cav1 : Site::cav2);
  const std::size_t sj = site_index(j == 1 ? Site::cav1 : Site::cav2);
  // c_i^dag c_j^dag c_j c_i is diagonal in the Fock basis.
  double acc = 0.0;
  for (std::size_t k = 0; k < rho.dim(); ++k) {
    const double ni = double(layout.level(k, si));
    const double weight = si == sj ? ni * (ni - 1.0) : ni * double(layout.level(k, sj));
    if (weight != 0.0) acc += weight * rho.matrix()(Eigen::Index(k), Eigen::Index(k)).real();
  }
  return acc;
}

std::optional<double> g2_same_time(const DensityMatrix& rho, int i, int j, double floor) {
  const double ni = population(rho, i == 1 ? Mode::cav1 : Mode::cav2);
  const double nj = population(rho, j == 1 ? Mode::cav1 : Mode::cav2);
  const double den = ni * nj;
  if (!(den >= floor)) return std::nullopt;
  return g2_numerator(rho, i, j) / den;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep) {
  const SubsystemLayout& layout = rho.layout();
  if (keep.empty()) throw InvalidArgument("partial_trace: keep set is empty");
  std::vector<bool> kept(layout.size(), false);
  for (std::size_t s : keep) {
    if (s >= layout.size()) throw InvalidArgument("partial_trace: site out of range");
    kept[s] = true;
  }
  std::vector<std::size_t> kept_dims, rest_dims;
  for (std::size_t s = 0; s < layout.size(); ++s) (kept[s] ? kept_dims : rest_dims).push_back(layout.dim(s));
  const SubsystemLayout reduced_layout(kept_dims);
  const std::size_t nk = reduced_layout.total_dim();
  if (rest_dims.empty()) return rho;

  // Split every composite index into (kept index, traced index).
  const std::size_t n = rho.dim();
  std::size_t n_rest = 1;
  for (std::size_t d : rest_dims) n_rest *= d;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> groups(n_rest);
  for (std::size_t idx = 0; idx < n; ++idx) {
    std::size_t a = 0, r = 0;
    for (std::size_t s = 0; s < layout.size(); ++s) {
      const std::size_t lvl = layout.level(idx, s);
      if (kept[s]) a = a * layout.dim(s) + lvl;
      else r = r * layout.dim(s) + lvl;
    }
    groups[r].emplace_back(idx, a);
  }
  DenseMatrix red = DenseMatrix::Zero(Eigen::Index(nk), Eigen::Index(nk));
  const DenseMatrix& m = rho.matrix();
  for (const auto& group : groups) {
    for (const auto& [i, a] : group) {
      for (const auto& [j, b] : group) red(Eigen::Index(a), Eigen::Index(b)) += m(Eigen::Index(i), Eigen::Index(j));
    }
  }
  return DensityMatrix::unchecked(reduced_layout, std::move(red));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<std::size_t> keep) {
  return partial_trace(rho, std::span<const std::size_t>(keep.begin(), keep.size()));
}

double concurrence(const DensityMatrix& rho) {
  require_two_qubit(rho, "concurrence");
  const DenseMatrix& m = rho.matrix();
  const double herm = hermiticity_error(m);
  if (herm > DensityMatrix::kHermitianTol) throw DomainError("concurrence: input is not Hermitian");
  if (std::abs(m.trace() - 1.0) > DensityMatrix::kTraceTol) throw DomainError("concurrence: trace differs from 1");

  const Eigen::Matrix4cd r = 0.5 * (Eigen::Matrix4cd(m) + Eigen::Matrix4cd(m).adjoint());
  Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
  // sigma_y (x) sigma_y = antidiag(-1, 1, 1, -1)
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;

  // With rho = X X^dag the square roots of the eigenvalues of rho * rho_tilde
  // are the singular values of X^T (sigma_y x sigma_y) X. Working with X keeps
  // the small values accurate for nearly pure states, where square roots of
  // eigenvalues near zero would amplify round-off.
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(r);
  const Eigen::Vector4d w = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::Matrix4cd x = es.eigenvectors() * w.cast<Complex>().asDiagonal();
  const Eigen::Matrix4cd tau = x.transpose() * yy * x;
  const Eigen::JacobiSVD<Eigen::Matrix4cd> svd(tau);
  std::array<double, 4> lam{};
  for (int k = 0; k < 4; ++k) lam[k] = svd.singularValues()(k);
  std::sort(lam.begin(), lam.end(), std::greater<>());
  const double c = lam[0] - lam[1] - lam[2] - lam[3];
  return std::clamp(c, 0.0, 1.0);
}

double bell_fidelity_sq(const DensityMatrix& rho) {
  require_two_qubit(rho, "bell_fidelity_sq");
  const DenseMatrix& m = rho.matrix();
  const double f2 = 0.5 * (m(1, 1) + m(2, 2) - m(1, 2) - m(2, 1)).real();
  return std::max(0.0, f2);
}

DensityMatrix qd_reduce(const DensityMatrix& rho_full) {
  require_cavity_layout(rho_full.layout());
  return partial_trace(rho_full, {site_index(Site::qd1), site_index(Site::qd2)});
}

DensityMatrix photon_qubit_reduce(const DensityMatrix& rho_full) {
  const SubsystemLayout& layout = rho_full.layout();
  require_cavity_layout(layout);
  if (layout.dim(site_index(Site::cav1)) != 2 || layout.dim(site_index(Site::cav2)) != 2) {
    throw UnsupportedLayout("photon-pair concurrence needs two photon levels per cavity");
  }
  return partial_trace(rho_full, {site_index(Site::cav1), site_index(Site::cav2)});
}

Complex plasmon_coherence(const DensityMatrix& rho) {
  const SubsystemLayout& layout = rho.layout();
  require_cavity_layout(layout);
  const std::size_t site = site_index(Site::plasmon);
  const std::size_t stride = layout.stride(site);
  const std::size_t top = layout.dim(site) - 1;
  const DenseMatrix& m = rho.matrix();
  Complex sum = 0.0;
  for (std::size_t i = 0; i < layout.total_dim(); ++i) {
    const std::size_t l = layout.level(i, site);
    if (l == top) continue;
    sum += std::sqrt(double(l + 1)) * m(Eigen::Index(i + stride), Eigen::Index(i));
  }
  return sum;
}

ObservableRecord observe(const DensityMatrix& rho, double floor, Complex plasmon_shift) {
  const SubsystemLayout& layout = rho.layout();
  require_cavity_layout(layout);
  ObservableRecord rec;
  rec.n_qd = {population(rho, Mode::qd1), population(rho, Mode::qd2)};
  rec.n_pl = population(rho, Mode::plasmon);
  if (plasmon_shift != Complex(0.0)) {
    rec.n_pl += 2.0 * (std::conj(plasmon_shift) * plasmon_coherence(rho)).real() + std::norm(plasmon_shift);
  }
  rec.n_cav = {population(rho, Mode::cav1), population(rho, Mode::cav2)};
  rec.n_total = rec.n_qd[0] + rec.n_qd[1] + rec.n_pl + rec.n_cav[0] + rec.n_cav[1];

  const double g11 = g2_numerator(rho, 1, 1);
  const double g22 = g2_numerator(rho, 2, 2);
  const double g12 = g2_numerator(rho, 1, 2);
  const auto normalize = [floor](double num, double a, double b) -> std::optional<double> {
    const double den = a * b;
    if (!(den >= floor)) return std::nullopt;
    return num / den;
  };
  rec.g2_11 = normalize(g11, rec.n_cav[0], rec.n_cav[0]);
  rec.g2_22 = normalize(g22, rec.n_cav[1], rec.n_cav[1]);
  rec.g2_12 = normalize(g12, rec.n_cav[0], rec.n_cav[1]);

  rec.C = concurrence(normalized(qd_reduce(rho)));

  const DensityMatrix cav = normalized(
      partial_trace(rho, {site_index(Site::cav1), site_index(Site::cav2)}));
  const std::size_t nph = layout.dim(site_index(Site::cav1));
  const DenseMatrix& cm = cav.matrix();
  const Eigen::Index i01 = 1, i10 = Eigen::Index(nph);
  rec.F2 = std::max(0.0, 0.5 * (cm(i01, i01) + cm(i10, i10) - cm(i01, i10) - cm(i10, i01)).real());
  if (nph == 2) {
    rec.C_ph = concurrence(cav);
    rec.C_tot = rec.C + *rec.C_ph;
  }
  return rec;
}

OscillationReport analyze_oscillations(std::span<const double> times, std::span<const double> values,
                                       double prominence) {
  if (times.size() != values.size()) throw InvalidArgument("analyze_oscillations: length mismatch");
  const std::size_t n = values.size();
  if (n < 3) throw InvalidArgument("analyze_oscillations: need at least 3 samples");
  OscillationReport rep;

  const double vmax = *std::max_element(values.begin(), values.end());
  const double vmin = std::max(0.0, *std::min_element(values.begin(), values.end()));
  rep.modulation_k = vmax + vmin > 0.0 ? std::clamp((vmax - vmin) / (vmax + vmin), 0.0, 1.0) : 0.0;

  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(values[i] > values[i - 1])) continue;
    // Walk across a flat top; the peak sits at its first sample.
    std::size_t right = i + 1;
    while (right < n && values[right] == values[i]) ++right;
    if (right == n || !(values[right] < values[i])) continue;

    const double v = values[i];
    double left_min = v;
    for (std::size_t k = i; k-- > 0;) {
      if (values[k] > v) break;
      left_min = std::min(left_min, values[k]);
    }
    double right_min = v;
    for (std::size_t k = right; k < n; ++k) {
      if (values[k] > v) break;
      right_min = std::min(right_min, values[k]);
    }
    if (v - std::max(left_min, right_min) >= prominence) {
      rep.peak_times.push_back(times[i]);
      rep.peak_values.push_back(v);
    }
  }
  if (rep.peak_times.size() >= 2) {
    rep.mean_period = (rep.peak_times.back() - rep.peak_times.front()) / double(rep.peak_times.size() - 1);
  }
  return rep;
}

OscillationReport analyze_oscillations(std::span<const double> times, std::span<const double> values) {
  if (values.empty()) throw InvalidArgument("analyze_oscillations: empty series");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  double prominence = 0.05 * (*hi - *lo);
  if (prominence <= 0.0) prominence = std::numeric_limits<double>::min();
  return analyze_oscillations(times, values, prominence);
}

}  // namespace qdcav
