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

#include "liouvillian.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "qdcav/errors.hpp"
#include "qdcav/units.hpp"

namespace qdcav {

namespace {

using DiagonalMap = std::map<long, std::vector<Complex>>;

DiagonalMap split_diagonals(const SparseMatrix& m, double scale) {
  DiagonalMap out;
  const auto n = static_cast<std::size_t>(m.rows());
  for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(m, r); it; ++it) {
      if (it.value() == Complex(0.0)) continue;
      const long d = long(it.col()) - long(it.row());
      auto [pos, inserted] = out.try_emplace(d, n, Complex(0.0));
      pos->second[std::size_t(it.row())] += scale * it.value();
    }
  }
  return out;
}

// Maximal column ranges [j0, j1) with nonzero[j] set and j + offset inside [0, n).
std::vector<std::pair<long, long>> nonzero_runs(const std::vector<bool>& nonzero, long offset) {
  std::vector<std::pair<long, long>> runs;
  const long n = long(nonzero.size());
  const long lo = std::max(0L, -offset);
  const long hi = std::min(n, n - offset);
  long j = lo;
  while (j < hi) {
    while (j < hi && !nonzero[std::size_t(j)]) ++j;
    const long start = j;
    while (j < hi && nonzero[std::size_t(j)]) ++j;
    if (j > start) runs.emplace_back(start, j);
  }
  return runs;
}

}  // namespace

Liouvillian::Liouvillian(const QOperator& h_static, const std::vector<QOperator>& drives,
                         const std::vector<LindbladChannel>& channels)
    : n_(h_static.dim()), drive_count_(drives.size()) {
  const double inv_hbar = 1.0 / units::hbar_ev_fs;

  // H_eff = H - (i/2) sum gamma A^dag A
  SparseMatrix h_eff = h_static.matrix();
  for (const auto& ch : channels) {
    const SparseMatrix ad_a = ch.op.matrix().adjoint() * ch.op.matrix();
    h_eff = h_eff - Complex(0.0, 0.5 * ch.rate) * ad_a;
  }

  std::map<long, Diagonal> merged;
  for (auto& [d, coeff] : split_diagonals(h_eff, inv_hbar)) {
    auto& diag = merged[d];
    diag.offset = d;
    diag.fixed = std::move(coeff);
  }
  for (std::size_t m = 0; m < drives.size(); ++m) {
    for (auto& [d, coeff] : split_diagonals(drives[m].matrix(), inv_hbar)) {
      auto& diag = merged[d];
      diag.offset = d;
      diag.drive.emplace_back(m, std::move(coeff));
    }
  }
  for (auto& [d, diag] : merged) {
    if (diag.fixed.empty()) diag.fixed.assign(n_, Complex(0.0));
    std::vector<bool> nz(n_);
    for (std::size_t j = 0; j < n_; ++j) {
      bool any = diag.fixed[j] != Complex(0.0);
      for (const auto& [m, coeff] : diag.drive) any = any || coeff[j] != Complex(0.0);
      nz[j] = any;
    }
    diag.runs = nonzero_runs(nz, d);
    diagonals_.push_back(std::move(diag));
  }

  for (const auto& ch : channels) {
    if (ch.rate == 0.0) continue;
    const DiagonalMap parts = split_diagonals(ch.op.matrix(), 1.0);
    for (const auto& [d_row, a_row] : parts) {
      for (const auto& [d_col, a_col] : parts) {
        Jump jump;
        jump.row_offset = d_row;
        jump.col_offset = d_col;
        jump.u.resize(n_);
        jump.v_conj_re.resize(n_);
        jump.v_conj_im.resize(n_);
        std::vector<bool> nz(n_);
        for (std::size_t i = 0; i < n_; ++i) {
          jump.u[i] = ch.rate * inv_hbar * a_row[i];
          jump.v_conj_re[i] = a_col[i].real();
          jump.v_conj_im[i] = -a_col[i].imag();
          nz[i] = a_col[i] != Complex(0.0);
        }
        jump.runs = nonzero_runs(nz, d_col);
        if (d_row == 0 && d_col == 0) {
          local_jumps_.push_back(std::move(jump));
        } else {
          jumps_.push_back(std::move(jump));
        }
      }
    }
  }
}

Liouvillian::Coefficients Liouvillian::make_coefficients() const {
  Coefficients c;
  c.left_re.assign(diagonals_.size(), std::vector<double>(n_, 0.0));
  c.left_im.assign(diagonals_.size(), std::vector<double>(n_, 0.0));
  c.right_re.assign(diagonals_.size(), std::vector<double>(n_, 0.0));
  c.right_im.assign(diagonals_.size(), std::vector<double>(n_, 0.0));
  c.local_re.assign(n_, 0.0);
  c.local_im.assign(n_, 0.0);
  c.fields.assign(drive_count_, std::numeric_limits<double>::quiet_NaN());
  update(c, std::vector<double>(drive_count_, 0.0));
  return c;
}

void Liouvillian::update(Coefficients& c, const std::vector<double>& fields) const {
  if (fields.size() != drive_count_) throw InvalidArgument("wrong number of drive coefficients");
  if (c.fields == fields) return;
  c.fields = fields;
  std::vector<Complex> h(n_);
  for (std::size_t k = 0; k < diagonals_.size(); ++k) {
    const Diagonal& diag = diagonals_[k];
    std::copy(diag.fixed.begin(), diag.fixed.end(), h.begin());
    for (const auto& [m, coeff] : diag.drive) {
      const double f = fields[m];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n_; ++j) h[j] += f * coeff[j];
    }
    double* lr = c.left_re[k].data();
    double* li = c.left_im[k].data();
    double* rr = c.right_re[k].data();
    double* ri = c.right_im[k].data();
    for (std::size_t j = 0; j < n_; ++j) {
      // -i h and i * conj(h)
      lr[j] = h[j].imag();
      li[j] = -h[j].real();
      rr[j] = h[j].imag();
      ri[j] = h[j].real();
    }
  }
}

void Liouvillian::row_upper(std::size_t i, const Coefficients& c, const double* __restrict x_re,
                            const double* __restrict x_im, double* __restrict out_re,
                            double* __restrict out_im) const {
  const long n = long(n_);
  const long row = long(i);
  std::fill(out_re + row, out_re + n, 0.0);
  std::fill(out_im + row, out_im + n, 0.0);

  // -i H_eff X : rows i + d of X scaled by -i H_eff[i, i + d].
  for (std::size_t q = 0; q < diagonals_.size(); ++q) {
    const long k = row + diagonals_[q].offset;
    if (k < 0 || k >= n) continue;
    const double cr = c.left_re[q][i];
    const double ci = c.left_im[q][i];
    if (cr == 0.0 && ci == 0.0) continue;
    const double* __restrict xr = x_re + k * n;
    const double* __restrict xi = x_im + k * n;
#pragma GCC ivdep
    for (long j = row; j < n; ++j) {
      out_re[j] += cr * xr[j] - ci * xi[j];
      out_im[j] += cr * xi[j] + ci * xr[j];
    }
  }

  // +i X H_eff^dag : (X H_eff^dag)[i, j] = sum_d X[i, j + d] conj(H_eff[j, j + d]).
  const double* __restrict own_re = x_re + row * n;
  const double* __restrict own_im = x_im + row * n;
  for (std::size_t k = 0; k < diagonals_.size(); ++k) {
    const long d = diagonals_[k].offset;
    const double* __restrict ar = c.right_re[k].data();
    const double* __restrict ai = c.right_im[k].data();
    const double* __restrict sr = own_re + d;
    const double* __restrict si = own_im + d;
    for (const auto& [r0, r1] : diagonals_[k].runs) {
      if (r1 <= row) continue;
      const long j0 = std::max(r0, row);
#pragma GCC ivdep
      for (long j = j0; j < r1; ++j) {
        out_re[j] += ar[j] * sr[j] - ai[j] * si[j];
        out_im[j] += ar[j] * si[j] + ai[j] * sr[j];
      }
    }
  }

  // Diagonal jumps merged into one weight row.
  if (!local_jumps_.empty()) {
    double* __restrict wr = c.local_re.data();
    double* __restrict wi = c.local_im.data();
    std::fill(wr + row, wr + n, 0.0);
    std::fill(wi + row, wi + n, 0.0);
    bool any = false;
    for (const Jump& jump : local_jumps_) {
      const Complex u = jump.u[i];
      if (u == Complex(0.0)) continue;
      any = true;
      const double ur = u.real();
      const double ui = u.imag();
      const double* __restrict vr = jump.v_conj_re.data();
      const double* __restrict vi = jump.v_conj_im.data();
      for (const auto& [r0, r1] : jump.runs) {
        if (r1 <= row) continue;
#pragma GCC ivdep
        for (long j = std::max(r0, row); j < r1; ++j) {
          wr[j] += ur * vr[j] - ui * vi[j];
          wi[j] += ur * vi[j] + ui * vr[j];
        }
      }
    }
    if (any) {
#pragma GCC ivdep
      for (long j = row; j < n; ++j) {
        out_re[j] += wr[j] * own_re[j] - wi[j] * own_im[j];
        out_im[j] += wr[j] * own_im[j] + wi[j] * own_re[j];
      }
    }
  }

  // gamma A X A^dag
  for (const Jump& jump : jumps_) {
    const long k = row + jump.row_offset;
    if (k < 0 || k >= n) continue;
    const Complex u = jump.u[i];
    if (u == Complex(0.0)) continue;
    const double ur = u.real();
    const double ui = u.imag();
    const long dc = jump.col_offset;
    const double* __restrict xr = x_re + k * n + dc;
    const double* __restrict xi = x_im + k * n + dc;
    const double* __restrict vr = jump.v_conj_re.data();
    const double* __restrict vi = jump.v_conj_im.data();
    for (const auto& [r0, r1] : jump.runs) {
      if (r1 <= row) continue;
      const long j0 = std::max(r0, row);
#pragma GCC ivdep
      for (long j = j0; j < r1; ++j) {
        const double wr = ur * vr[j] - ui * vi[j];
        const double wi = ur * vi[j] + ui * vr[j];
        out_re[j] += wr * xr[j] - wi * xi[j];
        out_im[j] += wr * xi[j] + wi * xr[j];
      }
    }
  }
  out_im[row] = 0.0;
}

}  // namespace qdcav
