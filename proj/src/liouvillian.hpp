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
#include <vector>

#include "qdcav/model.hpp"
#include "qdcav/tensor.hpp"

namespace qdcav {

/// Banded form of the Lindblad generator. Every operator is stored as a set
/// of diagonals (offset d, coefficients c[i] = M[i, i + d]); the model
/// operators are shifted ladder products, so each has only a handful.
///
/// With H_eff = H - (i/2) sum_k gamma_k A_k^dag A_k the generator reads
///   L(rho) = -i H_eff rho + i rho H_eff^dag + sum_k gamma_k A_k rho A_k^dag
/// and one output row needs only rows i + d of rho and row i itself, so rows
/// are produced independently. Only the upper triangle is computed; callers
/// mirror the lower one.
class Liouvillian {
 public:
  /// Energies in eV; coefficients are converted to 1/fs on construction.
  /// H(t) = h_static + sum_m f_m(t) drives[m] with real f_m.
  Liouvillian(const QOperator& h_static, const std::vector<QOperator>& drives,
              const std::vector<LindbladChannel>& channels);

  std::size_t dim() const noexcept { return n_; }

  /// Time-dependent coefficient buffers for one evaluation time.
  struct Coefficients {
    std::vector<double> fields;
    // Per diagonal, -i H_eff[j, j + d] / hbar in split storage.
    std::vector<std::vector<double>> left_re, left_im;
    // Per diagonal, i * conj(H_eff[j, j + d]) / hbar in split storage.
    std::vector<std::vector<double>> right_re, right_im;
    // Row scratch for the merged diagonal jump terms.
    mutable std::vector<double> local_re, local_im;
  };
  Coefficients make_coefficients() const;
  void update(Coefficients& c, const std::vector<double>& fields) const;
  std::size_t drive_count() const noexcept { return drive_count_; }

  /// Columns [i, n) of row i of L(X) into out_re / out_im (indexed by column).
  /// X is a full (both triangles) Hermitian matrix in split storage.
  void row_upper(std::size_t i, const Coefficients& c, const double* x_re, const double* x_im,
                 double* out_re, double* out_im) const;

  std::size_t diagonal_count() const noexcept { return diagonals_.size(); }

 private:
  using Runs = std::vector<std::pair<long, long>>;

  struct Diagonal {
    long offset = 0;
    Runs runs;  // column ranges with a possibly nonzero coefficient
    std::vector<Complex> fixed;  // static H plus anti-Hermitian decay part, 1/fs
    // (drive index, coefficients per unit field in 1/fs)
    std::vector<std::pair<std::size_t, std::vector<Complex>>> drive;
  };
  struct Jump {
    long row_offset = 0;
    long col_offset = 0;
    // out[i, j] += u[i] * conj(v[j]) * X[i + row_offset, j + col_offset]
    std::vector<Complex> u;
    std::vector<double> v_conj_re, v_conj_im;
    Runs runs;
  };

  std::size_t n_;
  std::size_t drive_count_;
  std::vector<Diagonal> diagonals_;
  std::vector<Jump> jumps_;
  // Jumps with zero offsets (dephasing): out[i, j] += u[i] conj(v[j]) X[i, j].
  std::vector<Jump> local_jumps_;
};

}  // namespace qdcav
