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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace qdcav {

using Complex = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;
using DenseMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Subsystem positions of the coupled-dot model. The composite basis is
/// always ordered [QD1, QD2, plasmon, cavity1, cavity2] with the last entry
/// varying fastest.
enum class Site : std::size_t { qd1 = 0, qd2 = 1, plasmon = 2, cav1 = 3, cav2 = 4 };

inline constexpr std::size_t site_index(Site s) { return static_cast<std::size_t>(s); }

/// Level counts of a tensor-product Hilbert space.
class SubsystemLayout {
 public:
  /// Throws InvalidDimension for an empty list or any entry below 2.
  explicit SubsystemLayout(std::vector<std::size_t> dims);

  /// The five-site layout [2, 2, n_pl, n_ph, n_ph].
  static SubsystemLayout cavity_qed(std::size_t n_pl, std::size_t n_ph);

  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  std::size_t size() const noexcept { return dims_.size(); }
  std::size_t dim(std::size_t site) const { return dims_.at(site); }
  std::size_t total_dim() const noexcept { return total_; }
  /// Index distance between basis states differing by one level on `site`.
  std::size_t stride(std::size_t site) const { return strides_.at(site); }
  /// Occupation of `site` in composite basis state `index`.
  std::size_t level(std::size_t index, std::size_t site) const {
    return (index / strides_[site]) % dims_[site];
  }
  std::size_t index_of(std::span<const std::size_t> levels) const;

  bool operator==(const SubsystemLayout& other) const { return dims_ == other.dims_; }

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> strides_;
  std::size_t total_;
};

/// Square complex operator with its subsystem layout. Storage is sparse;
/// operators are assembled once per run.
class QOperator {
 public:
  QOperator(SubsystemLayout layout, SparseMatrix matrix);

  static QOperator zero(const SubsystemLayout& layout);
  static QOperator identity(const SubsystemLayout& layout);
  static QOperator from_dense(const SubsystemLayout& layout, const DenseMatrix& m);

  const SubsystemLayout& layout() const noexcept { return layout_; }
  const SparseMatrix& matrix() const noexcept { return matrix_; }
  std::size_t dim() const noexcept { return layout_.total_dim(); }
  DenseMatrix dense() const { return DenseMatrix(matrix_); }
  Complex coeff(std::size_t row, std::size_t col) const {
    return matrix_.coeff(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  }

 private:
  SubsystemLayout layout_;
  SparseMatrix matrix_;
};

/// Bosonic annihilation operator truncated to `n_levels`; for two levels
/// this is the qubit lowering operator. Throws InvalidDimension below 2.
QOperator annihilation(std::size_t n_levels);

/// Number operator diag(0, 1, ..., n_levels-1).
QOperator number(std::size_t n_levels);

/// I x ... x op x ... x I with `op` placed at `site` of `layout`.
QOperator embed(const QOperator& op, std::size_t site, const SubsystemLayout& layout);
inline QOperator embed(const QOperator& op, Site site, const SubsystemLayout& layout) {
  return embed(op, site_index(site), layout);
}

QOperator adjoint(const QOperator& op);
QOperator multiply(const QOperator& a, const QOperator& b);
/// a + alpha * b
QOperator add_scaled(const QOperator& a, Complex alpha, const QOperator& b);
Complex trace(const QOperator& op);

/// Largest elementwise |m - m^dagger|.
double hermiticity_error(const DenseMatrix& m);
double hermiticity_error(const SparseMatrix& m);

/// Eigenvalues of a Hermitian operator in descending order. Throws
/// DomainError when the input deviates from Hermitian by more than `tol`.
std::vector<double> hermitian_eigenvalues(const QOperator& op, double tol = 1e-10);
std::vector<double> hermitian_eigenvalues(const DenseMatrix& m, double tol = 1e-10);

/// Hermitian, unit-trace, positive semidefinite state on a layout.
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-10;
  static constexpr double kTraceTol = 1e-8;
  static constexpr double kPositivityTol = 1e-8;

  /// Validates Hermiticity and trace; throws DomainError on violation.
  /// Positivity is checked only when `check_positivity` is set since it
  /// needs a full diagonalization.
  DensityMatrix(SubsystemLayout layout, DenseMatrix matrix, bool check_positivity = false);

  /// Wraps a matrix without validation; for integrator samples whose drift
  /// is tracked separately.
  static DensityMatrix unchecked(SubsystemLayout layout, DenseMatrix matrix);

  /// Every subsystem in its lowest level.
  static DensityMatrix ground_state(const SubsystemLayout& layout);
  /// |psi><psi| / <psi|psi>.
  static DensityMatrix pure(const SubsystemLayout& layout, const Eigen::VectorXcd& psi);

  const SubsystemLayout& layout() const noexcept { return layout_; }
  const DenseMatrix& matrix() const noexcept { return matrix_; }
  std::size_t dim() const noexcept { return layout_.total_dim(); }
  Complex trace() const { return matrix_.trace(); }
  double min_eigenvalue() const;

 private:
  struct NoCheck {};
  DensityMatrix(SubsystemLayout layout, DenseMatrix matrix, NoCheck)
      : layout_(std::move(layout)), matrix_(std::move(matrix)) {}

  SubsystemLayout layout_;
  DenseMatrix matrix_;
};

}  // namespace qdcav
