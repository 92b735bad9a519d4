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

#include "qdcav/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "qdcav/errors.hpp"

namespace qdcav {

SubsystemLayout::SubsystemLayout(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw InvalidDimension("layout needs at least one subsystem");
  for (std::size_t d : dims_) {
    if (d < 2) throw InvalidDimension("subsystem dimension " + std::to_string(d) + " < 2");
  }
  strides_.assign(dims_.size(), 1);
  for (std::size_t k = dims_.size() - 1; k > 0; --k) strides_[k - 1] = strides_[k] * dims_[k];
  total_ = strides_.front() * dims_.front();
}

SubsystemLayout SubsystemLayout::cavity_qed(std::size_t n_pl, std::size_t n_ph) {
  return SubsystemLayout({2, 2, n_pl, n_ph, n_ph});
}

std::size_t SubsystemLayout::index_of(std::span<const std::size_t> levels) const {
  if (levels.size() != dims_.size()) throw InvalidDimension("level list does not match layout");
  std::size_t idx = 0;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    if (levels[k] >= dims_[k]) throw InvalidDimension("level out of range");
    idx += levels[k] * strides_[k];
  }
  return idx;
}

QOperator::QOperator(SubsystemLayout layout, SparseMatrix matrix)
    : layout_(std::move(layout)), matrix_(std::move(matrix)) {
  const auto n = static_cast<Eigen::Index>(layout_.total_dim());
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw InvalidDimension("operator shape " + std::to_string(matrix_.rows()) + "x" +
                           std::to_string(matrix_.cols()) + " does not match layout dimension " +
                           std::to_string(n));
  }
  matrix_.makeCompressed();
}

QOperator QOperator::zero(const SubsystemLayout& layout) {
  const auto n = static_cast<Eigen::Index>(layout.total_dim());
  return QOperator(layout, SparseMatrix(n, n));
}

QOperator QOperator::identity(const SubsystemLayout& layout) {
  const auto n = static_cast<Eigen::Index>(layout.total_dim());
  SparseMatrix id(n, n);
  id.setIdentity();
  return QOperator(layout, std::move(id));
}

QOperator QOperator::from_dense(const SubsystemLayout& layout, const DenseMatrix& m) {
  return QOperator(layout, m.sparseView());
}

namespace {

using Triplet = Eigen::Triplet<Complex>;

void require_same_layout(const QOperator& a, const QOperator& b, const char* what) {
  if (!(a.layout() == b.layout())) throw InvalidDimension(std::string(what) + ": layout mismatch");
}

}  // namespace

QOperator annihilation(std::size_t n_levels) {
  if (n_levels < 2) throw InvalidDimension("annihilation operator needs at least 2 levels");
  const auto n = static_cast<Eigen::Index>(n_levels);
  std::vector<Triplet> t;
  for (Eigen::Index m = 0; m + 1 < n; ++m) t.emplace_back(m, m + 1, std::sqrt(double(m + 1)));
  SparseMatrix a(n, n);
  a.setFromTriplets(t.begin(), t.end());
  return QOperator(SubsystemLayout({n_levels}), std::move(a));
}

QOperator number(std::size_t n_levels) {
  if (n_levels < 2) throw InvalidDimension("number operator needs at least 2 levels");
  const auto n = static_cast<Eigen::Index>(n_levels);
  std::vector<Triplet> t;
  for (Eigen::Index m = 1; m < n; ++m) t.emplace_back(m, m, double(m));
  SparseMatrix a(n, n);
  a.setFromTriplets(t.begin(), t.end());
  return QOperator(SubsystemLayout({n_levels}), std::move(a));
}

QOperator embed(const QOperator& op, std::size_t site, const SubsystemLayout& layout) {
  if (site >= layout.size()) throw InvalidDimension("site index out of range");
  if (op.dim() != layout.dim(site)) {
    throw InvalidDimension("operator dimension " + std::to_string(op.dim()) +
                           " does not match site dimension " + std::to_string(layout.dim(site)));
  }
  // Composite index = outer * (d * inner) + local * inner + inner_idx.
  const std::size_t inner = layout.stride(site);
  const std::size_t d = layout.dim(site);
  const std::size_t outer = layout.total_dim() / (d * inner);
  const SparseMatrix& m = op.matrix();

  std::vector<Triplet> t;
  t.reserve(static_cast<std::size_t>(m.nonZeros()) * outer * inner);
  for (Eigen::Index r = 0; r < m.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(m, r); it; ++it) {
      for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t k = 0; k < inner; ++k) {
          const std::size_t base = o * d * inner + k;
          t.emplace_back(static_cast<Eigen::Index>(base + std::size_t(it.row()) * inner),
                         static_cast<Eigen::Index>(base + std::size_t(it.col()) * inner), it.value());
        }
      }
    }
  }
  const auto n = static_cast<Eigen::Index>(layout.total_dim());
  SparseMatrix out(n, n);
  out.setFromTriplets(t.begin(), t.end());
  return QOperator(layout, std::move(out));
}

QOperator adjoint(const QOperator& op) {
  return QOperator(op.layout(), SparseMatrix(op.matrix().adjoint()));
}

QOperator multiply(const QOperator& a, const QOperator& b) {
  require_same_layout(a, b, "multiply");
  return QOperator(a.layout(), SparseMatrix(a.matrix() * b.matrix()));
}

QOperator add_scaled(const QOperator& a, Complex alpha, const QOperator& b) {
  require_same_layout(a, b, "add_scaled");
  return QOperator(a.layout(), SparseMatrix(a.matrix() + alpha * b.matrix()));
}

Complex trace(const QOperator& op) {
  Complex tr = 0.0;
  const SparseMatrix& m = op.matrix();
  for (Eigen::Index r = 0; r < m.outerSize(); ++r) tr += m.coeff(r, r);
  return tr;
}

double hermiticity_error(const DenseMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidDimension("hermiticity_error needs a square matrix");
  double err = 0.0;
  const Eigen::Index n = m.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) err = std::max(err, std::abs(m(i, j) - std::conj(m(j, i))));
  }
  return err;
}

double hermiticity_error(const SparseMatrix& m) {
  SparseMatrix diff = m - SparseMatrix(m.adjoint());
  double err = 0.0;
  for (Eigen::Index r = 0; r < diff.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(diff, r); it; ++it) err = std::max(err, std::abs(it.value()));
  }
  return err;
}

std::vector<double> hermitian_eigenvalues(const DenseMatrix& m, double tol) {
  if (m.rows() != m.cols()) throw InvalidDimension("eigenvalues need a square matrix");
  const double herm = hermiticity_error(m);
  if (herm > tol) {
    throw DomainError("matrix is not Hermitian (max |m - m^dagger| = " + std::to_string(herm) + ")");
  }
  Eigen::MatrixXcd sym = 0.5 * (Eigen::MatrixXcd(m) + Eigen::MatrixXcd(m).adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw DomainError("Hermitian eigen-solver did not converge");
  std::vector<double> ev(solver.eigenvalues().data(),
                         solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

std::vector<double> hermitian_eigenvalues(const QOperator& op, double tol) {
  return hermitian_eigenvalues(op.dense(), tol);
}

DensityMatrix::DensityMatrix(SubsystemLayout layout, DenseMatrix matrix, bool check_positivity)
    : layout_(std::move(layout)), matrix_(std::move(matrix)) {
  const auto n = static_cast<Eigen::Index>(layout_.total_dim());
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw InvalidDimension("density matrix shape does not match layout");
  }
  const double herm = hermiticity_error(matrix_);
  if (herm > kHermitianTol) {
    throw DomainError("density matrix is not Hermitian (" + std::to_string(herm) + ")");
  }
  const Complex tr = matrix_.trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw DomainError("density matrix trace " + std::to_string(tr.real()) + " differs from 1");
  }
  if (check_positivity && min_eigenvalue() < -kPositivityTol) {
    throw DomainError("density matrix has a negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::unchecked(SubsystemLayout layout, DenseMatrix matrix) {
  if (matrix.rows() != static_cast<Eigen::Index>(layout.total_dim()) || matrix.cols() != matrix.rows()) {
    throw InvalidDimension("density matrix shape does not match layout");
  }
  return DensityMatrix(std::move(layout), std::move(matrix), NoCheck{});
}

DensityMatrix DensityMatrix::ground_state(const SubsystemLayout& layout) {
  const auto n = static_cast<Eigen::Index>(layout.total_dim());
  DenseMatrix m = DenseMatrix::Zero(n, n);
  m(0, 0) = 1.0;
  return DensityMatrix(layout, std::move(m));
}

DensityMatrix DensityMatrix::pure(const SubsystemLayout& layout, const Eigen::VectorXcd& psi) {
  if (psi.size() != static_cast<Eigen::Index>(layout.total_dim())) {
    throw InvalidDimension("state vector does not match layout");
  }
  const double norm2 = psi.squaredNorm();
  if (norm2 == 0.0) throw DomainError("zero state vector");
  DenseMatrix m = psi * psi.adjoint() / norm2;
  // Exact symmetrization keeps the projector Hermitian to the last bit.
  DenseMatrix herm = 0.5 * (m + DenseMatrix(m.adjoint()));
  return DensityMatrix(layout, std::move(herm));
}

double DensityMatrix::min_eigenvalue() const {
  return hermitian_eigenvalues(matrix_, kHermitianTol).back();
}

}  // namespace qdcav
