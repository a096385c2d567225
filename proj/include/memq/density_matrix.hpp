// Copyright 2026 The memq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MEMQ_DENSITY_MATRIX_HPP_
#define MEMQ_DENSITY_MATRIX_HPP_

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "memq/errors.hpp"

namespace memq {

template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Real>
using CMatrix2 = Eigen::Matrix<std::complex<Real>, 2, 2>;

template <typename Real>
using CMatrix4 = Eigen::Matrix<std::complex<Real>, 4, 4>;

// One tensor factor of a composite Hilbert space.
struct Subsystem {
  std::string label;
  Eigen::Index dim;

  friend bool operator==(const Subsystem&, const Subsystem&) = default;
};

// Square complex matrix over a labeled tensor-product basis. The first
// subsystem is the most significant index. Physical validity (Hermitian,
// unit trace, PSD) is not enforced on construction; see check_density().
template <typename Real>
class DensityMatrix {
 public:
  using Complex = std::complex<Real>;
  using Matrix = CMatrix<Real>;

  DensityMatrix(Matrix entries, std::vector<Subsystem> subsystems)
      : entries_(std::move(entries)), subsystems_(std::move(subsystems)) {
    Eigen::Index expected = 1;
    for (const auto& s : subsystems_) {
      if (s.dim < 1) throw Error(ErrorCode::kDimensionMismatch, "subsystem dimension < 1");
      expected *= s.dim;
    }
    if (entries_.rows() != entries_.cols() || entries_.rows() != expected) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "matrix is " + std::to_string(entries_.rows()) + "x" +
                      std::to_string(entries_.cols()) + ", subsystems need " +
                      std::to_string(expected));
    }
  }

  // Single unlabeled-by-default qubit state.
  static DensityMatrix qubit(Matrix entries, std::string label = "S") {
    return DensityMatrix(std::move(entries), {{std::move(label), 2}});
  }

  const Matrix& matrix() const { return entries_; }
  const std::vector<Subsystem>& subsystems() const { return subsystems_; }
  Eigen::Index dim() const { return entries_.rows(); }
  Complex operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

  std::optional<std::size_t> find(const std::string& label) const {
    for (std::size_t i = 0; i < subsystems_.size(); ++i) {
      if (subsystems_[i].label == label) return i;
    }
    return std::nullopt;
  }

  std::size_t index_of(const std::string& label) const {
    auto idx = find(label);
    if (!idx) throw Error(ErrorCode::kUnknownSubsystem, "no subsystem labeled '" + label + "'");
    return *idx;
  }

  Real trace() const { return entries_.trace().real(); }

  Real hermiticity_error() const {
    return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  }

  // Eigenvalues of the Hermitian part, ascending.
  Eigen::Matrix<Real, Eigen::Dynamic, 1> eigenvalues() const {
    Matrix herm = (entries_ + entries_.adjoint()) / Real(2);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(herm, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
  }

  Real min_eigenvalue() const { return eigenvalues().minCoeff(); }

 private:
  Matrix entries_;
  std::vector<Subsystem> subsystems_;
};

struct DensityCheck {
  double hermiticity_error;
  double trace_error;
  double min_eigenvalue;
  bool ok;
};

template <typename Real>
DensityCheck check_density(const DensityMatrix<Real>& rho, double herm_tol = 1e-12,
                           double trace_tol = 1e-12, double eig_floor = -1e-10) {
  DensityCheck c{static_cast<double>(rho.hermiticity_error()),
                 static_cast<double>(std::abs(rho.trace() - 1)),
                 static_cast<double>(rho.min_eigenvalue()), false};
  c.ok = c.hermiticity_error <= herm_tol && c.trace_error <= trace_tol &&
         c.min_eigenvalue >= eig_floor;
  return c;
}

// Strides of subsystem k: full index = (left * dim_k + local) * right + rest.
struct FactorStrides {
  Eigen::Index left;
  Eigen::Index dim;
  Eigen::Index right;
};

inline FactorStrides factor_strides(const std::vector<Subsystem>& subs, std::size_t k) {
  FactorStrides s{1, subs[k].dim, 1};
  for (std::size_t i = 0; i < k; ++i) s.left *= subs[i].dim;
  for (std::size_t i = k + 1; i < subs.size(); ++i) s.right *= subs[i].dim;
  return s;
}

template <typename Real>
CMatrix<Real> kron(const CMatrix<Real>& a, const CMatrix<Real>& b) {
  CMatrix<Real> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

template <typename Real>
DensityMatrix<Real> tensor(const DensityMatrix<Real>& a, const DensityMatrix<Real>& b) {
  auto subs = a.subsystems();
  subs.insert(subs.end(), b.subsystems().begin(), b.subsystems().end());
  return DensityMatrix<Real>(kron<Real>(a.matrix(), b.matrix()), std::move(subs));
}

// Qubit basis ordering is (|e>, |g>).
template <typename Real>
DensityMatrix<Real> excited_state(std::string label = "S") {
  CMatrix<Real> m = CMatrix<Real>::Zero(2, 2);
  m(0, 0) = 1;
  return DensityMatrix<Real>::qubit(std::move(m), std::move(label));
}

template <typename Real>
DensityMatrix<Real> ground_state(std::string label = "S") {
  CMatrix<Real> m = CMatrix<Real>::Zero(2, 2);
  m(1, 1) = 1;
  return DensityMatrix<Real>::qubit(std::move(m), std::move(label));
}

template <typename Real>
DensityMatrix<Real> plus_state(std::string label = "S") {
  CMatrix<Real> m = CMatrix<Real>::Constant(2, 2, Real(0.5));
  return DensityMatrix<Real>::qubit(std::move(m), std::move(label));
}

// Environment vacuum |0><0| of dimension `dim`.
template <typename Real>
DensityMatrix<Real> vacuum_state(Eigen::Index dim, std::string label = "E") {
  CMatrix<Real> m = CMatrix<Real>::Zero(dim, dim);
  m(0, 0) = 1;
  return DensityMatrix<Real>(std::move(m), {{std::move(label), dim}});
}

// (|ee> + |gg>)(<ee| + <gg|) / 2 over (S, A).
template <typename Real>
DensityMatrix<Real> bell_state(std::string first = "S", std::string second = "A") {
  CMatrix<Real> m = CMatrix<Real>::Zero(4, 4);
  m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = Real(0.5);
  return DensityMatrix<Real>(std::move(m), {{std::move(first), 2}, {std::move(second), 2}});
}

}  // namespace memq

#endif  // MEMQ_DENSITY_MATRIX_HPP_
