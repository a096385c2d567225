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

#ifndef MEMQ_CHANNEL_HPP_
#define MEMQ_CHANNEL_HPP_

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "memq/density_matrix.hpp"
#include "memq/errors.hpp"
#include "memq/kernel.hpp"

namespace memq {

// Choi matrix P = sum_ij |i><j| (x) Phi(|i><j|) in the basis
// (ee, eg, ge, gg) where the first factor is the input index. For the
// amplitude-damping family this is
//
//   [ xi1   0      0  xih ]
//   [ 0     1-xi1  0  0   ]
//   [ 0     0      0  0   ]
//   [ xih   0      0  1   ]
template <typename Real>
struct ChoiMatrix {
  CMatrix4<Real> entries;

  Eigen::Matrix<Real, 4, 1> eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<CMatrix4<Real>> solver(entries, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
  }
  Real min_eigenvalue() const { return eigenvalues().minCoeff(); }
  bool positive_semidefinite(Real tol = Real(kCpTolerance)) const {
    return min_eigenvalue() >= -tol;
  }
};

template <typename Real>
ChoiMatrix<Real> choi_matrix(XiPair<Real> p) {
  CMatrix4<Real> c = CMatrix4<Real>::Zero();
  c(0, 0) = p.full;
  c(1, 1) = 1 - p.full;
  c(3, 3) = 1;
  c(0, 3) = c(3, 0) = p.half;
  return {c};
}

template <typename Real>
ChoiMatrix<Real> choi_matrix(const MemoryKernel<Real>& kernel, Real t) {
  return choi_matrix(xi_pair(kernel, t));
}

// Spectral data of the (ee, gg) block of the Choi matrix: eigenvalues
// mu+/- with normalized eigenvectors (a+/-, b+/-).
template <typename Real>
struct KrausParams {
  Real mu_plus;
  Real mu_minus;
  Real a_plus;
  Real a_minus;
  Real b_plus;
  Real b_minus;
};

template <typename Real>
KrausParams<Real> kraus_params(XiPair<Real> p) {
  const Real root = std::sqrt((1 - p.full) * (1 - p.full) + 4 * p.half * p.half);
  KrausParams<Real> k{};
  k.mu_plus = (1 + p.full + root) / 2;
  k.mu_minus = (1 + p.full - root) / 2;
  if (p.half == 0) {
    // Block is diag(xi1, 1); pick the eigenvector matching each eigenvalue.
    // a- is the continuous limit of (mu- - 1)/sqrt(xih^2 + (mu- - 1)^2).
    if (p.full > 1) {
      k.a_plus = 1; k.b_plus = 0;
      k.a_minus = 0; k.b_minus = 1;
    } else if (p.full < 1) {
      k.a_plus = 0; k.b_plus = 1;
      k.a_minus = -1; k.b_minus = 0;
    } else {
      k.a_plus = 1; k.b_plus = 0;
      k.a_minus = 0; k.b_minus = 1;
    }
    return k;
  }
  auto vec = [&](Real mu, Real& a, Real& b) {
    const Real d = mu - 1;
    const Real norm = std::hypot(p.half, d);
    b = p.half / norm;
    a = d / norm;
  };
  vec(k.mu_plus, k.a_plus, k.b_plus);
  vec(k.mu_minus, k.a_minus, k.b_minus);
  return k;
}

template <typename Real>
struct KrausSet {
  std::vector<CMatrix2<Real>> operators;
  Real gamma0_t{0};
  std::optional<KrausParams<Real>> params;

  std::size_t size() const { return operators.size(); }
};

template <typename Real>
Real trace_preservation_error(const KrausSet<Real>& k) {
  CMatrix2<Real> sum = CMatrix2<Real>::Zero();
  for (const auto& m : k.operators) sum += m.adjoint() * m;
  return (sum - CMatrix2<Real>::Identity()).cwiseAbs().maxCoeff();
}

// Kraus operators built from the closed-form spectral decomposition:
//   M0 = sqrt(mu+) (a+ |e><e| + b+ |g><g|)
//   M1 = sqrt(1 - xi1) |g><e|
//   M2 = sqrt(mu-) (a- |e><e| + b- |g><g|)
// M2 is kept even when mu- = 0 so the set always has three members.
template <typename Real>
KrausSet<Real> kraus_closed_form(XiPair<Real> p, Real gamma0_t,
                                 Real tol = Real(kCpTolerance)) {
  if (!satisfies_cp_condition(p.full, p.half, tol)) {
    throw Error(ErrorCode::kNotCompletelyPositive,
                "xi(gamma0/2,t)^2 <= xi(gamma0,t) <= 1 fails at gamma0 t = " +
                    std::to_string(static_cast<double>(gamma0_t)));
  }
  const auto k = kraus_params(p);
  const Real sp = std::sqrt(std::max(k.mu_plus, Real(0)));
  const Real sm = std::sqrt(std::max(k.mu_minus, Real(0)));
  const Real decay = std::sqrt(std::max(1 - p.full, Real(0)));

  CMatrix2<Real> m0 = CMatrix2<Real>::Zero();
  m0(0, 0) = sp * k.a_plus;
  m0(1, 1) = sp * k.b_plus;
  CMatrix2<Real> m1 = CMatrix2<Real>::Zero();
  m1(1, 0) = decay;
  CMatrix2<Real> m2 = CMatrix2<Real>::Zero();
  m2(0, 0) = sm * k.a_minus;
  m2(1, 1) = sm * k.b_minus;
  return {{m0, m1, m2}, gamma0_t, k};
}

template <typename Real>
KrausSet<Real> kraus_closed_form(const MemoryKernel<Real>& kernel, Real t,
                                 Real tol = Real(kCpTolerance)) {
  return kraus_closed_form(xi_pair(kernel, t), kernel.markov_rate * t, tol);
}

// Memoryless amplitude damping: M0 = nu|e><e| + |g><g|, M1 = sqrt(1-nu^2)|g><e|.
template <typename Real>
KrausSet<Real> kraus_markovian(Real gamma0, Real t) {
  const auto p = markovian_xi_pair(gamma0, t);
  const Real nu = p.half;
  CMatrix2<Real> m0 = CMatrix2<Real>::Zero();
  m0(0, 0) = nu;
  m0(1, 1) = 1;
  CMatrix2<Real> m1 = CMatrix2<Real>::Zero();
  m1(1, 0) = std::sqrt(std::max(1 - nu * nu, Real(0)));
  return {{m0, m1}, gamma0 * t, kraus_params(p)};
}

// Kraus operators from the spectral decomposition of the Choi matrix: the
// i-th column of M_k is the i-th two-element segment of the k-th eigenvector,
// scaled by sqrt(lambda_k). Eigenvalues in [-tol, 0] are clipped and
// discarded; anything more negative means the map is not CP.
template <typename Real>
KrausSet<Real> kraus_from_choi(const ChoiMatrix<Real>& choi, Real tol = Real(kCpTolerance)) {
  Eigen::SelfAdjointEigenSolver<CMatrix4<Real>> solver(choi.entries);
  const auto& values = solver.eigenvalues();
  const auto& vectors = solver.eigenvectors();
  if (values.minCoeff() < -tol) {
    throw Error(ErrorCode::kNotCompletelyPositive, "Choi matrix has a negative eigenvalue");
  }
  KrausSet<Real> out;
  // Descending eigenvalue order.
  for (Eigen::Index k = 3; k >= 0; --k) {
    if (values(k) <= tol) continue;
    const Real scale = std::sqrt(values(k));
    CMatrix2<Real> m;
    for (Eigen::Index i = 0; i < 2; ++i) {
      for (Eigen::Index a = 0; a < 2; ++a) m(a, i) = scale * vectors(2 * i + a, k);
    }
    out.operators.push_back(m);
  }
  return out;
}

// Rebuilds sum_ij |i><j| (x) Phi(|i><j|) from a Kraus set.
template <typename Real>
ChoiMatrix<Real> choi_from_kraus(const KrausSet<Real>& kraus) {
  CMatrix4<Real> c = CMatrix4<Real>::Zero();
  for (Eigen::Index i = 0; i < 2; ++i) {
    for (Eigen::Index j = 0; j < 2; ++j) {
      CMatrix2<Real> unit = CMatrix2<Real>::Zero();
      unit(i, j) = 1;
      CMatrix2<Real> image = CMatrix2<Real>::Zero();
      for (const auto& m : kraus.operators) image += m * unit * m.adjoint();
      c.template block<2, 2>(2 * i, 2 * j) = image;
    }
  }
  return {c};
}

// Lifts a qubit operator to act on subsystem k of a composite space.
template <typename Real>
CMatrix<Real> embed(const CMatrix2<Real>& op, const std::vector<Subsystem>& subs, std::size_t k) {
  if (subs[k].dim != 2) {
    throw Error(ErrorCode::kDimensionMismatch, "Kraus operators act on a qubit");
  }
  const auto s = factor_strides(subs, k);
  const CMatrix<Real> left = CMatrix<Real>::Identity(s.left, s.left);
  const CMatrix<Real> right = CMatrix<Real>::Identity(s.right, s.right);
  return kron<Real>(kron<Real>(left, CMatrix<Real>(op)), right);
}

// (Phi (x) id)(rho) with Phi acting on the subsystem labeled `target`.
template <typename Real>
DensityMatrix<Real> apply_channel(const KrausSet<Real>& kraus, const DensityMatrix<Real>& rho,
                                  const std::string& target) {
  const auto k = rho.index_of(target);
  CMatrix<Real> out = CMatrix<Real>::Zero(rho.dim(), rho.dim());
  for (const auto& m : kraus.operators) {
    const CMatrix<Real> full = embed<Real>(m, rho.subsystems(), k);
    out.noalias() += full * rho.matrix() * full.adjoint();
  }
  return DensityMatrix<Real>(std::move(out), rho.subsystems());
}

template <typename Real>
DensityMatrix<Real> apply_channel(const KrausSet<Real>& kraus, const DensityMatrix<Real>& rho) {
  if (rho.dim() != 2 || rho.subsystems().size() != 1) {
    throw Error(ErrorCode::kDimensionMismatch, "expected a single-qubit state");
  }
  return apply_channel(kraus, rho, rho.subsystems().front().label);
}

inline constexpr double kIsometryTolerance = 1e-8;

// Isometry V: S -> S (x) E, V|m>|0>_E = sum_k M_k|m> (x) |k>_E. Rows are
// indexed s * K + k.
template <typename Real>
CMatrix<Real> stinespring_isometry(const KrausSet<Real>& kraus) {
  const auto n_env = static_cast<Eigen::Index>(kraus.size());
  CMatrix<Real> v = CMatrix<Real>::Zero(2 * n_env, 2);
  for (Eigen::Index k = 0; k < n_env; ++k) {
    const auto& m = kraus.operators[static_cast<std::size_t>(k)];
    for (Eigen::Index s = 0; s < 2; ++s) {
      for (Eigen::Index in = 0; in < 2; ++in) v(s * n_env + k, in) = m(s, in);
    }
  }
  return v;
}

// Applies the system-environment isometry to rho (x) |0><0|_E. The
// environment, of dimension kraus.size(), is appended as the last factor.
template <typename Real>
DensityMatrix<Real> dilate(const KrausSet<Real>& kraus, const DensityMatrix<Real>& rho,
                           const std::string& system = "S", const std::string& env = "E") {
  const auto k = rho.index_of(system);
  if (rho.subsystems()[k].dim != 2) {
    throw Error(ErrorCode::kDimensionMismatch, "system must be a qubit");
  }
  if (trace_preservation_error(kraus) > Real(kIsometryTolerance)) {
    throw Error(ErrorCode::kNonIsometry, "sum_k M_k^dag M_k deviates from identity");
  }
  const auto n_env = static_cast<Eigen::Index>(kraus.size());
  const auto s = factor_strides(rho.subsystems(), k);
  const Eigen::Index n_in = rho.dim();

  CMatrix<Real> w = CMatrix<Real>::Zero(n_in * n_env, n_in);
  for (Eigen::Index l = 0; l < s.left; ++l) {
    for (Eigen::Index r = 0; r < s.right; ++r) {
      for (Eigen::Index in = 0; in < 2; ++in) {
        const Eigen::Index col = (l * 2 + in) * s.right + r;
        for (Eigen::Index out = 0; out < 2; ++out) {
          const Eigen::Index row_base = ((l * 2 + out) * s.right + r) * n_env;
          for (Eigen::Index e = 0; e < n_env; ++e) {
            w(row_base + e, col) = kraus.operators[static_cast<std::size_t>(e)](out, in);
          }
        }
      }
    }
  }
  auto subs = rho.subsystems();
  subs.push_back({env, n_env});
  CMatrix<Real> out = w * rho.matrix() * w.adjoint();
  return DensityMatrix<Real>(std::move(out), std::move(subs));
}

}  // namespace memq

#endif  // MEMQ_CHANNEL_HPP_
