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

#ifndef MEMQ_STATES_HPP_
#define MEMQ_STATES_HPP_

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "memq/channel.hpp"
#include "memq/density_matrix.hpp"
#include "memq/kernel.hpp"

namespace memq {

// Eigenvalues below -kNegativityTolerance count as negative.
inline constexpr double kNegativityTolerance = 1e-12;

template <typename Real>
DensityMatrix<Real> partial_trace(const DensityMatrix<Real>& rho, const std::string& label) {
  const auto k = rho.index_of(label);
  const auto s = factor_strides(rho.subsystems(), k);
  const Eigen::Index n = s.left * s.right;
  CMatrix<Real> out = CMatrix<Real>::Zero(n, n);
  const auto& m = rho.matrix();
  for (Eigen::Index l1 = 0; l1 < s.left; ++l1) {
    for (Eigen::Index r1 = 0; r1 < s.right; ++r1) {
      for (Eigen::Index l2 = 0; l2 < s.left; ++l2) {
        for (Eigen::Index r2 = 0; r2 < s.right; ++r2) {
          std::complex<Real> acc{0};
          for (Eigen::Index j = 0; j < s.dim; ++j) {
            acc += m((l1 * s.dim + j) * s.right + r1, (l2 * s.dim + j) * s.right + r2);
          }
          out(l1 * s.right + r1, l2 * s.right + r2) = acc;
        }
      }
    }
  }
  auto subs = rho.subsystems();
  subs.erase(subs.begin() + static_cast<std::ptrdiff_t>(k));
  return DensityMatrix<Real>(std::move(out), std::move(subs));
}

// Transposes the factor labeled `label`. The result is Hermitian but may
// fail to be positive semidefinite, so it keeps the DensityMatrix shape
// without the physical-state guarantee.
template <typename Real>
DensityMatrix<Real> partial_transpose(const DensityMatrix<Real>& rho, const std::string& label) {
  const auto k = rho.index_of(label);
  const auto s = factor_strides(rho.subsystems(), k);
  const auto& m = rho.matrix();
  CMatrix<Real> out(rho.dim(), rho.dim());
  auto idx = [&](Eigen::Index l, Eigen::Index j, Eigen::Index r) {
    return (l * s.dim + j) * s.right + r;
  };
  for (Eigen::Index l1 = 0; l1 < s.left; ++l1)
    for (Eigen::Index j1 = 0; j1 < s.dim; ++j1)
      for (Eigen::Index r1 = 0; r1 < s.right; ++r1)
        for (Eigen::Index l2 = 0; l2 < s.left; ++l2)
          for (Eigen::Index j2 = 0; j2 < s.dim; ++j2)
            for (Eigen::Index r2 = 0; r2 < s.right; ++r2)
              out(idx(l1, j1, r1), idx(l2, j2, r2)) = m(idx(l1, j2, r1), idx(l2, j1, r2));
  return DensityMatrix<Real>(std::move(out), rho.subsystems());
}

template <typename Real>
struct NegativityResult {
  Real value;
  std::vector<Real> negative_eigenvalues;
};

// N = max{0, -2 sum_i eps_i} over the negative eigenvalues eps_i of the
// partial transpose with respect to `label`.
template <typename Real>
NegativityResult<Real> negativity(const DensityMatrix<Real>& rho, const std::string& label) {
  const auto pt = partial_transpose(rho, label);
  const auto eig = pt.eigenvalues();
  NegativityResult<Real> out{Real(0), {}};
  Real sum = 0;
  for (Eigen::Index i = 0; i < eig.size(); ++i) {
    if (eig(i) < -Real(kNegativityTolerance)) {
      out.negative_eigenvalues.push_back(eig(i));
      sum += eig(i);
    }
  }
  out.value = std::max(Real(0), -2 * sum);
  return out;
}

// Analytic negativity of the S-A state below: the partial transpose has a
// single 2x2 block [[0, xih/2], [xih/2, (1-xi1)/2]] that can go negative.
template <typename Real>
Real negativity_sa_analytic(XiPair<Real> p) {
  const Real h = (1 - p.full) / 2;
  return std::sqrt(h * h + p.half * p.half) - h;
}

// (Phi(t) (x) id) applied to the Bell state, basis (ee, eg, ge, gg).
template <typename Real>
DensityMatrix<Real> rho_sa_closed(XiPair<Real> p) {
  CMatrix<Real> m = CMatrix<Real>::Zero(4, 4);
  m(0, 0) = p.full / 2;
  m(0, 3) = m(3, 0) = p.half / 2;
  m(2, 2) = (1 - p.full) / 2;
  m(3, 3) = Real(0.5);
  return DensityMatrix<Real>(std::move(m), {{"S", 2}, {"A", 2}});
}

template <typename Real>
DensityMatrix<Real> rho_sa_closed(const MemoryKernel<Real>& kernel, Real t) {
  return rho_sa_closed(xi_pair(kernel, t));
}

// Coefficients shared by the S-E and A-E reduced states.
template <typename Real>
struct ReducedStateEntries {
  Real u, v, w, z, q_plus, q_minus, p_plus, p_minus;
};

template <typename Real>
ReducedStateEntries<Real> reduced_state_entries(XiPair<Real> p) {
  const auto k = kraus_params(p);
  const Real mp = std::max(k.mu_plus, Real(0));
  const Real mm = std::max(k.mu_minus, Real(0));
  const Real decay = std::sqrt(std::max(1 - p.full, Real(0)));
  ReducedStateEntries<Real> e{};
  e.u = mp * k.a_plus * k.a_plus;
  e.v = mp * k.b_plus * k.b_plus;
  e.w = std::sqrt(mp * mm) * k.a_plus * k.a_minus;
  e.z = std::sqrt(mp * mm) * k.b_plus * k.b_minus;
  e.q_plus = std::sqrt(mp) * k.a_plus * decay;
  e.q_minus = std::sqrt(mm) * k.a_minus * decay;
  e.p_plus = std::sqrt(mp) * k.a_plus;
  e.p_minus = std::sqrt(mm) * k.a_minus;
  return e;
}

// Tr_A of the dilated Bell state in the basis (e0, e1, e2, g0, g1, g2).
template <typename Real>
DensityMatrix<Real> rho_se_closed(XiPair<Real> p, Real tol = Real(kCpTolerance)) {
  if (!satisfies_cp_condition(p.full, p.half, tol)) {
    throw Error(ErrorCode::kNotCompletelyPositive, "S-E state requires a CP map");
  }
  const auto e = reduced_state_entries(p);
  CMatrix<Real> m = CMatrix<Real>::Zero(6, 6);
  m(0, 0) = e.u;
  m(0, 2) = m(2, 0) = e.w;
  m(0, 4) = m(4, 0) = e.q_plus;
  m(2, 2) = p.full - e.u;
  m(2, 4) = m(4, 2) = e.q_minus;
  m(3, 3) = e.v;
  m(3, 5) = m(5, 3) = e.z;
  m(4, 4) = 1 - p.full;
  m(5, 5) = 1 - e.v;
  m /= Real(2);
  return DensityMatrix<Real>(std::move(m), {{"S", 2}, {"E", 3}});
}

template <typename Real>
DensityMatrix<Real> rho_se_closed(const MemoryKernel<Real>& kernel, Real t) {
  return rho_se_closed(xi_pair(kernel, t));
}

// The A-E matrix exactly as typeset, with p+/- = sqrt(mu+/-) a+/-. It is not
// Hermitian ((4,6) vs (6,4) and (5,6) vs (6,5), 1-based) and is kept only as
// a test vector for the dilation route.
template <typename Real>
CMatrix<Real> rho_ae_printed(XiPair<Real> p) {
  const auto e = reduced_state_entries(p);
  CMatrix<Real> m = CMatrix<Real>::Zero(6, 6);
  m(0, 0) = e.u;
  m(0, 2) = e.w;
  m(1, 1) = 1 - p.full;
  m(1, 3) = e.p_plus;
  m(1, 5) = e.p_minus;
  m(2, 0) = e.w;
  m(2, 2) = p.full - e.u;
  m(3, 1) = e.p_plus;
  m(3, 3) = e.v;
  m(3, 5) = e.z;
  m(5, 1) = e.p_minus;
  m(5, 4) = e.z;
  m(5, 5) = 1 - e.v;
  m /= Real(2);
  return m;
}

// Tripartite (S, A, E) state obtained by dilating the closed-form Kraus set
// on the Bell input.
template <typename Real>
DensityMatrix<Real> dilated_bell_state(const KrausSet<Real>& kraus) {
  return dilate(kraus, bell_state<Real>());
}

template <typename Real>
DensityMatrix<Real> rho_ae_closed(XiPair<Real> p, Real tol = Real(kCpTolerance)) {
  return partial_trace(dilated_bell_state(kraus_closed_form(p, Real(0), tol)), "S");
}

template <typename Real>
DensityMatrix<Real> rho_ae_closed(const MemoryKernel<Real>& kernel, Real t) {
  return rho_ae_closed(xi_pair(kernel, t));
}

}  // namespace memq

#endif  // MEMQ_STATES_HPP_
