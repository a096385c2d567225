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

#ifndef MEMQ_ORACLE_HPP_
#define MEMQ_ORACLE_HPP_

// Brute-force references for the closed-form propagators: numerical inverse
// Laplace transforms and direct time stepping of the memory-kernel master
// equation
//
//   d rho / dt = L \int_0^t f(t') exp(L t') rho(t - t') dt'
//
// with L the amplitude-damping generator of rate gamma0.

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

#include "memq/density_matrix.hpp"
#include "memq/errors.hpp"
#include "memq/kernel.hpp"

namespace memq {

// Laplace transform of xi for the Liouvillian eigenvalue lambda = -x:
// 1 / (s - lambda F(s - lambda)) with F(s) = A / (s + gamma).
template <typename Real>
std::complex<Real> xi_laplace_transform(const MemoryKernel<Real>& kernel, Real x,
                                        std::complex<Real> s) {
  const Real lambda = -x;
  const std::complex<Real> f = kernel.amplitude / (s - lambda + kernel.memory_rate);
  return Real(1) / (s - lambda * f);
}

enum class InversionMethod { kTalbot, kStehfest };

struct InverseLaplaceConfig {
  InversionMethod method = InversionMethod::kTalbot;
  int order = 32;

  void validate() const {
    const bool ok = method == InversionMethod::kTalbot
                        ? (order >= 16 && order <= 64)
                        : (order >= 8 && order <= 20 && order % 2 == 0);
    if (!ok) {
      throw Error(ErrorCode::kUnstableOrder,
                  "order " + std::to_string(order) + " outside the stable range of " +
                      (method == InversionMethod::kTalbot ? "talbot (16-64)"
                                                          : "stehfest (even, 8-20)"));
    }
  }
};

// Fixed-Talbot inversion (Abate-Valko contour s = r theta (cot theta + i),
// r = 2M / (5t)).
template <typename Real, typename Transform>
Real talbot_inverse(Transform&& transform, Real t, int nodes) {
  using C = std::complex<Real>;
  const Real pi = std::numbers::pi_v<Real>;
  const Real r = Real(2) * nodes / (5 * t);
  Real acc = std::real(transform(C(r))) * std::exp(r * t) / 2;
  for (int k = 1; k < nodes; ++k) {
    const Real theta = k * pi / nodes;
    const Real cot = std::cos(theta) / std::sin(theta);
    const C s(r * theta * cot, r * theta);
    const Real sigma = theta + (theta * cot - 1) * cot;
    acc += std::real(std::exp(t * s) * transform(s) * C(1, sigma));
  }
  return r / nodes * acc;
}

template <typename Real>
std::vector<Real> stehfest_weights(int order) {
  const int half = order / 2;
  auto factorial = [](int n) {
    Real f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
  };
  std::vector<Real> v(static_cast<std::size_t>(order));
  for (int k = 1; k <= order; ++k) {
    Real sum = 0;
    for (int j = (k + 1) / 2; j <= std::min(k, half); ++j) {
      sum += std::pow(Real(j), half) * factorial(2 * j) /
             (factorial(half - j) * factorial(j) * factorial(j - 1) * factorial(k - j) *
              factorial(2 * j - k));
    }
    v[static_cast<std::size_t>(k - 1)] = ((k + half) % 2 == 0 ? 1 : -1) * sum;
  }
  return v;
}

// Gaver-Stehfest inversion on the real axis. Weights grow like 10^(order/2)
// so extended precision is recommended.
template <typename Real, typename Transform>
Real stehfest_inverse(Transform&& transform, Real t, int order) {
  const Real ln2 = std::numbers::ln2_v<Real>;
  const auto v = stehfest_weights<Real>(order);
  Real acc = 0;
  for (int k = 1; k <= order; ++k) {
    acc += v[static_cast<std::size_t>(k - 1)] *
           std::real(transform(std::complex<Real>(k * ln2 / t)));
  }
  return ln2 / t * acc;
}

// Numerical inverse Laplace transform of the propagator. Evaluated in long
// double internally regardless of Real.
template <typename Real>
Real inverse_laplace_xi(const MemoryKernel<Real>& kernel, Real x, Real t,
                        const InverseLaplaceConfig& cfg = {}) {
  cfg.validate();
  if (!(x > 0)) throw Error(ErrorCode::kInvalidParameter, "scale x must be > 0");
  if (!(t > 0)) throw Error(ErrorCode::kInvalidParameter, "numerical inversion needs t > 0");
  using Ext = long double;
  const MemoryKernel<Ext> ext{static_cast<Ext>(kernel.amplitude),
                              static_cast<Ext>(kernel.memory_rate),
                              static_cast<Ext>(kernel.markov_rate)};
  const Ext xe = static_cast<Ext>(x);
  auto transform = [&](std::complex<Ext> s) { return xi_laplace_transform(ext, xe, s); };
  const Ext te = static_cast<Ext>(t);
  const Ext value = cfg.method == InversionMethod::kTalbot
                        ? talbot_inverse<Ext>(transform, te, cfg.order)
                        : stehfest_inverse<Ext>(transform, te, cfg.order);
  return static_cast<Real>(value);
}

enum class Quadrature { kTrapezoid };

struct VolterraConfig {
  double step = 1e-3;  // in units of 1/gamma0
  double t_max = 10.0;
  Quadrature quadrature = Quadrature::kTrapezoid;

  void validate() const {
    if (!(step > 0) || !(t_max > 0)) {
      throw Error(ErrorCode::kInvalidParameter, "step and t_max must be > 0");
    }
    if (step > t_max / 100) {
      throw Error(ErrorCode::kStepTooLarge, "step must not exceed t_max / 100");
    }
  }
};

// Solves y'(t) = -x \int_0^t K(t') y(t - t') dt' on a uniform grid with the
// trapezoidal rule for both the convolution and the time stepping. The
// scheme is implicit only through the K(0) y_{n+1} term, which is solved
// in closed form. Returns y_0 .. y_N.
template <typename Value>
std::vector<Value> solve_convolution_equation(double x, const std::vector<double>& kernel_samples,
                                              Value y0, double h) {
  const std::size_t n_steps = kernel_samples.size() - 1;
  std::vector<Value> y(n_steps + 1);
  y[0] = y0;
  const auto& k = kernel_samples;
  Value z_prev = Value(0);  // y'(0) = 0: the integral over [0, 0] vanishes
  const double implicit = 1.0 + x * h * h * k[0] / 4.0;
  for (std::size_t n = 0; n < n_steps; ++n) {
    const std::size_t m = n + 1;
    // Trapezoid for \int_0^{t_m} K(t') y(t_m - t') dt' without the K_0 y_m term.
    Value partial = 0.5 * k[m] * y[0];
    for (std::size_t j = 1; j < m; ++j) partial += k[j] * y[m - j];
    partial *= h;
    y[m] = (y[n] + 0.5 * h * z_prev - 0.5 * h * x * partial) / implicit;
    z_prev = -x * (partial + 0.5 * h * k[0] * y[m]);
  }
  return y;
}

struct TimedState {
  double gamma0_t;
  DensityMatrix<double> rho;
};

// Direct integration with an arbitrary memory function f. exp(L t') is
// applied per damping sector: populations decay at gamma0 and coherences
// at gamma0 / 2, so each sector is a scalar Volterra equation.
inline std::vector<TimedState> integrate_master_equation(const std::function<double(double)>& f,
                                                        double gamma0,
                                                        const DensityMatrix<double>& rho0,
                                                        const VolterraConfig& cfg) {
  cfg.validate();
  if (rho0.dim() != 2) throw Error(ErrorCode::kDimensionMismatch, "expected a qubit state");
  if (!(gamma0 > 0)) throw Error(ErrorCode::kInvalidParameter, "gamma0 must be > 0");

  const double h = cfg.step / gamma0;
  const auto n_steps = static_cast<std::size_t>(std::llround(cfg.t_max / cfg.step));
  std::vector<double> k_pop(n_steps + 1), k_coh(n_steps + 1);
  for (std::size_t j = 0; j <= n_steps; ++j) {
    const double tp = static_cast<double>(j) * h;
    const double fj = f(tp);
    k_pop[j] = fj * std::exp(-gamma0 * tp);
    k_coh[j] = fj * std::exp(-gamma0 * tp / 2);
  }

  const auto& m0 = rho0.matrix();
  const double pop_e0 = m0(0, 0).real();
  const double pop_g0 = m0(1, 1).real();
  const auto pop = solve_convolution_equation<double>(gamma0, k_pop, pop_e0, h);
  const auto coh =
      solve_convolution_equation<std::complex<double>>(gamma0 / 2, k_coh, m0(0, 1), h);

  std::vector<TimedState> out;
  out.reserve(n_steps + 1);
  for (std::size_t n = 0; n <= n_steps; ++n) {
    CMatrix<double> m(2, 2);
    m(0, 0) = pop[n];
    m(1, 1) = pop_g0 + pop_e0 - pop[n];
    m(0, 1) = coh[n];
    m(1, 0) = std::conj(coh[n]);
    out.push_back({static_cast<double>(n) * cfg.step, DensityMatrix<double>(m, rho0.subsystems())});
  }
  return out;
}

inline std::vector<TimedState> integrate_master_equation(const MemoryKernel<double>& kernel,
                                                        const DensityMatrix<double>& rho0,
                                                        const VolterraConfig& cfg) {
  kernel.validate();
  return integrate_master_equation([&](double t) { return kernel(t); }, kernel.markov_rate,
                                   rho0, cfg);
}

}  // namespace memq

#endif  // MEMQ_ORACLE_HPP_
