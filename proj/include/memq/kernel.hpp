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

#ifndef MEMQ_KERNEL_HPP_
#define MEMQ_KERNEL_HPP_

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "memq/errors.hpp"

namespace memq {

// Switch to the confluent limit when |(1+g)^2 - 4 alpha| falls below this.
inline constexpr double kBranchTolerance = 1e-9;
// Slack used when flagging complete positivity.
inline constexpr double kCpTolerance = 1e-12;

// Exponential memory kernel f(t) = A exp(-gamma t) together with the
// Markovian amplitude-damping rate gamma0 of the local Liouvillian.
//
// The amplitude carries units of a rate so that alpha(x) = A / x is
// dimensionless for any rate scale x.
template <typename Real>
struct MemoryKernel {
  Real amplitude{0};
  Real memory_rate{1};
  Real markov_rate{1};

  // Builds the kernel from the ratios alpha = A / gamma0 and g = gamma / gamma0.
  static MemoryKernel from_ratios(Real alpha, Real g, Real gamma0 = Real(1)) {
    MemoryKernel k{alpha * gamma0, g * gamma0, gamma0};
    k.validate();
    return k;
  }

  Real alpha(Real x) const { return amplitude / x; }
  Real g(Real x) const { return memory_rate / x; }

  Real operator()(Real t) const { return amplitude * std::exp(-memory_rate * t); }

  void validate() const {
    if (!(amplitude >= 0) || !std::isfinite(amplitude)) {
      throw Error(ErrorCode::kInvalidParameter, "kernel amplitude must be finite and >= 0");
    }
    if (!(memory_rate > 0) || !std::isfinite(memory_rate)) {
      throw Error(ErrorCode::kInvalidParameter, "memory rate must be finite and > 0");
    }
    if (!(markov_rate > 0) || !std::isfinite(markov_rate)) {
      throw Error(ErrorCode::kInvalidParameter, "Markovian rate must be finite and > 0");
    }
  }
};

enum class XiBranch { kHyperbolic, kTrigonometric, kDegenerate };

inline const char* to_string(XiBranch b) {
  switch (b) {
    case XiBranch::kHyperbolic: return "hyperbolic";
    case XiBranch::kTrigonometric: return "trigonometric";
    case XiBranch::kDegenerate: return "degenerate";
  }
  return "unknown";
}

template <typename Real>
struct XiEvaluation {
  Real value;
  XiBranch branch;
  Real omega_tilde;  // dimensionless
};

template <typename Real>
XiBranch xi_branch(const MemoryKernel<Real>& kernel, Real x) {
  const Real one_g = 1 + kernel.g(x);
  const Real disc = one_g * one_g - 4 * kernel.alpha(x);
  if (std::abs(disc) < Real(kBranchTolerance)) return XiBranch::kDegenerate;
  return disc > 0 ? XiBranch::kHyperbolic : XiBranch::kTrigonometric;
}

// Closed-form propagator xi(x, t) of the memory-kernel master equation for a
// Liouvillian eigenvalue -x:
//
//   xi(x,t) = exp(-(1+g) x t / 2) [cosh(w x t) + (1+g)/(2w) sinh(w x t)],
//   w = |sqrt((1+g)^2 - 4 alpha)| / 2,
//
// with cos/sin replacing cosh/sinh when 4 alpha > (1+g)^2.
template <typename Real>
XiEvaluation<Real> eval_xi(const MemoryKernel<Real>& kernel, Real x, Real t) {
  if (!(x > 0) || !std::isfinite(x)) {
    throw Error(ErrorCode::kInvalidParameter, "scale x must be > 0");
  }
  if (!(t >= 0) || !std::isfinite(t)) {
    throw Error(ErrorCode::kInvalidParameter, "time must be >= 0");
  }
  const Real one_g = 1 + kernel.g(x);
  const Real disc = one_g * one_g - 4 * kernel.alpha(x);
  const Real w = std::sqrt(std::abs(disc)) / 2;
  const Real theta = one_g * x * t / 2;

  XiEvaluation<Real> out{Real(1), xi_branch(kernel, x), w};
  if (t == 0) return out;

  switch (out.branch) {
    case XiBranch::kDegenerate:
      out.value = std::exp(-theta) * (1 + theta);
      break;
    case XiBranch::kHyperbolic: {
      // exp(-theta) cosh(y) and exp(-theta) sinh(y) without overflow.
      const Real y = w * x * t;
      const Real up = std::exp(y - theta);
      const Real down = std::exp(-y - theta);
      out.value = (up + down) / 2 + one_g / (2 * w) * (up - down) / 2;
      break;
    }
    case XiBranch::kTrigonometric: {
      const Real y = w * x * t;
      out.value = std::exp(-theta) * (std::cos(y) + one_g / (2 * w) * std::sin(y));
      break;
    }
  }
  return out;
}

template <typename Real>
Real xi(const MemoryKernel<Real>& kernel, Real x, Real t) {
  return eval_xi(kernel, x, t).value;
}

// The two propagators entering the reduced map: population decay at gamma0
// and coherence decay at gamma0 / 2.
template <typename Real>
struct XiPair {
  Real full;  // xi(gamma0, t)
  Real half;  // xi(gamma0 / 2, t)
};

template <typename Real>
XiPair<Real> xi_pair(const MemoryKernel<Real>& kernel, Real t) {
  return {xi(kernel, kernel.markov_rate, t), xi(kernel, kernel.markov_rate / 2, t)};
}

// Memoryless reference: xi(gamma0,t) = nu^2 and xi(gamma0/2,t) = nu with
// nu = exp(-gamma0 t / 2).
template <typename Real>
XiPair<Real> markovian_xi_pair(Real gamma0, Real t) {
  if (!(t >= 0)) throw Error(ErrorCode::kInvalidParameter, "time must be >= 0");
  const Real nu = std::exp(-gamma0 * t / 2);
  return {nu * nu, nu};
}

template <typename Real>
struct LiouvillianSpectrum {
  std::array<Real, 4> eigenvalues;
};

// The steady-state eigenvalue is 0: the generator is trace preserving.
template <typename Real>
LiouvillianSpectrum<Real> liouvillian_spectrum(const MemoryKernel<Real>& kernel) {
  const Real g0 = kernel.markov_rate;
  return {{Real(0), -g0, -g0 / 2, -g0 / 2}};
}

template <typename Real>
bool satisfies_cp_condition(Real xi_full, Real xi_half, Real tol = Real(kCpTolerance)) {
  const Real d = xi_full - xi_half * xi_half;
  return d >= -tol && xi_full <= 1 + tol && xi_full >= -tol;
}

template <typename Real>
struct CpSample {
  Real gamma0_t;
  Real D;
  Real xi_full;
  Real xi_half;
  bool completely_positive;
};

template <typename Real>
CpSample<Real> cp_sample(XiPair<Real> p, Real gamma0_t, Real tol = Real(kCpTolerance)) {
  return {gamma0_t, p.full - p.half * p.half, p.full, p.half,
          satisfies_cp_condition(p.full, p.half, tol)};
}

// D(t) = xi(gamma0,t) - xi(gamma0/2,t)^2 and the complete-positivity flag.
template <typename Real>
CpSample<Real> cp_difference(const MemoryKernel<Real>& kernel, Real t,
                             Real tol = Real(kCpTolerance)) {
  return cp_sample(xi_pair(kernel, t), kernel.markov_rate * t, tol);
}

// First interval on which xi(gamma0, t) < 0. Times are dimensionless gamma0 t.
template <typename Real>
struct ViolationWindow {
  Real begin;
  Real end;
  // Closed-form phase window (pi - atan(2w/(1+g)), 2pi - atan(2w/(1+g)))
  // divided by w to convert the phase w*gamma0*t into gamma0 t.
  Real printed_begin;
  Real printed_end;
};

namespace detail {

template <typename Real, typename F>
Real bisect_sign_change(F&& f, Real lo, Real hi, int iterations = 200) {
  Real flo = f(lo);
  for (int i = 0; i < iterations && hi - lo > std::numeric_limits<Real>::epsilon() * hi; ++i) {
    const Real mid = (lo + hi) / 2;
    const Real fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return (lo + hi) / 2;
}

}  // namespace detail

template <typename Real>
std::optional<ViolationWindow<Real>> cp_violation_window(const MemoryKernel<Real>& kernel) {
  const Real g0 = kernel.markov_rate;
  const auto at_zero = eval_xi(kernel, g0, Real(0));
  if (at_zero.branch != XiBranch::kTrigonometric) return std::nullopt;

  const Real w = at_zero.omega_tilde;
  const Real one_g = 1 + kernel.g(g0);
  const Real pi = std::numbers::pi_v<Real>;
  const Real phase = std::atan(2 * w / one_g);

  auto f = [&](Real tau) { return xi(kernel, g0, tau / g0); };
  // Scan in gamma0 t; one oscillation period is 2 pi / w.
  const Real step = pi / (64 * w);
  const Real limit = 4 * pi / w;
  Real prev_tau = 0;
  Real prev = f(prev_tau);
  std::optional<Real> begin;
  for (Real tau = step; tau <= limit + step; tau += step) {
    const Real cur = f(tau);
    if (!begin && prev >= 0 && cur < 0) {
      begin = detail::bisect_sign_change(f, prev_tau, tau);
    } else if (begin && prev < 0 && cur >= 0) {
      const Real end = detail::bisect_sign_change(f, prev_tau, tau);
      return ViolationWindow<Real>{*begin, end, (pi - phase) / w, (2 * pi - phase) / w};
    }
    prev_tau = tau;
    prev = cur;
  }
  return std::nullopt;
}

}  // namespace memq

#endif  // MEMQ_KERNEL_HPP_
