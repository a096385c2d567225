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

#include "memq/validate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "memq/channel.hpp"
#include "memq/errors.hpp"
#include "memq/kernel.hpp"
#include "memq/oracle.hpp"
#include "memq/states.hpp"

namespace memq {

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::kPass: return "pass";
    case CheckStatus::kFail: return "fail";
    case CheckStatus::kReported: return "reported";
  }
  return "unknown";
}

bool ValidationReport::passed() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const ValidationCheck& c) { return c.status == CheckStatus::kFail; });
}

namespace {

using Kernel = MemoryKernel<double>;

ValidationCheck bounded(std::string name, double deviation, double tolerance,
                        std::string note = {}) {
  const bool ok = std::isfinite(deviation) && deviation <= tolerance;
  return {std::move(name), deviation, tolerance, ok ? CheckStatus::kPass : CheckStatus::kFail,
          std::move(note)};
}

std::vector<double> grid(double t_max, int n, bool skip_zero) {
  std::vector<double> ts;
  for (int i = skip_zero ? 1 : 0; i < n; ++i) ts.push_back(t_max * i / (n - 1));
  return ts;
}

double max_abs(const CMatrix<double>& a, const CMatrix<double>& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// Max deviation of the Volterra solution from `reference` at step h and h/2.
struct Convergence {
  double coarse;
  double fine;
};

template <typename Extract, typename Reference>
Convergence volterra_convergence(const Kernel& kernel, const DensityMatrix<double>& rho0,
                                 double t_max, Extract&& extract, Reference&& reference) {
  auto run = [&](double step) {
    const auto traj = integrate_master_equation(kernel, rho0, {step, t_max});
    double err = 0;
    for (const auto& s : traj) err = std::max(err, std::abs(extract(s.rho) - reference(s.gamma0_t)));
    return err;
  };
  return {run(1e-3), run(5e-4)};
}

}  // namespace

ValidationReport run_validation(const ValidationOptions& options) {
  if (!(options.tolerance_scale > 0) || !std::isfinite(options.tolerance_scale)) {
    throw Error(ErrorCode::kInvalidConfig, "tolerance scale must be finite and > 0");
  }
  if (options.n_points < 2 || !(options.t_max > 0)) {
    throw Error(ErrorCode::kInvalidConfig, "need t_max > 0 and at least 2 points");
  }
  const double s = options.tolerance_scale;
  const auto kernel = Kernel::from_ratios(options.alpha, options.g, 1.0);
  const double g0 = kernel.markov_rate;
  ValidationReport report;

  // Inverse Laplace transforms.
  {
    double talbot = 0;
    double stehfest = 0;
    for (double t : grid(options.t_max, options.n_points, true)) {
      for (double x : {g0, g0 / 2}) {
        const double closed = xi(kernel, x, t);
        const double tb = inverse_laplace_xi(kernel, x, t, {InversionMethod::kTalbot, 32});
        const double sf = inverse_laplace_xi(kernel, x, t, {InversionMethod::kStehfest, 18});
        talbot = std::max(talbot, std::abs(closed - tb));
        stehfest = std::max(stehfest, std::abs(tb - sf));
      }
    }
    report.checks.push_back(bounded("xi_closed_vs_talbot", talbot, 1e-8 * s));
    report.checks.push_back(bounded("xi_talbot_vs_stehfest", stehfest, 1e-6 * s));
  }

  // Direct integration of the memory-kernel master equation.
  {
    const auto pop = volterra_convergence(
        kernel, excited_state<double>(), options.t_max,
        [](const DensityMatrix<double>& r) { return r(0, 0).real(); },
        [&](double t) { return xi(kernel, g0, t); });
    const auto coh = volterra_convergence(
        kernel, plus_state<double>(), options.t_max,
        [](const DensityMatrix<double>& r) { return r(0, 1).real(); },
        [&](double t) { return xi(kernel, g0 / 2, t) / 2; });
    report.checks.push_back(bounded("volterra_population", pop.fine, 1e-6 * s,
                                    "rho_ee vs xi(gamma0,t), step 5e-4"));
    report.checks.push_back(bounded("volterra_coherence", coh.fine, 1e-6 * s,
                                    "rho_eg vs xi(gamma0/2,t)/2, step 5e-4"));
    const double ratio = pop.coarse / pop.fine;
    std::ostringstream note;
    note << "error ratio under step halving = " << ratio;
    report.checks.push_back(bounded("volterra_second_order", std::abs(ratio - 4.0), 0.5 * s,
                                    note.str()));
  }

  // Channel and reduced states on the time grid.
  {
    double tp = 0;
    double round_trip = 0;
    double eq13 = 0;
    double eq14 = 0;
    double ae_herm = 0;
    double ae_trace = 0;
    double ae_min_eig = 0;
    int skipped = 0;
    for (double t : grid(options.t_max, options.n_points, false)) {
      const auto p = xi_pair(kernel, t);
      if (!satisfies_cp_condition(p.full, p.half)) {
        ++skipped;
        continue;
      }
      const auto choi = choi_matrix(p);
      const auto closed = kraus_closed_form(p, g0 * t);
      const auto spectral = kraus_from_choi(choi);
      tp = std::max({tp, trace_preservation_error(closed), trace_preservation_error(spectral)});
      round_trip = std::max({round_trip, max_abs(choi_from_kraus(spectral).entries, choi.entries),
                             max_abs(choi_from_kraus(closed).entries, choi.entries)});

      const auto full = dilated_bell_state(closed);
      const auto via_channel = apply_channel(closed, bell_state<double>(), "S");
      eq13 = std::max(eq13, max_abs(via_channel.matrix(), rho_sa_closed(p).matrix()));
      eq14 = std::max(eq14, max_abs(partial_trace(full, "A").matrix(), rho_se_closed(p).matrix()));

      const auto ae = partial_trace(full, "S");
      ae_herm = std::max(ae_herm, ae.hermiticity_error());
      ae_trace = std::max(ae_trace, std::abs(ae.trace() - 1));
      ae_min_eig = std::min(ae_min_eig, ae.min_eigenvalue());
    }
    const std::string note =
        skipped ? std::to_string(skipped) + " non-CP grid points skipped" : std::string{};
    report.checks.push_back(bounded("kraus_trace_preservation", tp, 1e-10 * s, note));
    report.checks.push_back(bounded("choi_round_trip", round_trip, 1e-10 * s, note));
    report.checks.push_back(bounded("rho_sa_closed_form", eq13, 1e-10 * s, note));
    report.checks.push_back(bounded("rho_se_closed_form", eq14, 1e-10 * s, note));
    report.checks.push_back(bounded("rho_ae_dilation_hermitian", ae_herm, 1e-12 * s));
    report.checks.push_back(bounded("rho_ae_dilation_trace", ae_trace, 1e-12 * s));
    report.checks.push_back(bounded("rho_ae_dilation_psd", -ae_min_eig, 1e-10 * s,
                                    "deviation is minus the smallest eigenvalue"));
  }

  // Choi positivity against the analytic CP inequality on random samples.
  {
    std::mt19937_64 rng(20260101);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int disagreements = 0;
    constexpr double tol = 1e-10;
    for (int i = 0; i < 10000; ++i) {
      const double g = 2.0 * unit(rng);
      const double alpha = g * unit(rng);
      const double t = 10.0 * unit(rng);
      if (g <= 0) continue;
      const auto p = xi_pair(Kernel::from_ratios(alpha, g, 1.0), t);
      const bool choi_psd = choi_matrix(p).min_eigenvalue() >= -tol;
      if (choi_psd != satisfies_cp_condition(p.full, p.half, tol)) ++disagreements;
    }
    report.checks.push_back(bounded("choi_psd_vs_cp_inequality", disagreements, 0.0,
                                    "disagreements over 10^4 samples with alpha <= g <= 2"));
  }

  // Typeset A-E matrix: locate the non-Hermitian entries and the entries that
  // disagree with the dilation route.
  {
    const double t = std::min(1.0, options.t_max);
    const auto p = xi_pair(kernel, t);
    if (satisfies_cp_condition(p.full, p.half)) {
      const auto printed = rho_ae_printed(p);
      const auto dilated = rho_ae_closed(p).matrix();
      std::ostringstream asym;
      std::ostringstream mismatch;
      double herm_dev = 0;
      double mismatch_dev = 0;
      for (Eigen::Index i = 0; i < 6; ++i) {
        for (Eigen::Index j = i + 1; j < 6; ++j) {
          const double d = std::abs(printed(i, j) - std::conj(printed(j, i)));
          if (d > 1e-12) {
            asym << " (" << i + 1 << "," << j + 1 << ")/(" << j + 1 << "," << i + 1 << ")";
            herm_dev = std::max(herm_dev, d);
          }
        }
      }
      for (Eigen::Index i = 0; i < 6; ++i) {
        for (Eigen::Index j = i; j < 6; ++j) {
          const bool consistent = std::abs(printed(i, j) - std::conj(printed(j, i))) <= 1e-12;
          const double d = std::abs(printed(i, j) - dilated(i, j));
          if (consistent && d > 1e-10) {
            mismatch << " (" << i + 1 << "," << j + 1 << ")";
            mismatch_dev = std::max(mismatch_dev, d);
          }
        }
      }
      const bool detected = herm_dev > 0;
      report.checks.push_back(
          {"rho_ae_printed_hermiticity", herm_dev, 1e-12 * s,
           detected ? CheckStatus::kReported : CheckStatus::kFail,
           detected ? "known typeset inconsistency: non-Hermitian pairs" + asym.str()
                    : "expected typeset inconsistency was not detected"});
      report.checks.push_back(
          {"rho_ae_printed_vs_dilation", mismatch_dev, 1e-10 * s, CheckStatus::kReported,
           mismatch_dev > 0
               ? "known typeset inconsistency: Hermitian-consistent entries differing from "
                 "the dilation route" + mismatch.str()
               : "Hermitian-consistent entries agree with the dilation route"});
    } else {
      report.checks.push_back({"rho_ae_printed_hermiticity", 0.0, 1e-12 * s,
                               CheckStatus::kFail, "map is not CP at the probe time"});
    }
  }
  return report;
}

}  // namespace memq
