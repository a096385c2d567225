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

#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "memq/states.hpp"
#include "test_util.hpp"

using memq::CMatrix;
using memq::DensityMatrix;
using memq::testing::max_abs;
using Kernel = memq::MemoryKernel<double>;

TEST_CASE("partial trace") {
  const auto state = memq::tensor(memq::bell_state<double>(), memq::vacuum_state<double>(3));
  SUBCASE("over the ancilla of Bell (x) vacuum") {
    const auto r = memq::partial_trace(state, "A");
    REQUIRE(r.dim() == 6);
    CHECK(r.subsystems().size() == 2);
    CHECK(r.subsystems()[0].label == "S");
    CHECK(r.subsystems()[1].label == "E");
    CMatrix<double> expected = CMatrix<double>::Zero(6, 6);
    expected(0, 0) = expected(3, 3) = 0.5;
    CHECK(max_abs(r.matrix(), expected) == 0.0);
  }
  SUBCASE("preserves the trace and composes across factors") {
    std::mt19937_64 rng(1);
    const auto rho = memq::testing::random_state(rng, {{"S", 2}, {"A", 2}, {"E", 3}});
    const auto se = memq::partial_trace(rho, "A");
    CHECK(se.trace() == doctest::Approx(1.0));
    const auto s1 = memq::partial_trace(se, "E");
    const auto s2 = memq::partial_trace(memq::partial_trace(rho, "E"), "A");
    CHECK(max_abs(s1.matrix(), s2.matrix()) < 1e-14);
  }
  SUBCASE("product states factor") {
    std::mt19937_64 rng(2);
    const auto a = memq::testing::random_state(rng, {{"S", 2}});
    const auto b = memq::testing::random_state(rng, {{"E", 3}});
    const auto ab = memq::tensor(a, b);
    CHECK(max_abs(memq::partial_trace(ab, "S").matrix(), b.matrix()) < 1e-14);
    CHECK(max_abs(memq::partial_trace(ab, "E").matrix(), a.matrix()) < 1e-14);
  }
  SUBCASE("unknown label") {
    try {
      memq::partial_trace(state, "B");
      FAIL("expected unknown-subsystem");
    } catch (const memq::Error& e) {
      CHECK(e.code() == memq::ErrorCode::kUnknownSubsystem);
    }
    CHECK_THROWS_AS(memq::partial_transpose(state, "B"), memq::Error);
  }
}

TEST_CASE("partial transpose") {
  SUBCASE("involution preserving trace and Hermiticity") {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 20; ++i) {
      const auto rho = memq::testing::random_state(rng, {{"S", 2}, {"E", 3}});
      for (const char* label : {"S", "E"}) {
        const auto pt = memq::partial_transpose(rho, label);
        CHECK(pt.hermiticity_error() == 0.0);
        CHECK(std::abs(pt.trace() - rho.trace()) < 1e-15);
        CHECK(max_abs(memq::partial_transpose(pt, label).matrix(), rho.matrix()) == 0.0);
      }
    }
  }
  SUBCASE("Bell state spectrum") {
    const auto ev = memq::partial_transpose(memq::bell_state<double>(), "A").eigenvalues();
    CHECK(ev(0) == doctest::Approx(-0.5));
    CHECK(ev(1) == doctest::Approx(0.5));
    CHECK(ev(2) == doctest::Approx(0.5));
    CHECK(ev(3) == doctest::Approx(0.5));
  }
  SUBCASE("product states stay positive") {
    std::mt19937_64 rng(6);
    const auto ab = memq::tensor(memq::testing::random_qubit(rng, "S"),
                                 memq::testing::random_qubit(rng, "A"));
    CHECK(memq::partial_transpose(ab, "A").min_eigenvalue() >= -1e-15);
  }
  SUBCASE("S-A state moves the coherence onto the (eg, ge) sector") {
    const auto p = memq::xi_pair(Kernel::from_ratios(0.1, 0.5), 1.0);
    const auto pt = memq::partial_transpose(memq::rho_sa_closed(p), "A").matrix();
    CHECK(pt(1, 1).real() == 0.0);
    CHECK(pt(1, 2).real() == p.half / 2);
    CHECK(pt(2, 1).real() == p.half / 2);
    CHECK(pt(2, 2).real() == (1 - p.full) / 2);
    CHECK(pt(0, 3).real() == 0.0);
  }
}

TEST_CASE("negativity") {
  CHECK(memq::negativity(memq::bell_state<double>(), "A").value == doctest::Approx(1.0));
  CHECK(memq::negativity(memq::bell_state<double>(), "S").value == doctest::Approx(1.0));

  const DensityMatrix<double> mixed(CMatrix<double>::Identity(4, 4) / 4.0, {{"S", 2}, {"A", 2}});
  const auto n = memq::negativity(mixed, "A");
  CHECK(n.value == 0.0);
  CHECK(n.negative_eigenvalues.empty());

  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    const auto ab = memq::tensor(memq::testing::random_qubit(rng, "S"),
                                 memq::testing::random_state(rng, {{"E", 3}}));
    REQUIRE(memq::negativity(ab, "E").value == 0.0);
  }
}

TEST_CASE("S-A negativity has a closed form") {
  // Brute force: numeric partial transpose + Hermitian eigensolve of the
  // 4x4 state, compared with sqrt((1-xi1)^2/4 + xih^2) - (1-xi1)/2.
  for (auto [a, g] : {std::pair{0.1, 0.5}, {0.3, 0.5}, {0.05, 1.0}, {0.4, 0.4}}) {
    const auto k = Kernel::from_ratios(a, g);
    for (int i = 0; i <= 100; ++i) {
      const auto p = memq::xi_pair(k, 0.2 * i);
      const double numeric = memq::negativity(memq::rho_sa_closed(p), "A").value;
      REQUIRE(std::abs(numeric - memq::negativity_sa_analytic(p)) <= 1e-10);
    }
  }
}

TEST_CASE("closed-form S-A state") {
  const auto k = Kernel::from_ratios(0.1, 0.5);
  CHECK(max_abs(memq::rho_sa_closed(k, 0.0).matrix(), memq::bell_state<double>().matrix()) == 0.0);

  const auto late = memq::rho_sa_closed(k, 800.0);
  CMatrix<double> expected = CMatrix<double>::Zero(4, 4);
  expected(2, 2) = expected(3, 3) = 0.5;
  CHECK(max_abs(late.matrix(), expected) < 1e-12);
  CHECK(memq::negativity(late, "A").value == 0.0);

  for (auto [a, g] : {std::pair{0.1, 0.5}, {0.3, 0.5}, {0.5, 0.5}, {0.2, 1.5}, {0.05, 0.1}}) {
    const auto kk = Kernel::from_ratios(a, g);
    for (int i = 0; i < 50; ++i) {
      const double t = 10.0 * i / 49;
      const auto ks = memq::kraus_closed_form(kk, t);
      const auto via_channel = memq::apply_channel(ks, memq::bell_state<double>(), "S");
      const auto via_dilation = memq::partial_trace(memq::dilated_bell_state(ks), "E");
      const auto closed = memq::rho_sa_closed(kk, t);
      REQUIRE(max_abs(via_channel.matrix(), closed.matrix()) <= 1e-10);
      REQUIRE(max_abs(via_dilation.matrix(), closed.matrix()) <= 1e-10);
    }
  }
}

TEST_CASE("S-E and A-E states from the dilation") {
  const auto k = Kernel::from_ratios(0.1, 0.5);
  SUBCASE("initial states are unentangled with the vacuum") {
    const auto half = memq::DensityMatrix<double>::qubit(CMatrix<double>::Identity(2, 2) / 2.0);
    const auto expected = memq::tensor(half, memq::vacuum_state<double>(3));
    const auto se = memq::rho_se_closed(k, 0.0);
    const auto ae = memq::rho_ae_closed(k, 0.0);
    CHECK(max_abs(se.matrix(), expected.matrix()) < 1e-15);
    CHECK(max_abs(ae.matrix(), expected.matrix()) < 1e-15);
    CHECK(memq::negativity(se, "E").value == 0.0);
    CHECK(memq::negativity(ae, "E").value == 0.0);
  }
  SUBCASE("closed-form S-E matrix matches the dilation entrywise") {
    for (int i = 0; i < 50; ++i) {
      const double t = 10.0 * i / 49;
      const auto full = memq::dilated_bell_state(memq::kraus_closed_form(k, t));
      REQUIRE(max_abs(memq::partial_trace(full, "A").matrix(),
                      memq::rho_se_closed(k, t).matrix()) <= 1e-10);
    }
  }
  SUBCASE("reduced states are physical") {
    for (int i = 0; i < 50; ++i) {
      const auto full = memq::dilated_bell_state(memq::kraus_closed_form(k, 0.4 * i));
      for (const char* label : {"S", "A", "E"}) {
        const auto check = memq::check_density(memq::partial_trace(full, label));
        REQUIRE(check.ok);
      }
    }
  }
  SUBCASE("entanglement is eventually carried by ancilla and environment") {
    const auto ae = memq::rho_ae_closed(k, 200.0);
    CHECK(memq::negativity(ae, "E").value > 0.999);
  }
  SUBCASE("outside the CP regime there is no S-E state") {
    const auto bad = Kernel::from_ratios(2.0, 0.1);
    const auto w = memq::cp_violation_window(bad);
    CHECK_THROWS_AS(memq::rho_se_closed(bad, 0.5 * (w->begin + w->end)), memq::Error);
  }
}

TEST_CASE("typeset A-E matrix is not Hermitian") {
  const auto p = memq::xi_pair(Kernel::from_ratios(0.1, 0.5), 1.0);
  const auto printed = memq::rho_ae_printed(p);
  const auto dilated = memq::rho_ae_closed(p).matrix();
  // 0-based pairs (3,5)/(5,3) and (4,5)/(5,4) break the symmetry.
  CHECK(printed(3, 5).real() != printed(5, 3).real());
  CHECK(printed(4, 5).real() != printed(5, 4).real());
  int asymmetric = 0;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) asymmetric += std::abs(printed(i, j) - printed(j, i)) > 1e-12;
  CHECK(asymmetric == 2);
  // The diagonal and the (e0, e2) block agree with the dilation route.
  for (int i = 0; i < 6; ++i) CHECK(std::abs(printed(i, i) - dilated(i, i)) < 1e-14);
  CHECK(std::abs(printed(0, 2) - dilated(0, 2)) < 1e-14);
  CHECK(std::abs(printed(3, 5) - dilated(3, 5)) < 1e-14);
}
