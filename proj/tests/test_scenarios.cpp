// Copyright 2026 The pdecho Authors
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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "pdecho/entanglement.hpp"
#include "pdecho/errors.hpp"
#include "pdecho/scenarios.hpp"

using namespace pdecho;
using linalg::max_abs_diff;

namespace {

Matrix m2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

/// |c|^2-weighted projector sum written out by hand.
Matrix w0_by_hand(double t) {
  const double w = std::numbers::pi / 4.0;
  const Matrix p = 0.5 * m2(1.0, Complex(0, 1), Complex(0, -1), 1.0);
  const Matrix q = 0.5 * m2(1.0, Complex(0, -1), Complex(0, 1), 1.0);
  return std::polar(1.0, w * t) * p + std::polar(1.0, -w * t) * q;
}

}  // namespace

TEST_SUITE("scenarios") {
  TEST_CASE("periodic model at the reference time") {
    const double h = 1.0 / std::sqrt(2.0);
    const Scenario s = fig1_model(1.0);
    const BranchPair w = evaluate(s.pair, 1.0);
    CHECK(max_abs_diff(w.w0, h * m2(1, -1, 1, 1)) < 1e-15);
    CHECK(max_abs_diff(w.w0, w0_by_hand(1.0)) < 1e-15);
    CHECK(max_abs_diff(w.w0.adjoint(), h * m2(1, 1, -1, 1)) < 1e-15);
    CHECK(max_abs_diff(w.w1, h * m2(1, 1, 1, -1)) < 1e-15);
    CHECK(max_abs_diff(prepulse_operator(w), m2(1, 0, 0, -1)) < 1e-15);
    CHECK(max_abs_diff(echo_operator(w), m2(0, 1, -1, 0)) < 1e-15);

    CHECK(s.grid_points == 801);
    CHECK(s.grid_stop == 4.0);
    CHECK(s.r0.is_pure());
    CHECK(s.amplitudes.a() == s.amplitudes.b());

    const Scenario scaled = fig1_model(2.5);
    CHECK(max_abs_diff(evaluate(scaled.pair, 2.5).w1, w.w1) < 1e-15);
    CHECK_THROWS_AS(fig1_model(0.0), ValidationError);
  }

  TEST_CASE("periodic model repeats every 4 tau0") {
    const Scenario s = fig1_model(1.0);
    for (double t = 0.0; t < 4.0; t += 0.173) {
      for (int b : {0, 1}) {
        const Matrix a = s.pair(b, t);
        const Matrix c = s.pair(b, t + 4.0);
        // Equal up to a global phase.
        const Complex phase = (a.adjoint() * c).trace() / 2.0;
        CHECK(std::abs(std::abs(phase) - 1.0) < 1e-12);
        CHECK(max_abs_diff(c, phase * a) < 1e-12);
      }
      const auto r = classify_point(s.pair, s.amplitudes, s.r0, t);
      const auto r4 = classify_point(s.pair, s.amplitudes, s.r0, t + 4.0);
      CHECK(std::abs(*r.entropy_pre - *r4.entropy_pre) < 1e-10);
      CHECK(std::abs(*r.entropy_echo - *r4.entropy_echo) < 1e-10);
    }
    const auto at = classify_point(s.pair, s.amplitudes, s.r0, 1.0);
    CHECK(*at.entropy_pre < 1e-10);
    CHECK(std::abs(*at.entropy_echo - 1.0) < 1e-9);
  }

  TEST_CASE("two-level snapshot") {
    for (double c0 : {0.0, 0.25, 0.5, 0.7, 1.0}) {
      const Scenario s = sec4b_snapshot(c0);
      CHECK(std::abs(coherence(s.pair, s.r0, 1.0) - Complex(2 * c0 - 1)) < 1e-12);
      CHECK(std::abs(echoed_coherence(s.pair, s.r0, 1.0)) < 1e-12);
    }
    CHECK(echoed_separability(sec4b_snapshot(0.501).pair, sec4b_snapshot(0.501).r0, 1.0)
              .separable !=
          echoed_separability(sec4b_snapshot(0.5).pair, sec4b_snapshot(0.5).r0, 1.0).separable);
    CHECK_THROWS_AS(sec4b_snapshot(-0.1), ValidationError);
    CHECK_THROWS_AS(sec4b_snapshot(1.1), ValidationError);
  }

  TEST_CASE("commuting families") {
    for (std::size_t n : {2, 3, 5}) {
      const Scenario s = commuting_family(n, 4, true);
      const auto& m = *s.model;
      CHECK(linalg::comm_norm(m.h_env(), m.v0()) < 1e-12);
      CHECK(linalg::comm_norm(m.h_env(), m.v1()) < 1e-12);
      CHECK(linalg::comm_norm(m.v0(), m.v1()) < 1e-12);
      for (double tau : {0.4, 1.9}) {
        const BranchPair w = evaluate(s.pair, tau);
        CHECK(linalg::comm_norm(w.w0.adjoint(), w.w1) < 1e-12);
        CHECK(std::abs(echoed_coherence(s.pair, s.r0, tau) - Complex(1.0)) < 1e-10);
      }
    }

    const Scenario nc = commuting_family(4, 9, false);
    CHECK(linalg::comm_norm(nc.model->h_env(), nc.model->v0()) < 1e-12);
    CHECK(linalg::comm_norm(nc.model->v0(), nc.model->v1()) > 1e-3);
    double worst = 1.0;
    for (double tau : {0.3, 0.8, 1.7}) {
      CHECK(prepulse_separability(nc.pair, nc.r0, tau).separable);
      worst = std::min(worst, std::abs(echoed_coherence(nc.pair, nc.r0, tau)));
    }
    CHECK(worst < 1.0 - 1e-6);

    const Scenario ent = commuting_family_entangling(3, 5);
    CHECK(linalg::comm_norm(ent.r0.matrix(), ent.model->v0() - ent.model->v1()) > 1e-3);
    const JointState j = joint_state(ent.pair, ent.amplitudes, ent.r0, 0.9);
    CHECK(negativity(j) > 1e-6);
    CHECK(std::abs(echoed_coherence(ent.pair, ent.r0, 0.9) - Complex(1.0)) < 1e-10);
    CHECK_THROWS_AS(commuting_family(1, 1, true), ValidationError);
  }

  TEST_CASE("random scenarios") {
    const Scenario a = random_scenario(3, 9, 0.5);
    const Scenario b = random_scenario(3, 9, 0.5);
    CHECK(max_abs_diff(a.model->v0(), b.model->v0()) == 0.0);
    CHECK(max_abs_diff(a.r0.matrix(), b.r0.matrix()) == 0.0);
    const Scenario free = random_scenario(4, 2, 0.0);
    for (double tau : {0.5, 2.0}) {
      CHECK(std::abs(echoed_coherence(free.pair, free.r0, tau) - Complex(1.0)) < 1e-12);
    }
    const Scenario small = random_scenario(2, 9, 1.0);
    const JointState j = joint_state(small.pair, small.amplitudes, small.r0, 1.3);
    CHECK(std::abs(j.s.trace() - Complex(1.0)) < 1e-12);
    CHECK(linalg::eig_hermitian(j.s).values.minCoeff() > -1e-10);
  }

  TEST_CASE("scenario lookup by name") {
    CHECK(make_scenario("fig1").name == "fig1");
    ScenarioOptions o;
    o.c0 = 0.3;
    CHECK(make_scenario("sec4b", o).r0.matrix()(0, 0).real() == doctest::Approx(0.3));
    CHECK(make_scenario("commuting").model.has_value());
    CHECK(make_scenario("random").model->env_dim() == 3);
    CHECK_THROWS_AS(make_scenario("bogus"), ValidationError);
  }

  TEST_CASE("spectral helper models") {
    const auto zx = sigma_zx_model(1.0);
    CHECK(max_abs_diff(zx.h_env, oracle::sz()) == 0.0);
    CHECK(max_abs_diff(zx.r0.matrix(), oracle::thermal(oracle::sz(), 1.0)) < 1e-14);
    const auto stat = static_model(1.0);
    CHECK(linalg::comm_norm(stat.h_env, stat.v) == 0.0);
    const auto comb = comb_model(4, 2.0, 1.0);
    CHECK(comb.h_env(3, 3).real() == doctest::Approx(3.0 * std::numbers::pi));
    const auto b = biased_model(zx, 0.2, -1.0);
    CHECK(b.v0().norm() == 0.0);
    CHECK(max_abs_diff(b.v1(), -0.2 * zx.v) < 1e-16);
  }
}
