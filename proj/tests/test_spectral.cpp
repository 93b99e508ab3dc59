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
#include <random>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "oracles.hpp"
#include "pdecho/errors.hpp"
#include "pdecho/scenarios.hpp"
#include "pdecho/spectral.hpp"

using namespace pdecho;
using std::numbers::pi;

namespace {

const Matrix kZ = linalg::pauli::z();
const Matrix kX = linalg::pauli::x();

double lorentzian_chi_oracle(double a, double gamma, double tau) {
  const auto c = [&](double t1, double t2) { return a * std::exp(-gamma * std::abs(t1 - t2)); };
  return 0.5 * (oracle::triangle(c, 0.0, tau) + oracle::triangle(c, tau, 2.0 * tau) -
                oracle::rectangle(c, tau, 2.0 * tau, 0.0, tau));
}

/// C(dt) for S = a |w| e^{-|w|/wc}: (a/pi) (wc^-2 - dt^2) / (wc^-2 + dt^2)^2.
double ohmic_chi_oracle(double a, double wc, double tau) {
  const auto c = [&](double t1, double t2) {
    const double d = t1 - t2;
    const double s = 1.0 / (wc * wc);
    return a / pi * (s - d * d) / ((s + d * d) * (s + d * d));
  };
  return 0.5 * (oracle::triangle(c, 0.0, tau) + oracle::triangle(c, tau, 2.0 * tau) -
                oracle::rectangle(c, tau, 2.0 * tau, 0.0, tau));
}

}  // namespace

TEST_SUITE("spectral") {
  TEST_CASE("correlation function") {
    const auto mixed = EnvDensity::maximally_mixed(2);
    for (double t : {0.0, 0.4, 2.9}) {
      CHECK(correlation(kZ, Matrix::Identity(2, 2), mixed, t, 0.3) == doctest::Approx(2.0));
      CHECK(correlation(kZ, kX, mixed, t, 0.0) ==
            doctest::Approx(2.0 * std::cos(2.0 * t)).epsilon(1e-14));
    }
    const auto thermal = EnvDensity::thermal(kZ, 0.7);
    const double c0 = correlation(kZ, kZ, thermal, 0.0, 0.0);
    CHECK(correlation(kZ, kZ, thermal, 3.1, 1.2) == doctest::Approx(c0));

    std::mt19937_64 rng(12);
    const Matrix h = random_hermitian(4, rng, 1.0);
    const Matrix v = random_hermitian(4, rng, 1.0);
    const auto r = EnvDensity::random_full_rank(4, 3);
    CHECK(correlation(h, v, r, 0.7, -0.2) ==
          doctest::Approx(oracle::correlation(h, v, r.matrix(), 0.7, -0.2)).epsilon(1e-12));
    CHECK(response(h, v, r, 0.7, -0.2) ==
          doctest::Approx(oracle::response(h, v, r.matrix(), 0.7, -0.2)).epsilon(1e-12));
    CHECK_THROWS_AS(correlation(h, kX, r, 0.0, 0.0), ValidationError);
  }

  TEST_CASE("response function") {
    std::mt19937_64 rng(13);
    const Matrix h = random_hermitian(3, rng, 1.0);
    const Matrix v = random_hermitian(3, rng, 1.0);
    CHECK(std::abs(response(h, v, EnvDensity::maximally_mixed(3), 1.3, 0.2)) < 1e-14);
    CHECK(response(h, v, EnvDensity::random_full_rank(3, 1), 0.2, 1.3) == 0.0);
    const auto thermal = EnvDensity::thermal(kZ, 1.0);
    for (double d : {0.1, 0.6, 2.0}) {
      const double expected = -2.0 * std::tanh(1.0) * std::sin(2.0 * d);
      CHECK(response(kZ, kX, thermal, d, 0.0) == doctest::Approx(expected).epsilon(1e-14));
      CHECK(oracle::response(kZ, kX, thermal.matrix(), d, 0.0) ==
            doctest::Approx(expected).epsilon(1e-12));
    }
  }

  TEST_CASE("Bohr spectrum") {
    const auto stat = static_model(1.0);
    const auto s0 = bohr_spectrum(stat.h_env, stat.v, stat.r0);
    REQUIRE(s0.peaks.size() == 1);
    CHECK(s0.peaks[0].omega == 0.0);

    const auto zx = bohr_spectrum(kZ, kX, EnvDensity::maximally_mixed(2));
    REQUIRE(zx.peaks.size() == 2);
    CHECK(zx.peaks[0].omega == doctest::Approx(-2.0));
    CHECK(zx.peaks[1].omega == doctest::Approx(2.0));
    CHECK(zx.peaks[0].weight == doctest::Approx(1.0));
    CHECK(zx.peaks[1].weight == doctest::Approx(1.0));
    CHECK(std::abs(zx.peaks[0].response) < 1e-15);

    for (std::uint64_t seed : {1, 2, 3}) {
      const auto m = random_spectral_model(5, seed, 0.8);
      const auto spec = bohr_spectrum(m.h_env, m.v, m.r0);
      for (const auto& p : spec.peaks) CHECK(p.weight >= 0.0);
      for (double d : {0.0, 0.37, 1.9, 7.0}) {
        CHECK(std::abs(spec.correlation_at(d) - correlation(m.h_env, m.v, m.r0, d, 0.0)) < 1e-10);
        CHECK(std::abs(spec.response_at(d) - response(m.h_env, m.v, m.r0, d, 0.0)) < 1e-10);
      }
    }
    CHECK_THROWS_AS(bohr_spectrum(kZ, kX, EnvDensity::random_full_rank(2, 4)), HypothesisError);
  }

  TEST_CASE("degenerate lines are merged") {
    const auto comb = comb_model(6, 1.0, 0.5);
    const auto spec = bohr_spectrum(comb.h_env, comb.v, comb.r0);
    CHECK(spec.peaks.size() == 2);  // nearest-neighbour hopping: +-w only
    for (std::size_t i = 1; i < spec.peaks.size(); ++i) {
      CHECK(spec.peaks[i].omega - spec.peaks[i - 1].omega > kBohrMergeTol);
    }
  }

  TEST_CASE("echo filter") {
    CHECK(echo_filter(0.5, 1.0) == 1.0);
    CHECK(echo_filter(1.5, 1.0) == -1.0);
    CHECK(echo_filter(-1.0, 1.0) == 0.0);
    CHECK(echo_filter(1.0, 1.0) == 0.0);
    CHECK(echo_filter(0.0, 1.0) == 1.0);
    CHECK(echo_filter(2.0, 1.0) == -1.0);
    CHECK(echo_filter(2.5, 1.0) == 0.0);
    CHECK_THROWS_AS(echo_filter(0.5, 0.0), ValidationError);
  }

  TEST_CASE("kernels and their limits") {
    CHECK(chi_kernel(0.0, 1.3) == 0.0);
    CHECK(chi_kernel(1e-6, 1.3) == doctest::Approx(1e-12 * std::pow(1.3, 4) / 4.0).epsilon(1e-9));
    CHECK(phi_kernel(0.0, 1.3) == 0.0);
    for (int k = 1; k <= 3; ++k) {
      const double w = 2.0 * pi * k / 1.3;  // omega tau / 2 = k pi
      CHECK(std::isfinite(phi_kernel(w, 1.3)));
      CHECK(std::abs(phi_kernel(w, 1.3)) < 1e-14);
      CHECK(std::abs(phi_kernel(w * (1 + 1e-9), 1.3)) < 1e-8);
    }
    const double w = 0.9;
    const double tau = 2.2;
    const double x = w * tau / 2;
    CHECK(chi_kernel(w, tau) == doctest::Approx(4 * std::pow(std::sin(x), 4) / (w * w)));
    CHECK(phi_kernel(w, tau) ==
          doctest::Approx(4 * std::pow(std::sin(x), 3) * std::cos(x) / (w * w)));
    CHECK(chi_kernel(-w, tau) == chi_kernel(w, tau));
    CHECK(phi_kernel(-w, tau) == -phi_kernel(w, tau));
  }

  TEST_CASE("attenuation from Bohr lines") {
    const BohrSpectrum dc{{{0.0, 3.0, 0.0}}};
    for (double tau : {0.1, 1.0, 10.0}) CHECK(chi_echo(dc, tau) == 0.0);

    BohrSpectrum single{{{2.0, 0.7, 0.0}}};
    CHECK(chi_echo(single, pi / 2) == doctest::Approx(0.7).epsilon(1e-14));

    const auto comb = comb_model(5, 1.3, 0.4);
    const auto spec = bohr_spectrum(comb.h_env, comb.v, comb.r0);
    CHECK(chi_echo(spec, 1.3) < 1e-10);
    CHECK(chi_echo(spec, 0.9) > 1e-3);
    for (double tau = 0.0; tau < 5.0; tau += 0.07) CHECK(chi_echo(spec, tau) >= 0.0);
  }

  TEST_CASE("phase shift from Bohr lines") {
    const auto zx = sigma_zx_model(1.0);
    const auto spec = bohr_spectrum(zx.h_env, zx.v, zx.r0);
    const double tau = pi / 4;
    CHECK(phi_echo(spec, tau, 1.0) == doctest::Approx(std::tanh(1.0) / 2.0).epsilon(1e-14));
    CHECK(phi_echo_stationary(spec, tau) == doctest::Approx(std::tanh(1.0) / 2.0).epsilon(1e-14));
    CHECK(phi_time_domain(zx.h_env, zx.v, zx.r0, tau) ==
          doctest::Approx(oracle::phi_time(zx.h_env, zx.v, zx.r0.matrix(), tau)).epsilon(1e-10));
    CHECK(phi_echo(spec, tau, 0.0) == 0.0);

    const auto hot = sigma_zx_model(0.0);
    const auto hot_spec = bohr_spectrum(hot.h_env, hot.v, hot.r0);
    for (double t = 0.1; t < 4.0; t += 0.3) CHECK(std::abs(phi_echo_stationary(hot_spec, t)) < 1e-15);

    // [V, R] = 0 with V not commuting with H_E is impossible for thermal R unless
    // trivial; use a static coupling instead.
    const auto stat = static_model(2.0);
    const auto stat_spec = bohr_spectrum(stat.h_env, stat.v, stat.r0);
    for (double t = 0.1; t < 4.0; t += 0.3) CHECK(std::abs(phi_echo_stationary(stat_spec, t)) < 1e-15);
    CHECK_THROWS_AS(phi_echo(spec, tau, -1.0), ValidationError);
  }

  TEST_CASE("time and frequency domains agree") {
    std::vector<SpectralModel> models{sigma_zx_model(0.6), comb_model(4, 1.7, 0.3),
                                      random_spectral_model(4, 77, 1.2)};
    for (const auto& m : models) {
      const auto spec = bohr_spectrum(m.h_env, m.v, m.r0);
      for (double tau : {0.3, 1.1, 2.6}) {
        CHECK(std::abs(chi_time_domain(m.h_env, m.v, m.r0, tau) - chi_echo(spec, tau)) < 1e-8);
        CHECK(std::abs(phi_time_domain(m.h_env, m.v, m.r0, tau) -
                       phi_echo(spec, tau, m.r0.beta())) < 1e-8);
      }
    }
  }

  TEST_CASE("time-domain integrals against adaptive quadrature") {
    std::mt19937_64 rng(31);
    const Matrix h = random_hermitian(2, rng, 1.0);
    const Matrix v = random_hermitian(2, rng, 1.0);
    const auto r = EnvDensity::random_full_rank(2, 6);  // not stationary
    const double tau = 0.8;
    CHECK(chi_time_domain(h, v, r, tau) ==
          doctest::Approx(oracle::chi_time(h, v, r.matrix(), tau)).epsilon(1e-9));
    CHECK(phi_time_domain(h, v, r, tau) ==
          doctest::Approx(oracle::phi_time(h, v, r.matrix(), tau)).epsilon(1e-9));
  }

  TEST_CASE("second-order coherence") {
    CHECK(second_order_W(0.0, -1.0, 2.0, 0.5).w_approx == Complex(1.0));
    CHECK(second_order_W(0.3, 0.0, 2.0, 0.5).w_approx.imag() == 0.0);
    const auto r = second_order_W(0.1, -1.0, 2.0, 0.5);
    CHECK(r.w_approx.real() == doctest::Approx(0.98).epsilon(1e-15));
    CHECK(r.w_approx.imag() == doctest::Approx(0.005).epsilon(1e-15));
    CHECK_THROWS_AS(second_order_W(0.1, 0.0, -1.0, 0.0), ValidationError);
    const Complex g = gaussian_W(0.1, -1.0, 2.0, 0.5);
    CHECK(std::abs(g - std::exp(Complex(-0.02, 0.005))) < 1e-15);
  }

  TEST_CASE("second-order expansion tracks the exact echo") {
    const auto m = sigma_zx_model(1.0);
    const auto spec = bohr_spectrum(m.h_env, m.v, m.r0);
    const double tau = 0.7;
    const double chi = chi_echo(spec, tau);
    const double phi = phi_echo(spec, tau, 1.0);
    std::vector<double> lambdas;
    std::vector<double> errors;
    for (double lambda : {1e-3, 3e-3, 1e-2, 3e-2, 1e-1}) {
      const auto model = biased_model(m, lambda, -1.0);
      const Complex exact =
          oracle::echo_coherence(model.h_env(), model.v0(), model.v1(), m.r0.matrix(), tau);
      const Complex approx = second_order_W(lambda, -1.0, chi, phi).w_approx;
      lambdas.push_back(lambda);
      errors.push_back(std::abs(exact - approx));
    }
    CHECK(oracle::loglog_slope(lambdas, errors) > 3.5);
  }

  TEST_CASE("analytic spectral densities") {
    const AnalyticPsd lor{PsdFamily::kLorentzian, 0.8, 0.0, 1.5};
    for (double tau : {0.4, 1.3}) {
      CHECK(chi_echo(lor, tau) ==
            doctest::Approx(lorentzian_chi_oracle(0.8, 1.5, tau)).epsilon(1e-8));
    }
    const AnalyticPsd ohm{PsdFamily::kOhmic, 0.5, 2.0};
    CHECK(chi_echo(ohm, 0.9) == doctest::Approx(ohmic_chi_oracle(0.5, 2.0, 0.9)).epsilon(1e-8));
    CHECK(phi_echo(ohm, 0.9, 0.0) == 0.0);

    // 1/f against an independent tanh-sinh evaluation of the same integral.
    const AnalyticPsd pink{PsdFamily::kOneOverF, 1.0, 40.0, 0.0, 0.01};
    boost::math::quadrature::tanh_sinh<double> ts;
    const double tau = 1.1;
    const double ref =
        ts.integrate([&](double w) { return chi_kernel(w, tau) / w; }, 0.01, 40.0) / pi;
    CHECK(chi_echo(pink, tau) == doctest::Approx(ref).epsilon(1e-8));
    const double ref_phi =
        ts.integrate([&](double w) { return phi_kernel(w, tau) * std::tanh(w) / w; }, 0.01,
                     40.0) /
        pi;
    CHECK(phi_echo(pink, tau, 2.0) == doctest::Approx(ref_phi).epsilon(1e-8));

    for (double w : {-3.0, 0.0, 0.5, 100.0}) {
      CHECK(lor(w) >= 0.0);
      CHECK(ohm(w) >= 0.0);
      CHECK(pink(w) >= 0.0);
    }
    CHECK_THROWS_AS(chi_echo(AnalyticPsd{PsdFamily::kOhmic, 1.0, -1.0}, 1.0), ValidationError);
    FrequencyQuadratureOptions tight;
    tight.omega_max = 1.0;
    try {
      chi_echo(lor, 1.0, tight);
      FAIL("expected a quadrature failure");
    } catch (const QuadratureError& e) {
      CHECK(e.error_estimate() > e.tolerance());
    }
  }

  TEST_CASE("recovering the biased form") {
    const auto m = sigma_zx_model(1.0);
    for (double eta : {-1.0, 0.0, 0.4}) {
      const auto form = recover_biased_form(biased_model(m, 1.0, eta));
      REQUIRE(form.has_value());
      CHECK(form->eta == doctest::Approx(eta));
      CHECK(linalg::max_abs_diff(form->v, m.v) < 1e-15);
    }
    const auto rm = random_model(3, 2, 1.0);
    CHECK_FALSE(recover_biased_form(rm).has_value());
  }

  TEST_CASE("witness") {
    const auto grid = std::vector<double>{0.3, 0.8, 1.4, 2.2};
    const auto zx = sigma_zx_model(1.0);
    const auto w = witness(biased_model(zx, 1.0, -1.0), zx.r0, grid);
    CHECK(w.certified);
    CHECK(w.consistent);
    CHECK(w.phi.size() == grid.size());
    CHECK(w.v1_r0_commutator > 1e-3);

    const auto mixed = witness(biased_model(zx, 1.0, -1.0), EnvDensity::maximally_mixed(2), grid);
    CHECK_FALSE(mixed.certified);
    CHECK(mixed.max_abs_phi < 1e-10);

    const auto hot = sigma_zx_model(0.0);
    CHECK_FALSE(witness(biased_model(hot, 1.0, -1.0), hot.r0, grid).certified);

    const auto stat = static_model(1.0);
    const auto ws = witness(biased_model(stat, 1.0, -1.0), stat.r0, grid);
    CHECK_FALSE(ws.certified);
    CHECK(ws.v1_r0_commutator < 1e-12);

    CHECK_THROWS_AS(witness(biased_model(zx, 1.0, 0.0), zx.r0, grid), HypothesisError);
    CHECK_THROWS_AS(witness(biased_model(zx, 1.0, -1.0), EnvDensity::random_full_rank(2, 1), grid),
                    HypothesisError);
    CHECK_THROWS_AS(witness(biased_model(zx, 1.0, -1.0), zx.r0, std::vector<double>{}),
                    ValidationError);
  }
}
