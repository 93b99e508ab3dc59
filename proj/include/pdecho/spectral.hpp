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

// Second-order (weak coupling) description of the echo signal:
//
//   W(2 tau) ~ 1 - lambda^2 chi(2 tau) - i eta lambda^2 Phi(2 tau)
//
// for the biased coupling (1/2) lambda (eta - sigma_z) (x) V. With
// V(t) = e^{i H_E t} V e^{-i H_E t},
//
//   C(t1, t2) = Tr R {V(t1), V(t2)},   K(t1, t2) = -i theta(t1 - t2) Tr R [V(t1), V(t2)],
//   chi = 1/2 int_0^{2tau} dt1 int_0^{t1} dt2 f(t1) f(t2) C(t1, t2),
//   Phi = 1/2 int_0^{2tau} dt1 int_0^{t1} dt2 f(t1) K(t1, t2),
//
// and with S(w) = int e^{i w dt} C(dt) d(dt) for a stationary R,
//
//   chi = int 4 sin^4(w tau/2) / w^2 S(w) dw/2pi,
//   Phi = int 4 sin^4(w tau/2) / w^2 cot(w tau/2) tanh(beta w/2) S(w) dw/2pi   (thermal R).
//
// The prefactor 4 and the f(t1) weighting in Phi are the ones that reproduce the
// exact echo dynamics to O(lambda^3); see tests/test_spectral.cpp.

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pdecho/dynamics.hpp"

namespace pdecho {

/// One discrete line of the environment noise at Bohr frequency omega = E_m - E_n.
///   C(dt)              = sum_k weight_k   e^{-i omega_k dt}
///   Tr R [V(dt), V(0)] = sum_k response_k e^{-i omega_k dt}
/// so S(w) = sum_k 2 pi weight_k delta(w - omega_k).
struct BohrPeak {
  double omega;
  double weight;
  double response;
};

struct BohrSpectrum {
  std::vector<BohrPeak> peaks;  // sorted by omega, merged within 1e-9

  double correlation_at(double dt) const;
  /// K(dt) for dt > 0 (zero for dt < 0).
  double response_at(double dt) const;
};

inline constexpr double kBohrMergeTol = 1e-9;

/// Heisenberg-picture coupling V(t) for a fixed H_E, with R(0) in the same basis.
/// Evaluates C and K exactly through the eigendecomposition of H_E.
class HeisenbergCoupling {
 public:
  HeisenbergCoupling(const Matrix& h_env, const Matrix& v, const Matrix& r0);

  /// V(t) in the H_E eigenbasis.
  Matrix at(double t) const;
  double correlation(double t1, double t2) const;
  double response(double t1, double t2) const;
  /// E_max - E_min of H_E.
  double bandwidth() const { return bandwidth_; }

 private:
  linalg::RealVector energies_;
  Matrix v_;  // eigenbasis
  Matrix r_;  // eigenbasis
  double bandwidth_;
};

double correlation(const Matrix& h_env, const Matrix& v, const EnvDensity& r0, double t1,
                   double t2);
double response(const Matrix& h_env, const Matrix& v, const EnvDensity& r0, double t1,
                double t2);

/// Requires [R(0), H_E] = 0; throws HypothesisError otherwise.
BohrSpectrum bohr_spectrum(const Matrix& h_env, const Matrix& v, const EnvDensity& r0);

/// +1 on [0, tau), -1 on (tau, 2 tau], 0 elsewhere and at t = tau.
double echo_filter(double t, double tau);

/// 4 sin^4(w tau/2) / w^2, continuous at w = 0.
double chi_kernel(double omega, double tau);
/// 4 sin^3(w tau/2) cos(w tau/2) / w^2 (= chi_kernel * cot), continuous everywhere.
double phi_kernel(double omega, double tau);

double chi_echo(const BohrSpectrum& spectrum, double tau);
/// Thermal (fluctuation-dissipation) form: response_k -> weight_k tanh(beta omega_k / 2).
double phi_echo(const BohrSpectrum& spectrum, double tau, double beta);
/// Exact for any stationary R(0): uses the response weights directly.
double phi_echo_stationary(const BohrSpectrum& spectrum, double tau);

struct TimeQuadratureOptions {
  int nodes_per_panel = 20;
  /// Max phase advance (bandwidth * panel length) per Gauss-Legendre panel.
  double max_phase_per_panel = 2.0;
};

/// Direct double integrals over 0 < t2 < t1 < 2 tau; valid for non-stationary R too.
double chi_time_domain(const Matrix& h_env, const Matrix& v, const EnvDensity& r0, double tau,
                       const TimeQuadratureOptions& opts = {});
double phi_time_domain(const Matrix& h_env, const Matrix& v, const EnvDensity& r0, double tau,
                       const TimeQuadratureOptions& opts = {});

enum class PsdFamily { kOhmic, kLorentzian, kOneOverF };

/// Continuous, even PSDs:
///   ohmic:      amplitude |w| exp(-|w| / cutoff)
///   lorentzian: amplitude 2 width / (width^2 + w^2)      (C = amplitude e^{-width |dt|})
///   one_over_f: amplitude / |w| for low_cutoff <= |w| <= cutoff, else 0
struct AnalyticPsd {
  PsdFamily family;
  double amplitude;
  double cutoff;              // ohmic cutoff, 1/f upper cutoff
  double width = 0.0;         // lorentzian
  double low_cutoff = 0.0;    // 1/f infrared cutoff

  double operator()(double omega) const;
  void validate() const;
};

struct FrequencyQuadratureOptions {
  double tolerance = 1e-9;  // relative
  /// Upper integration limit; 0 selects one from the family and the tolerance.
  double omega_max = 0.0;
  unsigned max_depth = 12;
};

double chi_echo(const AnalyticPsd& psd, double tau, const FrequencyQuadratureOptions& opts = {});
double phi_echo(const AnalyticPsd& psd, double tau, double beta,
                const FrequencyQuadratureOptions& opts = {});

struct SecondOrderResult {
  double chi;
  double phi;
  double lambda;
  double eta;
  Complex w_approx;
};

/// W = 1 - lambda^2 chi - i eta lambda^2 phi
SecondOrderResult second_order_W(double lambda, double eta, double chi, double phi);
/// exp(-lambda^2 chi - i eta lambda^2 phi); exact only for Gaussian noise.
Complex gaussian_W(double lambda, double eta, double chi, double phi);

/// Recovers (V, eta) with V0 = (eta + 1) V / 2, V1 = (eta - 1) V / 2 (lambda = 1),
/// i.e. V = V0 - V1. Empty when the model is not of this form.
struct BiasedForm {
  Matrix v;
  double eta;
};
std::optional<BiasedForm> recover_biased_form(const PureDephasingModel& model);

struct WitnessResult {
  bool certified;
  std::vector<double> taus;
  std::vector<double> phi;
  double max_abs_phi;
  double threshold;
  double v1_r0_commutator;
  /// certified implies [V1, R(0)] != 0
  bool consistent;
};

/// Echo phase-shift witness for V0 = 0 and stationary R(0). Phi is computed for
/// V := V1 (lambda and the sign of V absorbed), exactly over the Bohr lines.
/// Throws HypothesisError when V0 != 0 or [R(0), H_E] != 0.
WitnessResult witness(const PureDephasingModel& model, const EnvDensity& r0,
                      std::span<const double> tau_grid, double threshold = 1e-10);

}  // namespace pdecho
