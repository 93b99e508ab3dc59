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

#include "pdecho/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/sinc.hpp>

#include "pdecho/errors.hpp"

namespace pdecho {

namespace {

constexpr int kGaussNodes = 20;
constexpr double kNegativeWeightTol = 1e-10;

void require_operands(const Matrix& h, const Matrix& v, const Matrix& r) {
  linalg::require_hermitian(h, "H_E");
  linalg::require_hermitian(v, "V");
  linalg::require_same_shape(h, v, "H_E and V");
  linalg::require_same_shape(h, r, "H_E and R(0)");
}

void require_tau(double tau) {
  if (!std::isfinite(tau) || tau < 0.0) throw ValidationError("tau must be finite and >= 0");
}

void require_beta(double beta) {
  if (std::isnan(beta) || beta < 0.0) throw ValidationError("beta must be >= 0 (or inf)");
}

/// tanh(beta w / 2), with the beta = inf, w = 0 corner defined as 0.
double thermal_factor(double omega, double beta) {
  if (omega == 0.0 || beta == 0.0) return 0.0;
  if (std::isinf(beta)) return omega > 0.0 ? 1.0 : -1.0;
  return std::tanh(0.5 * beta * omega);
}

// Gauss-Legendre nodes/weights on [-1, 1].
struct Rule {
  std::vector<double> x;
  std::vector<double> w;
};

const Rule& gauss_rule() {
  static const Rule rule = [] {
    using G = boost::math::quadrature::gauss<double, kGaussNodes>;
    Rule r;
    const auto& abscissa = G::abscissa();
    const auto& weights = G::weights();
    // Boost stores the non-negative half; the odd count includes 0.
    for (std::size_t i = 0; i < abscissa.size(); ++i) {
      r.x.push_back(abscissa[i]);
      r.w.push_back(weights[i]);
      if (abscissa[i] != 0.0) {
        r.x.push_back(-abscissa[i]);
        r.w.push_back(weights[i]);
      }
    }
    return r;
  }();
  return rule;
}

/// Composite Gauss-Legendre nodes on [a, b] with `panels` equal panels.
void composite_nodes(double a, double b, int panels, std::vector<double>& x,
                     std::vector<double>& w) {
  x.clear();
  w.clear();
  const Rule& rule = gauss_rule();
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (std::size_t k = 0; k < rule.x.size(); ++k) {
      x.push_back(mid + 0.5 * h * rule.x[k]);
      w.push_back(0.5 * h * rule.w[k]);
    }
  }
}

int panel_count(double bandwidth, double length, const TimeQuadratureOptions& opts) {
  if (!(opts.max_phase_per_panel > 0.0)) {
    throw ValidationError("max_phase_per_panel must be positive");
  }
  const double phase = bandwidth * length;
  return std::max(1, static_cast<int>(std::ceil(phase / opts.max_phase_per_panel)));
}

enum class Quantity { kChi, kPhi };

/// 1/2 int int_{0 < t2 < t1 < 2 tau} g(t1, t2), split at tau where f jumps.
double time_domain(const Matrix& h_env, const Matrix& v, const EnvDensity& r0, double tau,
                   const TimeQuadratureOptions& opts, Quantity q) {
  require_tau(tau);
  const HeisenbergCoupling hc(h_env, v, r0.matrix());
  const int panels = panel_count(hc.bandwidth(), tau, opts);

  std::vector<double> xs;
  std::vector<double> ws;
  composite_nodes(0.0, 1.0, panels, xs, ws);  // reused, scaled per interval

  const auto value = [&](double t1, double t2) {
    return q == Quantity::kChi ? hc.correlation(t1, t2) : hc.response(t1, t2);
  };
  // f(t1) f(t2) for chi, f(t1) for phi, on each region.
  const double sign_a = 1.0;
  const double sign_b = -1.0;
  const double sign_c = q == Quantity::kChi ? 1.0 : -1.0;

  double total = 0.0;
  // Region A: 0 < t2 < t1 < tau; region C: tau < t2 < t1 < 2 tau (triangles, t2 = lo + (t1 - lo) s).
  for (const auto& [lo, sign] : {std::pair{0.0, sign_a}, std::pair{tau, sign_c}}) {
    double acc = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double t1 = lo + tau * xs[i];
      const double len = t1 - lo;
      double inner = 0.0;
      for (std::size_t j = 0; j < xs.size(); ++j) inner += ws[j] * value(t1, lo + len * xs[j]);
      acc += tau * ws[i] * len * inner;
    }
    total += sign * acc;
  }
  // Region B: tau < t1 < 2 tau, 0 < t2 < tau.
  double acc = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double t1 = tau + tau * xs[i];
    double inner = 0.0;
    for (std::size_t j = 0; j < xs.size(); ++j) inner += ws[j] * value(t1, tau * xs[j]);
    acc += tau * ws[i] * tau * inner;
  }
  total += sign_b * acc;
  return 0.5 * total;
}

double tail_bound(const AnalyticPsd& psd, double omega_max) {
  // |kernel| <= 4 / w^2; integrate kernel bound * S over (omega_max, inf).
  const double a = psd.amplitude;
  switch (psd.family) {
    case PsdFamily::kOhmic:
      return 4.0 * a * psd.cutoff * std::exp(-omega_max / psd.cutoff) / omega_max;
    case PsdFamily::kLorentzian:
      return 8.0 * a * psd.width / (3.0 * std::pow(omega_max, 3));
    case PsdFamily::kOneOverF:
      return omega_max >= psd.cutoff ? 0.0 : kInfiniteBeta;
  }
  return kInfiniteBeta;
}

double default_omega_max(const AnalyticPsd& psd, double tau) {
  switch (psd.family) {
    case PsdFamily::kOhmic:
      return 50.0 * psd.cutoff;
    case PsdFamily::kLorentzian:
      return 50.0 * std::max(psd.width, 1.0 / tau);
    case PsdFamily::kOneOverF:
      return psd.cutoff;
  }
  return 1.0;
}

constexpr int kMaxRangeDoublings = 16;

/// (1/pi) int_lo^omega_max kernel(w) S(w) dw, panel-wise adaptive Gauss-Kronrod.
/// With an automatic omega_max the range doubles until the tail bound is met.
template <typename Kernel>
double frequency_integral(const AnalyticPsd& psd, double tau, Kernel kernel,
                          const FrequencyQuadratureOptions& opts) {
  psd.validate();
  require_tau(tau);
  if (!(opts.tolerance > 0.0)) throw ValidationError("quadrature tolerance must be positive");
  if (tau == 0.0) return 0.0;
  const bool automatic = !(opts.omega_max > 0.0);
  double omega_max = automatic ? default_omega_max(psd, tau) : opts.omega_max;
  if (psd.family == PsdFamily::kOneOverF) omega_max = std::min(omega_max, psd.cutoff);

  const auto integrand = [&](double w) { return kernel(w) * psd(w); };
  const double period = 2.0 * std::numbers::pi / tau;
  double total = 0.0;
  double l1 = 0.0;
  double error = 0.0;
  double a = psd.family == PsdFamily::kOneOverF ? psd.low_cutoff : 0.0;
  for (int doubling = 0;; ++doubling) {
    for (; a < omega_max;) {
      const double b = std::min(omega_max, a + period);
      double err = 0.0;
      double panel_l1 = 0.0;
      total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
          integrand, a, b, opts.max_depth, opts.tolerance, &err, &panel_l1);
      error += err;
      l1 += panel_l1;
      a = b;
    }
    const double tolerance = opts.tolerance * std::max(l1, 1e-300);
    const double tail = tail_bound(psd, omega_max);
    if (error <= tolerance && tail <= tolerance) break;
    if (!automatic || !(error <= tolerance) || doubling == kMaxRangeDoublings) {
      std::ostringstream os;
      os << "frequency quadrature did not converge: panel error " << error / std::numbers::pi
         << ", tail bound " << tail / std::numbers::pi << ", omega_max " << omega_max
         << "; raise omega_max or the tolerance";
      throw QuadratureError(os.str(), (error + tail) / std::numbers::pi,
                            tolerance / std::numbers::pi);
    }
    omega_max *= 2.0;
  }
  return total / std::numbers::pi;
}

}  // namespace

// ---------------------------------------------------------------------------

double BohrSpectrum::correlation_at(double dt) const {
  double c = 0.0;
  for (const auto& p : peaks) c += p.weight * std::cos(p.omega * dt);
  return c;
}

double BohrSpectrum::response_at(double dt) const {
  if (dt < 0.0) return 0.0;
  double k = 0.0;
  for (const auto& p : peaks) k -= p.response * std::sin(p.omega * dt);
  return k;
}

HeisenbergCoupling::HeisenbergCoupling(const Matrix& h_env, const Matrix& v, const Matrix& r0) {
  require_operands(h_env, v, r0);
  const auto eig = linalg::eig_hermitian(h_env);
  energies_ = eig.values;
  v_ = eig.vectors.adjoint() * v * eig.vectors;
  r_ = eig.vectors.adjoint() * r0 * eig.vectors;
  bandwidth_ = energies_.size() ? energies_.maxCoeff() - energies_.minCoeff() : 0.0;
}

Matrix HeisenbergCoupling::at(double t) const {
  const Index n = v_.rows();
  Matrix out(n, n);
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      out(a, b) = std::polar(1.0, (energies_(a) - energies_(b)) * t) * v_(a, b);
    }
  }
  return out;
}

// Tr R V(t1) V(t2) = z; C = 2 Re z and Tr R [V(t1), V(t2)] = 2 i Im z.
double HeisenbergCoupling::correlation(double t1, double t2) const {
  const Matrix rv1 = r_ * at(t1);
  const Matrix v2 = at(t2);
  return 2.0 * (rv1.cwiseProduct(v2.transpose())).sum().real();
}

double HeisenbergCoupling::response(double t1, double t2) const {
  if (t1 < t2) return 0.0;
  const Matrix rv1 = r_ * at(t1);
  const Matrix v2 = at(t2);
  return 2.0 * (rv1.cwiseProduct(v2.transpose())).sum().imag();
}

double correlation(const Matrix& h_env, const Matrix& v, const EnvDensity& r0, double t1,
                   double t2) {
  return HeisenbergCoupling(h_env, v, r0.matrix()).correlation(t1, t2);
}

double response(const Matrix& h_env, const Matrix& v, const EnvDensity& r0, double t1,
                double t2) {
  return HeisenbergCoupling(h_env, v, r0.matrix()).response(t1, t2);
}

BohrSpectrum bohr_spectrum(const Matrix& h_env, const Matrix& v, const EnvDensity& r0) {
  require_operands(h_env, v, r0.matrix());
  if (!linalg::commutes(r0.matrix(), h_env)) {
    std::ostringstream os;
    os << "R(0) is not stationary: ||[R(0), H_E]||_F = " << linalg::comm_norm(r0.matrix(), h_env)
       << "; the Bohr-line (frequency-domain) path needs [R(0), H_E] = 0, use the time-domain "
          "integrals instead";
    throw HypothesisError(os.str());
  }
  const auto eig = linalg::eig_hermitian(h_env);
  const Matrix vb = eig.vectors.adjoint() * v * eig.vectors;
  const Matrix rb = eig.vectors.adjoint() * r0.matrix() * eig.vectors;
  const Matrix anti = vb * rb + rb * vb;
  const Matrix comm = vb * rb - rb * vb;

  struct Line {
    double omega;
    Complex weight;
    Complex response;
  };
  std::vector<Line> lines;
  const Index n = vb.rows();
  for (Index a = 0; a < n; ++a) {
    for (Index b = 0; b < n; ++b) {
      const Complex w = vb(a, b) * anti(b, a);
      const Complex k = vb(a, b) * comm(b, a);
      if (w == Complex{} && k == Complex{}) continue;
      lines.push_back({eig.values(b) - eig.values(a), w, k});
    }
  }
  std::sort(lines.begin(), lines.end(),
            [](const Line& x, const Line& y) { return x.omega < y.omega; });

  const double scale = v.squaredNorm() + 1e-300;
  BohrSpectrum out;
  for (std::size_t i = 0; i < lines.size();) {
    std::size_t j = i;
    double omega_sum = 0.0;
    Complex w{};
    Complex k{};
    while (j < lines.size() && lines[j].omega - lines[i].omega <= kBohrMergeTol) {
      omega_sum += lines[j].omega;
      w += lines[j].weight;
      k += lines[j].response;
      ++j;
    }
    double omega = omega_sum / static_cast<double>(j - i);
    if (std::abs(omega) <= kBohrMergeTol) omega = 0.0;
    if (std::abs(w.imag()) > kNegativeWeightTol * scale || w.real() < -kNegativeWeightTol * scale) {
      std::ostringstream os;
      os << "Bohr line at omega = " << omega << " has weight " << w.real() << " + "
         << w.imag() << "i; expected a non-negative real";
      throw NumericalError(os.str());
    }
    out.peaks.push_back({omega, std::max(0.0, w.real()), omega == 0.0 ? 0.0 : k.real()});
    i = j;
  }
  return out;
}

double echo_filter(double t, double tau) {
  if (!std::isfinite(tau) || !(tau > 0.0)) throw ValidationError("tau must be finite and > 0");
  if (t >= 0.0 && t < tau) return 1.0;
  if (t > tau && t <= 2.0 * tau) return -1.0;
  return 0.0;
}

// 4 sin^2(x) (sin x / w)^2 with sin x / w = (tau/2) sinc(x), x = w tau / 2.
double chi_kernel(double omega, double tau) {
  const double x = 0.5 * omega * tau;
  const double s = std::sin(x);
  const double sinc = boost::math::sinc_pi(x);
  return tau * tau * sinc * sinc * s * s;
}

double phi_kernel(double omega, double tau) {
  const double x = 0.5 * omega * tau;
  const double sinc = boost::math::sinc_pi(x);
  return tau * tau * sinc * sinc * std::sin(x) * std::cos(x);
}

double chi_echo(const BohrSpectrum& spectrum, double tau) {
  require_tau(tau);
  double chi = 0.0;
  for (const auto& p : spectrum.peaks) chi += p.weight * chi_kernel(p.omega, tau);
  return chi;
}

double phi_echo(const BohrSpectrum& spectrum, double tau, double beta) {
  require_tau(tau);
  require_beta(beta);
  double phi = 0.0;
  for (const auto& p : spectrum.peaks) {
    phi += p.weight * thermal_factor(p.omega, beta) * phi_kernel(p.omega, tau);
  }
  return phi;
}

double phi_echo_stationary(const BohrSpectrum& spectrum, double tau) {
  require_tau(tau);
  double phi = 0.0;
  for (const auto& p : spectrum.peaks) phi += p.response * phi_kernel(p.omega, tau);
  return phi;
}

double chi_time_domain(const Matrix& h_env, const Matrix& v, const EnvDensity& r0, double tau,
                       const TimeQuadratureOptions& opts) {
  return time_domain(h_env, v, r0, tau, opts, Quantity::kChi);
}

double phi_time_domain(const Matrix& h_env, const Matrix& v, const EnvDensity& r0, double tau,
                       const TimeQuadratureOptions& opts) {
  return time_domain(h_env, v, r0, tau, opts, Quantity::kPhi);
}

double AnalyticPsd::operator()(double omega) const {
  const double w = std::abs(omega);
  switch (family) {
    case PsdFamily::kOhmic:
      return amplitude * w * std::exp(-w / cutoff);
    case PsdFamily::kLorentzian:
      return amplitude * 2.0 * width / (width * width + w * w);
    case PsdFamily::kOneOverF:
      return (w >= low_cutoff && w <= cutoff && w > 0.0) ? amplitude / w : 0.0;
  }
  return 0.0;
}

void AnalyticPsd::validate() const {
  if (!std::isfinite(amplitude) || amplitude < 0.0) {
    throw ValidationError("PSD amplitude must be finite and >= 0");
  }
  switch (family) {
    case PsdFamily::kOhmic:
      if (!std::isfinite(cutoff) || !(cutoff > 0.0)) {
        throw ValidationError("ohmic PSD needs a finite cutoff > 0");
      }
      break;
    case PsdFamily::kLorentzian:
      if (!std::isfinite(width) || !(width > 0.0)) {
        throw ValidationError("lorentzian PSD needs a finite width > 0");
      }
      break;
    case PsdFamily::kOneOverF:
      if (!std::isfinite(cutoff) || !(cutoff > 0.0) || !std::isfinite(low_cutoff) ||
          low_cutoff < 0.0 || !(low_cutoff < cutoff)) {
        throw ValidationError("1/f PSD needs 0 <= low_cutoff < cutoff < inf");
      }
      break;
  }
}

double chi_echo(const AnalyticPsd& psd, double tau, const FrequencyQuadratureOptions& opts) {
  return frequency_integral(psd, tau, [tau](double w) { return chi_kernel(w, tau); }, opts);
}

double phi_echo(const AnalyticPsd& psd, double tau, double beta,
                const FrequencyQuadratureOptions& opts) {
  require_beta(beta);
  if (beta == 0.0) return 0.0;
  return frequency_integral(
      psd, tau, [tau, beta](double w) { return phi_kernel(w, tau) * thermal_factor(w, beta); },
      opts);
}

SecondOrderResult second_order_W(double lambda, double eta, double chi, double phi) {
  if (!std::isfinite(lambda) || !std::isfinite(eta) || !std::isfinite(chi) ||
      !std::isfinite(phi)) {
    throw ValidationError("second_order_W: non-finite input");
  }
  if (chi < -1e-12) throw ValidationError("second_order_W: chi must be >= 0");
  const double l2 = lambda * lambda;
  return {chi, phi, lambda, eta, Complex{1.0 - l2 * chi, -eta * l2 * phi}};
}

Complex gaussian_W(double lambda, double eta, double chi, double phi) {
  const double l2 = lambda * lambda;
  return std::exp(Complex{-l2 * chi, -eta * l2 * phi});
}

std::optional<BiasedForm> recover_biased_form(const PureDephasingModel& model) {
  const Matrix v = model.v0() - model.v1();
  const Matrix sum = model.v0() + model.v1();
  const double vv = v.squaredNorm();
  if (vv == 0.0) return std::nullopt;
  const double eta = (v.adjoint() * sum).trace().real() / vv;
  const double residual = (sum - eta * v).norm();
  if (residual > linalg::kCommuteRelTol * (sum.norm() + v.norm() + 1.0)) return std::nullopt;
  return BiasedForm{v, eta};
}

WitnessResult witness(const PureDephasingModel& model, const EnvDensity& r0,
                      std::span<const double> tau_grid, double threshold) {
  if (tau_grid.empty()) throw ValidationError("witness: empty tau grid");
  if (!(threshold > 0.0)) throw ValidationError("witness: threshold must be positive");
  if (r0.dim() != model.env_dim()) {
    throw ValidationError("witness: model and R(0) dimensions differ");
  }
  const double v0_norm = model.v0().norm();
  if (v0_norm > linalg::kCommuteRelTol * (model.v1().norm() + 1.0)) {
    std::ostringstream os;
    os << "witness requires V0 = 0 (one qubit level uncoupled), got ||V0||_F = " << v0_norm;
    throw HypothesisError(os.str());
  }
  if (!linalg::commutes(r0.matrix(), model.h_env())) {
    std::ostringstream os;
    os << "witness requires a stationary environment, got ||[R(0), H_E]||_F = "
       << linalg::comm_norm(r0.matrix(), model.h_env());
    throw HypothesisError(os.str());
  }
  // V1 = -lambda V with eta = -1; Phi is even in V, so Phi[V1] = lambda^2 Phi[V].
  const BohrSpectrum spectrum = bohr_spectrum(model.h_env(), model.v1(), r0);
  WitnessResult out;
  out.threshold = threshold;
  out.max_abs_phi = 0.0;
  for (double tau : tau_grid) {
    require_tau(tau);
    const double phi = phi_echo_stationary(spectrum, tau);
    out.taus.push_back(tau);
    out.phi.push_back(phi);
    out.max_abs_phi = std::max(out.max_abs_phi, std::abs(phi));
  }
  out.certified = out.max_abs_phi > threshold;
  out.v1_r0_commutator = linalg::comm_norm(model.v1(), r0.matrix());
  out.consistent = !out.certified || !linalg::commutes(model.v1(), r0.matrix());
  return out;
}

}  // namespace pdecho
