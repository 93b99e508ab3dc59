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

#include "pdecho/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "pdecho/errors.hpp"

namespace pdecho {

namespace {

void require_same_env(const PropagatorPair& pair, const EnvDensity& r0) {
  if (pair.env_dim() != r0.dim()) {
    throw ValidationError("propagators act on dimension " + std::to_string(pair.env_dim()) +
                          " but R(0) has dimension " + std::to_string(r0.dim()));
  }
}

}  // namespace

Amplitudes::Amplitudes(Complex a, Complex b) : a_(a), b_(b) {
  const double norm2 = std::norm(a) + std::norm(b);
  if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > kAmplitudeTol) {
    std::ostringstream os;
    os.precision(17);
    os << "qubit amplitudes must satisfy |a|^2 + |b|^2 = 1 within " << kAmplitudeTol
       << ", got " << norm2;
    throw ValidationError(os.str());
  }
}

Amplitudes Amplitudes::equal() {
  const double h = 1.0 / std::sqrt(2.0);
  return Amplitudes(h, h);
}

BranchPair evaluate(const PropagatorPair& pair, double t) { return {pair(0, t), pair(1, t)}; }

BranchPair echoed(const BranchPair& at_tau) {
  return {at_tau.w1 * at_tau.w0, at_tau.w0 * at_tau.w1};
}

JointState joint_state(const BranchPair& w, const Amplitudes& amp, const EnvDensity& r0) {
  const Index n = r0.dim();
  if (w.w0.rows() != n || w.w1.rows() != n) {
    throw ValidationError("joint_state: propagator and R(0) dimensions differ");
  }
  const Matrix& r = r0.matrix();
  const Complex a = amp.a();
  const Complex b = amp.b();
  Matrix s(2 * n, 2 * n);
  s.topLeftCorner(n, n) = std::norm(a) * (w.w0 * r * w.w0.adjoint());
  s.topRightCorner(n, n) = (a * std::conj(b)) * (w.w0 * r * w.w1.adjoint());
  s.bottomLeftCorner(n, n) = (std::conj(a) * b) * (w.w1 * r * w.w0.adjoint());
  s.bottomRightCorner(n, n) = std::norm(b) * (w.w1 * r * w.w1.adjoint());
  return JointState{linalg::hermitian_part(s), amp};
}

JointState joint_state(const PropagatorPair& pair, const Amplitudes& amp, const EnvDensity& r0,
                       double t) {
  require_same_env(pair, r0);
  return joint_state(evaluate(pair, t), amp, r0);
}

Complex coherence(const BranchPair& w, const EnvDensity& r0) {
  return (r0.matrix() * w.w1.adjoint() * w.w0).trace();
}

Complex coherence(const PropagatorPair& pair, const EnvDensity& r0, double t) {
  require_same_env(pair, r0);
  return coherence(evaluate(pair, t), r0);
}

JointState echoed_joint_state(const PropagatorPair& pair, const Amplitudes& amp,
                              const EnvDensity& r0, double tau) {
  require_same_env(pair, r0);
  return joint_state(echoed(evaluate(pair, tau)), amp, r0);
}

Complex echoed_coherence(const PropagatorPair& pair, const EnvDensity& r0, double tau) {
  require_same_env(pair, r0);
  return coherence(echoed(evaluate(pair, tau)), r0);
}

QubitState reduced_qubit_state(const JointState& state) {
  Matrix rho = linalg::partial_trace(state.s, state.dims(), linalg::Subsystem::B);
  const Complex ab = state.amplitudes.a() * std::conj(state.amplitudes.b());
  std::optional<Complex> w;
  if (std::abs(ab) > 1e-15) w = rho(0, 1) / ab;
  return QubitState{std::move(rho), w};
}

QubitState qubit_state(const Amplitudes& amp, Complex w) {
  const Complex a = amp.a();
  const Complex b = amp.b();
  Matrix rho(2, 2);
  rho << std::norm(a), a * std::conj(b) * w, std::conj(a) * b * std::conj(w), std::norm(b);
  std::optional<Complex> coh;
  if (std::abs(a * std::conj(b)) > 1e-15) coh = w;
  return QubitState{std::move(rho), coh};
}

}  // namespace pdecho
