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

#pragma once

#include <optional>

#include "pdecho/model.hpp"

namespace pdecho {

inline constexpr double kAmplitudeTol = 1e-12;

/// Initial qubit state a|0> + b|1>. Construction refuses unnormalized input.
class Amplitudes {
 public:
  Amplitudes(Complex a, Complex b);
  /// a = b = 1/sqrt(2)
  static Amplitudes equal();

  Complex a() const { return a_; }
  Complex b() const { return b_; }

 private:
  Complex a_;
  Complex b_;
};

/// w_0 and w_1 evaluated at one instant.
struct BranchPair {
  Matrix w0;
  Matrix w1;
};

BranchPair evaluate(const PropagatorPair& pair, double t);
/// The echo maps (w0, w1) at tau to the effective pair (w1 w0, w0 w1) at 2 tau.
BranchPair echoed(const BranchPair& at_tau);

/// Qubit (x) environment density matrix in the 2N space, qubit index major.
struct JointState {
  Matrix s;
  Amplitudes amplitudes;

  Index env_dim() const { return s.rows() / 2; }
  linalg::CompositeDims dims() const { return {2, env_dim()}; }
};

struct QubitState {
  Matrix rho;  // 2x2
  /// rho_01 / (a b*); empty when a b* = 0 and the coherence is undefined.
  std::optional<Complex> coherence;
};

/// sigma(t) for a product initial state: blocks |a|^2 w0 R w0^dag, a b* w0 R w1^dag, ...
JointState joint_state(const BranchPair& w, const Amplitudes& amp, const EnvDensity& r0);
JointState joint_state(const PropagatorPair& pair, const Amplitudes& amp, const EnvDensity& r0,
                       double t);

/// W(t) = Tr[R(0) w1^dag(t) w0(t)]
Complex coherence(const BranchPair& w, const EnvDensity& r0);
Complex coherence(const PropagatorPair& pair, const EnvDensity& r0, double t);

/// State right after sigma_x U(tau) sigma_x U(tau), the second pulse included.
JointState echoed_joint_state(const PropagatorPair& pair, const Amplitudes& amp,
                              const EnvDensity& r0, double tau);

/// W(2 tau) = Tr[R(0) w1^dag w0^dag w1 w0], all at tau. Qubit phases e^{-i eps_i tau} cancel.
Complex echoed_coherence(const PropagatorPair& pair, const EnvDensity& r0, double tau);

QubitState reduced_qubit_state(const JointState& state);
/// [[|a|^2, a b* W], [a* b W*, |b|^2]]
QubitState qubit_state(const Amplitudes& amp, Complex w);

}  // namespace pdecho
