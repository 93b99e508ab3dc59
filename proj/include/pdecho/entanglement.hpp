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

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pdecho/dynamics.hpp"

namespace pdecho {

/// Negativity above this is entangled; below kNegativitySeparable it is separable.
/// The band in between is reported as inconclusive.
inline constexpr double kNegativityEntangled = 1e-8;
inline constexpr double kNegativitySeparable = 1e-10;

/// Qubit-environment separability from the commutator criterion
/// [O, R(0)] = 0, where O = w0^dag w1 (pre-pulse) or w0^dag w1^dag w0 w1 (echo).
struct SeparabilityVerdict {
  double commutator_norm;
  double tolerance;
  bool separable;
};

enum class PptClass { kSeparable, kEntangled, kInconclusive };

/// w0^dag w1
Matrix prepulse_operator(const BranchPair& w);
/// w0^dag w1^dag w0 w1
Matrix echo_operator(const BranchPair& w);

/// Default tolerance is linalg::commute_threshold(O, R(0)).
SeparabilityVerdict separability_verdict(const Matrix& op, const Matrix& r0,
                                         std::optional<double> tol = std::nullopt);
SeparabilityVerdict prepulse_separability(const PropagatorPair& pair, const EnvDensity& r0,
                                          double tau, std::optional<double> tol = std::nullopt);
SeparabilityVerdict echoed_separability(const PropagatorPair& pair, const EnvDensity& r0,
                                        double tau, std::optional<double> tol = std::nullopt);

/// Sum of |negative eigenvalues| of the partial transpose over the qubit.
double negativity(const JointState& state);
PptClass classify_negativity(double negativity);

/// R_ii(t) = w_i(t) R(0) w_i(t)^dag
Matrix conditional_env_state(const PropagatorPair& pair, const EnvDensity& r0, int branch,
                             double t);

/// Von Neumann entropy in bits of the reduced qubit state. Only an entanglement
/// measure when the joint state is pure; the caller asserts that.
double pure_entanglement_entropy(const QubitState& rho);

struct EchoRecord {
  double tau;
  Complex w_pre;
  Complex w_echo;
  SeparabilityVerdict verdict_pre;
  SeparabilityVerdict verdict_echo;
  double negativity_pre;
  double negativity_echo;
  std::optional<double> entropy_pre;   // present for pure R(0)
  std::optional<double> entropy_echo;

  /// Separable before the pulse, entangled after the echo.
  bool echo_induced() const { return verdict_pre.separable && !verdict_echo.separable; }
  /// Criterion and negativity disagree, or negativity sits in the dead band.
  bool inconclusive() const;
};

struct ScanSummary {
  std::vector<std::size_t> echo_induced;  // record indices
  std::size_t separable_pre = 0;
  std::size_t separable_echo = 0;
  std::size_t inconclusive = 0;
};

struct ScanResult {
  std::vector<EchoRecord> records;
  ScanSummary summary;
};

EchoRecord classify_point(const PropagatorPair& pair, const Amplitudes& amp,
                          const EnvDensity& r0, double tau,
                          std::optional<double> tol = std::nullopt);

/// One record per grid point; the grid must be non-empty and strictly increasing.
ScanResult classify_scan(const PropagatorPair& pair, const Amplitudes& amp, const EnvDensity& r0,
                         std::span<const double> tau_grid,
                         std::optional<double> tol = std::nullopt);

/// start + (stop - start) * i / (points - 1); endpoints are exact.
std::vector<double> uniform_grid(double start, double stop, std::size_t points);

struct RefinementLevel {
  std::size_t points;
  double step;
  std::size_t flagged;
  double fraction;
  std::size_t longest_run;  // longest stretch of consecutive flagged points
};

/// Echo-induced fraction on nested grids over [start, stop] with
/// (base_points - 1) * 2^level + 1 points, level = 0 .. levels - 1.
std::vector<RefinementLevel> isolation_refinement(const PropagatorPair& pair,
                                                  const Amplitudes& amp, const EnvDensity& r0,
                                                  double start, double stop, int levels,
                                                  std::size_t base_points = 101,
                                                  std::optional<double> tol = std::nullopt);

/// Golden-section minimization of the pre-pulse commutator norm on [lo, hi];
/// locates a separable instant to ~tau_tol when the bracket holds exactly one.
double polish_separable_instant(const PropagatorPair& pair, const EnvDensity& r0, double lo,
                                double hi, double tau_tol = 1e-12);

}  // namespace pdecho
