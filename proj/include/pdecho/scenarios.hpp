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

// Built-in systems: the two-level snapshot and its periodic extension, the
// commuting families, seeded random ensembles, and a few spectral test models.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "pdecho/dynamics.hpp"

namespace pdecho {

struct Scenario {
  std::string name;
  PropagatorPair pair;
  std::optional<PureDephasingModel> model;  // empty for spectral pairs
  EnvDensity r0;
  Amplitudes amplitudes;
  double grid_start;
  double grid_stop;
  std::size_t grid_points;
  double reference_time;
  std::string notes;
};

/// The periodic two-level pair (period 4 tau0 up to a global phase) with
///   w0 = e^{i pi t/(4 tau0)} |psi0><psi0| + e^{-i pi t/(4 tau0)} |psi0'><psi0'|,
///   w1 = e^{i pi t/tau0} |psi1><psi1| + e^{2 i pi t/tau0} |psi1'><psi1'|,
/// psi0 = (1, -i)/sqrt2, psi0' = (1, i)/sqrt2,
/// psi1 = (sin pi/8, -cos pi/8), psi1' = (cos pi/8, sin pi/8) in the {|R0>, |R1>} basis.
PropagatorPair periodic_pair(double tau0);

/// Pure |R0>, a = b = 1/sqrt2, 801 points on [0, 4 tau0], reference time tau0.
Scenario fig1_model(double tau0 = 1.0);

/// periodic_pair(1) with R(0) = c0 |R0><R0| + (1 - c0) |R1><R1|; at tau = 1,
/// w0 = [[1,-1],[1,1]]/sqrt2 and w1 = [[1,1],[1,-1]]/sqrt2.
Scenario sec4b_snapshot(double c0);

/// H_E, V0, V1 sharing a random eigenbasis, H_E with doubly degenerate levels and
/// thermal R(0) (beta = 1). with_v_commuting: V0, V1 diagonal in that basis;
/// otherwise V0, V1 are generic Hermitian inside each degenerate block and do not commute.
Scenario commuting_family(std::size_t n, std::uint64_t seed, bool with_v_commuting);

/// As commuting_family(n, seed, true), but with a random full-rank R(0) so that
/// [R(0), V0 - V1] != 0: perfect echo, entanglement before the pulse.
Scenario commuting_family_entangling(std::size_t n, std::uint64_t seed);

/// random_model(n, seed, 1) with both couplings scaled by lambda, random full-rank R(0).
Scenario random_scenario(std::size_t n, std::uint64_t seed, double lambda);

struct ScenarioOptions {
  double c0 = 0.5;
  double tau0 = 1.0;
  std::size_t n = 3;
  std::uint64_t seed = 1;
  double lambda = 1.0;
  bool with_v_commuting = true;
};

/// "fig1", "sec4b", "commuting", "random"; ValidationError otherwise.
Scenario make_scenario(std::string_view name, const ScenarioOptions& opts = {});

/// Environment + coupling for the weak-coupling machinery: the biased coupling
/// (1/2) lambda (eta - sigma_z) (x) v with free Hamiltonian h_env.
struct SpectralModel {
  std::string name;
  Matrix h_env;
  Matrix v;
  EnvDensity r0;
};

/// H_E = sigma_z, V = sigma_x, thermal R(0).
SpectralModel sigma_zx_model(double beta);
/// [H_E, V] = 0: only the omega = 0 line survives.
SpectralModel static_model(double beta);
/// Equally spaced ladder H_E = diag(0, w, ..., (n-1) w), w = 2 pi / tau_star,
/// V = nearest-neighbour hopping; every Bohr frequency is a multiple of w.
SpectralModel comb_model(std::size_t n, double tau_star, double beta);
/// Random H_E and V, thermal R(0).
SpectralModel random_spectral_model(std::size_t n, std::uint64_t seed, double beta);

/// expand_biased({lambda, eta, m.v}, 0, 0, m.h_env)
PureDephasingModel biased_model(const SpectralModel& m, double lambda, double eta);

}  // namespace pdecho
