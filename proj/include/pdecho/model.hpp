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

#include <array>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <variant>
#include <vector>

#include "pdecho/linalg.hpp"

namespace pdecho {

using linalg::Complex;
using linalg::Index;
using linalg::Matrix;
using linalg::Vector;

/// Environment dimension cap; the joint space is twice this.
inline constexpr Index kMaxEnvDim = 64;
inline constexpr double kInfiniteBeta = std::numeric_limits<double>::infinity();

/// Qubit with splittings eps_i and environment operators H_E, V0, V1 on an
/// N-dimensional space:  H = sum_i eps_i |i><i| + H_E + |0><0| V0 + |1><1| V1.
/// Units with hbar = 1, so energies are angular frequencies.
///
/// With `rotating_frame` set, both eps_i read as zero. This removes the trivial
/// e^{i(eps1 - eps0) t} phase from W(t) without touching the environment.
class PureDephasingModel {
 public:
  PureDephasingModel(double epsilon0, double epsilon1, Matrix h_env, Matrix v0, Matrix v1,
                     bool rotating_frame = false);

  double epsilon(int branch) const;
  double epsilon0() const { return epsilon(0); }
  double epsilon1() const { return epsilon(1); }
  /// Splitting as stored, ignoring the rotating-frame flag.
  double bare_epsilon(int branch) const;
  const Matrix& h_env() const { return h_env_; }
  const Matrix& v0() const { return v0_; }
  const Matrix& v1() const { return v1_; }
  const Matrix& coupling(int branch) const;
  Index env_dim() const { return h_env_.rows(); }
  bool rotating_frame() const { return rotating_frame_; }

  PureDephasingModel with_rotating_frame(bool on) const;

 private:
  double epsilon0_;
  double epsilon1_;
  Matrix h_env_;
  Matrix v0_;
  Matrix v1_;
  bool rotating_frame_;
};

enum class EnvKind { kPure, kDiagonal, kThermal, kRandom, kMatrix };

/// Environment density matrix R(0): Hermitian, unit trace, PSD.
class EnvDensity {
 public:
  static EnvDensity pure(const Vector& state);
  static EnvDensity diagonal(std::span<const double> weights);
  /// e^{-beta H} / Tr e^{-beta H}; beta = kInfiniteBeta gives the (uniform
  /// mixture over the) ground manifold.
  static EnvDensity thermal(const Matrix& h_env, double beta);
  /// Wishart G G^dagger / Tr from a seeded complex Ginibre matrix; full rank w.p. 1.
  static EnvDensity random_full_rank(Index dim, std::uint64_t seed);
  static EnvDensity maximally_mixed(Index dim);
  static EnvDensity from_matrix(const Matrix& r);

  const Matrix& matrix() const { return r_; }
  Index dim() const { return r_.rows(); }
  EnvKind kind() const { return kind_; }
  /// Inverse temperature for thermal states, NaN otherwise.
  double beta() const { return beta_; }
  std::uint64_t seed() const { return seed_; }
  double purity() const;
  bool is_pure(double tol = 1e-10) const;

 private:
  EnvDensity(Matrix r, EnvKind kind, double beta = std::numeric_limits<double>::quiet_NaN(),
             std::uint64_t seed = 0);

  Matrix r_;
  EnvKind kind_;
  double beta_;
  std::uint64_t seed_;
};

EnvDensity thermal_state(const Matrix& h_env, double beta);

/// One term e^{+i omega t} |state><state| of a spectrally specified propagator.
struct SpectralTerm {
  double omega;
  Vector state;
};
using SpectralBranch = std::vector<SpectralTerm>;

/// The conditional environment propagators w_0(t), w_1(t).
///
/// Generated pairs follow w_i(t) = e^{-i eps_i t} exp(-i (H_E + V_i) t).
/// Spectral pairs follow w_i(t) = sum_k e^{+i omega_k t} |psi_k><psi_k|; note the
/// + sign, which corresponds to the generator H_i = -sum_k omega_k |psi_k><psi_k|.
class PropagatorPair {
 public:
  static PropagatorPair generated(PureDephasingModel model);
  static PropagatorPair spectral(SpectralBranch branch0, SpectralBranch branch1);

  Matrix operator()(int branch, double t) const;
  Index env_dim() const;
  bool is_generated() const;
  /// Throws ValidationError for spectral pairs.
  const PureDephasingModel& model() const;

 private:
  struct Generated {
    PureDephasingModel model;
    std::array<linalg::HermitianEigen, 2> eig;
  };
  struct Spectral {
    std::array<SpectralBranch, 2> branches;
  };

  explicit PropagatorPair(std::variant<Generated, Spectral> impl) : impl_(std::move(impl)) {}

  std::variant<Generated, Spectral> impl_;
};

Matrix conditional_propagator(const PropagatorPair& pair, int branch, double t);

/// Qubit coupling (1/2) lambda (eta 1 - sigma_z) (x) V, i.e.
/// V0 = lambda (eta + 1) V / 2 and V1 = lambda (eta - 1) V / 2.
struct BiasedCoupling {
  double lambda;
  double eta;
  Matrix v;
};

PureDephasingModel expand_biased(const BiasedCoupling& coupling, double epsilon0,
                                 double epsilon1, const Matrix& h_env);

/// Hermitian matrix with N(0, scale^2) diagonal and complex Gaussian off-diagonal
/// entries of variance scale^2 (GUE-style).
Matrix random_hermitian(Index dim, std::mt19937_64& rng, double scale);

/// Seeded GUE-style model; epsilon0 = epsilon1 = 0.
PureDephasingModel random_model(Index dim, std::uint64_t seed, double scale);

void require_env_dim(Index dim);

}  // namespace pdecho
