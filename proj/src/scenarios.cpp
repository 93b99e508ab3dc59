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

#include "pdecho/scenarios.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "pdecho/errors.hpp"

namespace pdecho {

namespace {

constexpr std::size_t kDefaultPoints = 801;

Vector vec2(Complex x, Complex y) {
  Vector v(2);
  v << x, y;
  return v;
}

void require_n(std::size_t n) {
  if (n < 2 || n > static_cast<std::size_t>(kMaxEnvDim)) {
    throw ValidationError("scenario: N must be in [2, " + std::to_string(kMaxEnvDim) + "]");
  }
}

/// Random unitary from the eigenvectors of a GUE draw.
Matrix random_unitary(Index n, std::mt19937_64& rng) {
  return linalg::eig_hermitian(random_hermitian(n, rng, 1.0)).vectors;
}

struct Commuting {
  Matrix h;
  Matrix v0;
  Matrix v1;
};

Commuting commuting_operators(std::size_t n_in, std::uint64_t seed, bool with_v_commuting) {
  require_n(n_in);
  const auto n = static_cast<Index>(n_in);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const Matrix u = random_unitary(n, rng);

  Matrix h = Matrix::Zero(n, n);
  Matrix v0 = Matrix::Zero(n, n);
  Matrix v1 = Matrix::Zero(n, n);
  for (Index start = 0; start < n; start += 2) {
    const Index size = std::min<Index>(2, n - start);
    const double level = normal(rng);
    for (Index k = 0; k < size; ++k) h(start + k, start + k) = level;
    if (with_v_commuting) {
      for (Index k = 0; k < size; ++k) {
        v0(start + k, start + k) = normal(rng);
        v1(start + k, start + k) = normal(rng);
      }
    } else {
      v0.block(start, start, size, size) = random_hermitian(size, rng, 1.0);
      v1.block(start, start, size, size) = random_hermitian(size, rng, 1.0);
    }
  }
  const auto rotate = [&](const Matrix& m) {
    return linalg::hermitian_part(u * m * u.adjoint());
  };
  return {rotate(h), rotate(v0), rotate(v1)};
}

Scenario generated_scenario(std::string name, PureDephasingModel model, EnvDensity r0,
                            std::string notes) {
  PropagatorPair pair = PropagatorPair::generated(model);
  return Scenario{std::move(name),  std::move(pair), std::move(model),
                  std::move(r0),    Amplitudes::equal(),
                  0.0,              2.0 * std::numbers::pi,
                  kDefaultPoints,   1.0,
                  std::move(notes)};
}

Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

PropagatorPair periodic_pair(double tau0) {
  if (!std::isfinite(tau0) || !(tau0 > 0.0)) throw ValidationError("tau0 must be finite and > 0");
  const double pi = std::numbers::pi;
  const double h = 1.0 / std::sqrt(2.0);
  const Complex i{0.0, 1.0};
  const double s = std::sin(pi / 8.0);
  const double c = std::cos(pi / 8.0);
  SpectralBranch b0{{pi / (4.0 * tau0), vec2(h, -i * h)}, {-pi / (4.0 * tau0), vec2(h, i * h)}};
  SpectralBranch b1{{pi / tau0, vec2(s, -c)}, {2.0 * pi / tau0, vec2(c, s)}};
  return PropagatorPair::spectral(std::move(b0), std::move(b1));
}

Scenario fig1_model(double tau0) {
  PropagatorPair pair = periodic_pair(tau0);
  return Scenario{"fig1",
                  std::move(pair),
                  std::nullopt,
                  EnvDensity::pure(vec2(1.0, 0.0)),
                  Amplitudes::equal(),
                  0.0,
                  4.0 * tau0,
                  kDefaultPoints,
                  tau0,
                  "two-level environment, pure |R0>; separable before and maximally "
                  "entangled after the echo at tau0, period 4 tau0"};
}

Scenario sec4b_snapshot(double c0) {
  if (!std::isfinite(c0) || c0 < 0.0 || c0 > 1.0) throw ValidationError("c0 must be in [0, 1]");
  const std::array<double, 2> weights{c0, 1.0 - c0};
  return Scenario{"sec4b",
                  periodic_pair(1.0),
                  std::nullopt,
                  EnvDensity::diagonal(weights),
                  Amplitudes::equal(),
                  0.0,
                  4.0,
                  kDefaultPoints,
                  1.0,
                  "two-level snapshot at tau = 1: w0^dag w1 = diag(1, -1), "
                  "echo operator [[0, 1], [-1, 0]]"};
}

Scenario commuting_family(std::size_t n, std::uint64_t seed, bool with_v_commuting) {
  auto ops = commuting_operators(n, seed, with_v_commuting);
  EnvDensity r0 = EnvDensity::thermal(ops.h, 1.0);
  PureDephasingModel model(0.0, 0.0, std::move(ops.h), std::move(ops.v0), std::move(ops.v1));
  return generated_scenario(
      "commuting", std::move(model), std::move(r0),
      with_v_commuting ? "V0, V1, H_E mutually commuting; thermal R(0): perfect echo"
                       : "V0, V1 commute with H_E but not with each other; thermal R(0): "
                         "no entanglement, imperfect echo");
}

Scenario commuting_family_entangling(std::size_t n, std::uint64_t seed) {
  auto ops = commuting_operators(n, seed, true);
  EnvDensity r0 = EnvDensity::random_full_rank(static_cast<Index>(n), seed ^ 0x9e3779b97f4a7c15ULL);
  PureDephasingModel model(0.0, 0.0, std::move(ops.h), std::move(ops.v0), std::move(ops.v1));
  return generated_scenario("commuting-entangling", std::move(model), std::move(r0),
                            "mutually commuting H_E, V0, V1 with generic R(0): perfect echo, "
                            "entangled before the pulse");
}

Scenario random_scenario(std::size_t n, std::uint64_t seed, double lambda) {
  require_n(n);
  if (!std::isfinite(lambda)) throw ValidationError("lambda must be finite");
  const PureDephasingModel base = random_model(static_cast<Index>(n), seed, 1.0);
  PureDephasingModel model(0.0, 0.0, base.h_env(), lambda * base.v0(), lambda * base.v1());
  EnvDensity r0 = EnvDensity::random_full_rank(static_cast<Index>(n), seed + 1);
  return generated_scenario("random", std::move(model), std::move(r0),
                            "seeded random H_E, V0, V1 and full-rank R(0)");
}

Scenario make_scenario(std::string_view name, const ScenarioOptions& opts) {
  if (name == "fig1") return fig1_model(opts.tau0);
  if (name == "sec4b") return sec4b_snapshot(opts.c0);
  if (name == "commuting") return commuting_family(opts.n, opts.seed, opts.with_v_commuting);
  if (name == "random") return random_scenario(opts.n, opts.seed, opts.lambda);
  throw ValidationError("unknown scenario '" + std::string(name) +
                        "' (expected fig1, sec4b, commuting, random)");
}

SpectralModel sigma_zx_model(double beta) {
  const Matrix h = linalg::pauli::z();
  return {"sigma_zx", h, linalg::pauli::x(), EnvDensity::thermal(h, beta)};
}

SpectralModel static_model(double beta) {
  const Matrix h = diag2(1.0, -0.5);
  return {"static", h, diag2(0.3, -1.2), EnvDensity::thermal(h, beta)};
}

SpectralModel comb_model(std::size_t n, double tau_star, double beta) {
  require_n(n);
  if (!std::isfinite(tau_star) || !(tau_star > 0.0)) {
    throw ValidationError("tau_star must be finite and > 0");
  }
  const auto dim = static_cast<Index>(n);
  const double omega = 2.0 * std::numbers::pi / tau_star;
  Matrix h = Matrix::Zero(dim, dim);
  Matrix v = Matrix::Zero(dim, dim);
  for (Index k = 0; k < dim; ++k) {
    h(k, k) = omega * static_cast<double>(k);
    if (k + 1 < dim) {
      v(k, k + 1) = std::sqrt(static_cast<double>(k + 1));
      v(k + 1, k) = v(k, k + 1);
    }
  }
  EnvDensity r0 = EnvDensity::thermal(h, beta);
  return {"comb", std::move(h), std::move(v), std::move(r0)};
}

SpectralModel random_spectral_model(std::size_t n, std::uint64_t seed, double beta) {
  require_n(n);
  std::mt19937_64 rng(seed);
  Matrix h = random_hermitian(static_cast<Index>(n), rng, 1.0);
  Matrix v = random_hermitian(static_cast<Index>(n), rng, 1.0);
  EnvDensity r0 = EnvDensity::thermal(h, beta);
  return {"random", std::move(h), std::move(v), std::move(r0)};
}

PureDephasingModel biased_model(const SpectralModel& m, double lambda, double eta) {
  return expand_biased(BiasedCoupling{lambda, eta, m.v}, 0.0, 0.0, m.h_env);
}

}  // namespace pdecho
