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

#include "pdecho/model.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "pdecho/errors.hpp"

namespace pdecho {

namespace {

constexpr double kTraceTol = 1e-12;
constexpr double kPsdTol = 1e-10;
constexpr double kOrthonormalTol = 1e-12;

void require_branch(int branch) {
  if (branch != 0 && branch != 1) {
    throw ValidationError("branch index must be 0 or 1, got " + std::to_string(branch));
  }
}

void require_density(const Matrix& r) {
  linalg::require_hermitian(r, "environment density");
  require_env_dim(r.rows());
  const Complex tr = r.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > kTraceTol) {
    std::ostringstream os;
    os << "environment density must have unit trace, got " << tr;
    throw ValidationError(os.str());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(linalg::hermitian_part(r),
                                               Eigen::EigenvaluesOnly);
  const double lowest = solver.eigenvalues()(0);
  if (lowest < -kPsdTol) {
    std::ostringstream os;
    os << "environment density is not positive semidefinite: eigenvalue " << lowest;
    throw ValidationError(os.str());
  }
}

void require_orthonormal_branch(const SpectralBranch& branch, Index dim, int which) {
  const std::string name = "spectral branch " + std::to_string(which);
  if (static_cast<Index>(branch.size()) != dim) {
    throw ValidationError(name + " must list exactly one projector per basis dimension");
  }
  Matrix basis(dim, dim);
  for (Index k = 0; k < dim; ++k) {
    const auto& term = branch[static_cast<std::size_t>(k)];
    if (term.state.size() != dim) {
      throw ValidationError(name + ": projector vectors have inconsistent dimension");
    }
    if (!std::isfinite(term.omega)) throw ValidationError(name + ": non-finite frequency");
    basis.col(k) = term.state;
  }
  const double dev = linalg::unitarity_deviation(basis);
  if (dev > kOrthonormalTol) {
    std::ostringstream os;
    os << name << " is not a complete orthonormal set (deviation " << dev << ")";
    throw ValidationError(os.str());
  }
}

}  // namespace

void require_env_dim(Index dim) {
  if (dim < 1 || dim > kMaxEnvDim) {
    throw ValidationError("environment dimension " + std::to_string(dim) +
                          " outside [1, " + std::to_string(kMaxEnvDim) + "]");
  }
}

PureDephasingModel::PureDephasingModel(double epsilon0, double epsilon1, Matrix h_env, Matrix v0,
                                       Matrix v1, bool rotating_frame)
    : epsilon0_(epsilon0),
      epsilon1_(epsilon1),
      h_env_(std::move(h_env)),
      v0_(std::move(v0)),
      v1_(std::move(v1)),
      rotating_frame_(rotating_frame) {
  if (!std::isfinite(epsilon0_) || !std::isfinite(epsilon1_)) {
    throw ValidationError("qubit splittings must be finite");
  }
  linalg::require_hermitian(h_env_, "H_E");
  linalg::require_hermitian(v0_, "V0");
  linalg::require_hermitian(v1_, "V1");
  require_env_dim(h_env_.rows());
  if (v0_.rows() != h_env_.rows() || v1_.rows() != h_env_.rows()) {
    throw ValidationError("H_E, V0 and V1 must share one environment dimension");
  }
}

double PureDephasingModel::epsilon(int branch) const {
  return rotating_frame_ ? 0.0 : bare_epsilon(branch);
}

double PureDephasingModel::bare_epsilon(int branch) const {
  require_branch(branch);
  return branch == 0 ? epsilon0_ : epsilon1_;
}

const Matrix& PureDephasingModel::coupling(int branch) const {
  require_branch(branch);
  return branch == 0 ? v0_ : v1_;
}

PureDephasingModel PureDephasingModel::with_rotating_frame(bool on) const {
  PureDephasingModel copy = *this;
  copy.rotating_frame_ = on;
  return copy;
}

EnvDensity::EnvDensity(Matrix r, EnvKind kind, double beta, std::uint64_t seed)
    : r_(std::move(r)), kind_(kind), beta_(beta), seed_(seed) {
  require_density(r_);
}

EnvDensity EnvDensity::pure(const Vector& state) {
  require_env_dim(state.size());
  const double norm = state.norm();
  if (std::abs(norm - 1.0) > kTraceTol) {
    std::ostringstream os;
    os << "pure environment state must be normalized, |psi| = " << norm;
    throw ValidationError(os.str());
  }
  return EnvDensity(linalg::hermitian_part(state * state.adjoint()), EnvKind::kPure);
}

EnvDensity EnvDensity::diagonal(std::span<const double> weights) {
  require_env_dim(static_cast<Index>(weights.size()));
  Matrix r = Matrix::Zero(static_cast<Index>(weights.size()), static_cast<Index>(weights.size()));
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (!(weights[k] >= 0.0)) throw ValidationError("diagonal weights must be nonnegative");
    r(static_cast<Index>(k), static_cast<Index>(k)) = weights[k];
  }
  return EnvDensity(std::move(r), EnvKind::kDiagonal);
}

EnvDensity EnvDensity::thermal(const Matrix& h_env, double beta) {
  if (std::isnan(beta) || beta < 0.0) {
    throw ValidationError("inverse temperature must be >= 0 (or +inf)");
  }
  const auto eig = linalg::eig_hermitian(h_env);
  const Index n = eig.values.size();
  const double ground = eig.values(0);
  linalg::RealVector weights(n);
  for (Index k = 0; k < n; ++k) {
    const double gap = eig.values(k) - ground;
    if (std::isinf(beta)) {
      weights(k) = gap <= 1e-12 * (1.0 + std::abs(ground)) ? 1.0 : 0.0;
    } else {
      weights(k) = std::exp(-beta * gap);
    }
  }
  weights /= weights.sum();
  Matrix r = eig.vectors * weights.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
  return EnvDensity(linalg::hermitian_part(r), EnvKind::kThermal, beta);
}

EnvDensity EnvDensity::random_full_rank(Index dim, std::uint64_t seed) {
  require_env_dim(dim);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    for (Index j = 0; j < dim; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  Matrix r = g * g.adjoint();
  r /= r.trace().real();
  return EnvDensity(linalg::hermitian_part(r), EnvKind::kRandom,
                    std::numeric_limits<double>::quiet_NaN(), seed);
}

EnvDensity EnvDensity::maximally_mixed(Index dim) {
  require_env_dim(dim);
  return EnvDensity(Matrix::Identity(dim, dim) / static_cast<double>(dim), EnvKind::kDiagonal);
}

EnvDensity EnvDensity::from_matrix(const Matrix& r) {
  linalg::require_hermitian(r, "environment density");
  return EnvDensity(linalg::hermitian_part(r), EnvKind::kMatrix);
}

double EnvDensity::purity() const { return (r_ * r_).trace().real(); }

bool EnvDensity::is_pure(double tol) const { return std::abs(purity() - 1.0) < tol; }

EnvDensity thermal_state(const Matrix& h_env, double beta) {
  return EnvDensity::thermal(h_env, beta);
}

PropagatorPair PropagatorPair::generated(PureDephasingModel model) {
  std::array<linalg::HermitianEigen, 2> eig{
      linalg::eig_hermitian(linalg::hermitian_part(model.h_env() + model.v0())),
      linalg::eig_hermitian(linalg::hermitian_part(model.h_env() + model.v1()))};
  return PropagatorPair(Generated{std::move(model), std::move(eig)});
}

PropagatorPair PropagatorPair::spectral(SpectralBranch branch0, SpectralBranch branch1) {
  if (branch0.empty()) throw ValidationError("spectral branch 0 is empty");
  const Index dim = branch0.front().state.size();
  require_env_dim(dim);
  require_orthonormal_branch(branch0, dim, 0);
  require_orthonormal_branch(branch1, dim, 1);
  return PropagatorPair(Spectral{{std::move(branch0), std::move(branch1)}});
}

Matrix PropagatorPair::operator()(int branch, double t) const {
  require_branch(branch);
  if (!std::isfinite(t)) throw ValidationError("propagator time must be finite");
  if (const auto* gen = std::get_if<Generated>(&impl_)) {
    const Complex phase = std::polar(1.0, -gen->model.epsilon(branch) * t);
    return phase * linalg::expm_from_eigen(gen->eig[static_cast<std::size_t>(branch)], t);
  }
  const auto& spec = std::get<Spectral>(impl_);
  const auto& terms = spec.branches[static_cast<std::size_t>(branch)];
  const Index dim = terms.front().state.size();
  Matrix w = Matrix::Zero(dim, dim);
  for (const auto& term : terms) {
    w += std::polar(1.0, term.omega * t) * (term.state * term.state.adjoint());
  }
  return w;
}

Index PropagatorPair::env_dim() const {
  if (const auto* gen = std::get_if<Generated>(&impl_)) return gen->model.env_dim();
  return std::get<Spectral>(impl_).branches[0].front().state.size();
}

bool PropagatorPair::is_generated() const { return std::holds_alternative<Generated>(impl_); }

const PureDephasingModel& PropagatorPair::model() const {
  if (const auto* gen = std::get_if<Generated>(&impl_)) return gen->model;
  throw ValidationError("spectral propagator pair carries no Hamiltonian model");
}

Matrix conditional_propagator(const PropagatorPair& pair, int branch, double t) {
  return pair(branch, t);
}

PureDephasingModel expand_biased(const BiasedCoupling& coupling, double epsilon0,
                                 double epsilon1, const Matrix& h_env) {
  linalg::require_hermitian(coupling.v, "V");
  if (coupling.v.rows() != h_env.rows()) {
    throw ValidationError("biased coupling V and H_E dimensions differ");
  }
  Matrix v0 = 0.5 * coupling.lambda * (coupling.eta + 1.0) * coupling.v;
  Matrix v1 = 0.5 * coupling.lambda * (coupling.eta - 1.0) * coupling.v;
  return PureDephasingModel(epsilon0, epsilon1, h_env, std::move(v0), std::move(v1));
}

Matrix random_hermitian(Index dim, std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(dim, dim);
  const double off = scale / std::sqrt(2.0);
  for (Index i = 0; i < dim; ++i) {
    m(i, i) = scale * normal(rng);
    for (Index j = i + 1; j < dim; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = off * Complex(re, im);
      m(j, i) = std::conj(m(i, j));
    }
  }
  return m;
}

PureDephasingModel random_model(Index dim, std::uint64_t seed, double scale) {
  if (dim < 2 || dim > kMaxEnvDim) {
    throw ValidationError("random_model: N must be in [2, " + std::to_string(kMaxEnvDim) + "]");
  }
  if (!std::isfinite(scale)) throw ValidationError("random_model: scale must be finite");
  std::mt19937_64 rng(seed);
  Matrix h = random_hermitian(dim, rng, scale);
  Matrix v0 = random_hermitian(dim, rng, scale);
  Matrix v1 = random_hermitian(dim, rng, scale);
  return PureDephasingModel(0.0, 0.0, std::move(h), std::move(v0), std::move(v1));
}

}  // namespace pdecho
