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

#include "pdecho/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pdecho/errors.hpp"

namespace pdecho {

namespace {

constexpr double kPsdTol = 1e-10;
constexpr double kEntropyFloor = 1e-15;

bool disagrees(const SeparabilityVerdict& verdict, double neg) {
  const PptClass ppt = classify_negativity(neg);
  if (ppt == PptClass::kInconclusive) return true;
  return verdict.separable != (ppt == PptClass::kSeparable);
}

}  // namespace

Matrix prepulse_operator(const BranchPair& w) { return w.w0.adjoint() * w.w1; }

Matrix echo_operator(const BranchPair& w) {
  return w.w0.adjoint() * w.w1.adjoint() * w.w0 * w.w1;
}

SeparabilityVerdict separability_verdict(const Matrix& op, const Matrix& r0,
                                         std::optional<double> tol) {
  const double threshold = tol.value_or(linalg::commute_threshold(op, r0));
  if (!(threshold > 0.0)) throw ValidationError("separability tolerance must be positive");
  const double norm = linalg::comm_norm(op, r0);
  return {norm, threshold, norm < threshold};
}

SeparabilityVerdict prepulse_separability(const PropagatorPair& pair, const EnvDensity& r0,
                                          double tau, std::optional<double> tol) {
  return separability_verdict(prepulse_operator(evaluate(pair, tau)), r0.matrix(), tol);
}

SeparabilityVerdict echoed_separability(const PropagatorPair& pair, const EnvDensity& r0,
                                        double tau, std::optional<double> tol) {
  return separability_verdict(echo_operator(evaluate(pair, tau)), r0.matrix(), tol);
}

double negativity(const JointState& state) {
  const Matrix pt = linalg::partial_transpose(state.s, state.dims(), linalg::Subsystem::A);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(linalg::hermitian_part(pt),
                                               Eigen::EigenvaluesOnly);
  double total = 0.0;
  for (Index k = 0; k < solver.eigenvalues().size(); ++k) {
    const double lambda = solver.eigenvalues()(k);
    if (lambda < 0.0) total -= lambda;
  }
  return total;
}

PptClass classify_negativity(double neg) {
  if (neg < kNegativitySeparable) return PptClass::kSeparable;
  if (neg > kNegativityEntangled) return PptClass::kEntangled;
  return PptClass::kInconclusive;
}

Matrix conditional_env_state(const PropagatorPair& pair, const EnvDensity& r0, int branch,
                             double t) {
  const Matrix w = pair(branch, t);
  return linalg::hermitian_part(w * r0.matrix() * w.adjoint());
}

double pure_entanglement_entropy(const QubitState& state) {
  linalg::require_hermitian(state.rho, "reduced qubit state", 1e-10);
  if (state.rho.rows() != 2) throw ValidationError("reduced qubit state must be 2x2");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(linalg::hermitian_part(state.rho),
                                               Eigen::EigenvaluesOnly);
  if (solver.eigenvalues()(0) < kEntropyFloor && solver.eigenvalues()(0) > -kPsdTol) return 0.0;
  double entropy = 0.0;
  for (Index k = 0; k < 2; ++k) {
    const double p = solver.eigenvalues()(k);
    if (p < -kPsdTol) {
      std::ostringstream os;
      os << "reduced qubit state is not positive semidefinite: eigenvalue " << p;
      throw ValidationError(os.str());
    }
    if (p > 0.0) entropy -= p * std::log2(p);
  }
  return std::clamp(entropy, 0.0, 1.0);
}

bool EchoRecord::inconclusive() const {
  return disagrees(verdict_pre, negativity_pre) || disagrees(verdict_echo, negativity_echo);
}

EchoRecord classify_point(const PropagatorPair& pair, const Amplitudes& amp,
                          const EnvDensity& r0, double tau, std::optional<double> tol) {
  const BranchPair pre = evaluate(pair, tau);
  const BranchPair post = echoed(pre);
  const JointState sigma_pre = joint_state(pre, amp, r0);
  const JointState sigma_echo = joint_state(post, amp, r0);

  EchoRecord rec{tau,
                 coherence(pre, r0),
                 coherence(post, r0),
                 separability_verdict(prepulse_operator(pre), r0.matrix(), tol),
                 separability_verdict(echo_operator(pre), r0.matrix(), tol),
                 negativity(sigma_pre),
                 negativity(sigma_echo),
                 std::nullopt,
                 std::nullopt};
  if (r0.is_pure()) {
    rec.entropy_pre = pure_entanglement_entropy(reduced_qubit_state(sigma_pre));
    rec.entropy_echo = pure_entanglement_entropy(reduced_qubit_state(sigma_echo));
  }
  return rec;
}

ScanResult classify_scan(const PropagatorPair& pair, const Amplitudes& amp, const EnvDensity& r0,
                         std::span<const double> tau_grid, std::optional<double> tol) {
  if (tau_grid.empty()) throw ValidationError("classify_scan: empty tau grid");
  for (std::size_t i = 0; i < tau_grid.size(); ++i) {
    if (!std::isfinite(tau_grid[i])) throw ValidationError("classify_scan: non-finite tau");
    if (i > 0 && !(tau_grid[i] > tau_grid[i - 1])) {
      throw ValidationError("classify_scan: tau grid must be strictly increasing");
    }
  }
  if (pair.env_dim() != r0.dim()) {
    throw ValidationError("classify_scan: propagator and R(0) dimensions differ");
  }
  ScanResult out;
  out.records.reserve(tau_grid.size());
  for (std::size_t i = 0; i < tau_grid.size(); ++i) {
    EchoRecord rec = classify_point(pair, amp, r0, tau_grid[i], tol);
    if (rec.verdict_pre.separable) ++out.summary.separable_pre;
    if (rec.verdict_echo.separable) ++out.summary.separable_echo;
    if (rec.inconclusive()) ++out.summary.inconclusive;
    if (rec.echo_induced()) out.summary.echo_induced.push_back(i);
    out.records.push_back(std::move(rec));
  }
  return out;
}

std::vector<double> uniform_grid(double start, double stop, std::size_t points) {
  if (points < 2) throw ValidationError("uniform_grid: need at least 2 points");
  if (!std::isfinite(start) || !std::isfinite(stop) || !(stop > start)) {
    throw ValidationError("uniform_grid: need finite start < stop");
  }
  std::vector<double> grid(points);
  const double span = stop - start;
  const auto denom = static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = start + span * static_cast<double>(i) / denom;
  }
  grid.back() = stop;
  return grid;
}

std::vector<RefinementLevel> isolation_refinement(const PropagatorPair& pair,
                                                  const Amplitudes& /*amp*/, const EnvDensity& r0,
                                                  double start, double stop, int levels,
                                                  std::size_t base_points,
                                                  std::optional<double> tol) {
  if (levels < 2) throw ValidationError("isolation_refinement: need at least 2 levels");
  if (base_points < 2) throw ValidationError("isolation_refinement: need at least 2 base points");
  std::vector<RefinementLevel> out;
  for (int level = 0; level < levels; ++level) {
    const std::size_t points = (base_points - 1) * (std::size_t{1} << level) + 1;
    const auto grid = uniform_grid(start, stop, points);
    std::size_t flagged = 0;
    std::size_t run = 0;
    std::size_t longest = 0;
    for (double tau : grid) {
      const BranchPair w = evaluate(pair, tau);
      const bool pre_sep = separability_verdict(prepulse_operator(w), r0.matrix(), tol).separable;
      const bool flag =
          pre_sep && !separability_verdict(echo_operator(w), r0.matrix(), tol).separable;
      if (flag) {
        ++flagged;
        longest = std::max(longest, ++run);
      } else {
        run = 0;
      }
    }
    out.push_back({points, (stop - start) / static_cast<double>(points - 1), flagged,
                   static_cast<double>(flagged) / static_cast<double>(points), longest});
  }
  return out;
}

double polish_separable_instant(const PropagatorPair& pair, const EnvDensity& r0, double lo,
                                double hi, double tau_tol) {
  if (!(hi > lo)) throw ValidationError("polish_separable_instant: need lo < hi");
  const auto norm_at = [&](double tau) {
    return linalg::comm_norm(prepulse_operator(evaluate(pair, tau)), r0.matrix());
  };
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = norm_at(c);
  double fd = norm_at(d);
  while (b - a > tau_tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = norm_at(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = norm_at(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace pdecho
