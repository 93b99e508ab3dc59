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

// Reference computations that avoid the library's own code paths: matrix
// exponentials by Pade scaling-and-squaring, index-loop partial operations,
// general (non-Hermitian) eigensolvers, closed forms and adaptive quadrature.

#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline Matrix expm(const Matrix& m) { return m.exp(); }

/// e^{-i h t}
inline Matrix evolve(const Matrix& h, double t) { return expm(Complex(0.0, -t) * h); }

inline Matrix heisenberg(const Matrix& h, const Matrix& v, double t) {
  return evolve(h, -t) * v * evolve(h, t);
}

inline double correlation(const Matrix& h, const Matrix& v, const Matrix& r, double t1,
                          double t2) {
  const Matrix a = heisenberg(h, v, t1);
  const Matrix b = heisenberg(h, v, t2);
  return (r * (a * b + b * a)).trace().real();
}

inline double response(const Matrix& h, const Matrix& v, const Matrix& r, double t1, double t2) {
  if (t1 < t2) return 0.0;
  const Matrix a = heisenberg(h, v, t1);
  const Matrix b = heisenberg(h, v, t2);
  return (Complex(0.0, -1.0) * (r * (a * b - b * a)).trace()).real();
}

/// Tr_B over a (2 x n) composite, explicit indices.
inline Matrix partial_trace_env(const Matrix& s, int n) {
  Matrix out = Matrix::Zero(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < n; ++k) out(i, j) += s(i * n + k, j * n + k);
  return out;
}

/// Transpose on the qubit factor, explicit indices.
inline Matrix partial_transpose_qubit(const Matrix& s, int n) {
  Matrix out(2 * n, 2 * n);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) out(i * n + k, j * n + l) = s(j * n + k, i * n + l);
  return out;
}

/// Via a general complex eigensolver.
inline double negativity(const Matrix& s, int n) {
  Eigen::ComplexEigenSolver<Matrix> es(partial_transpose_qubit(s, n));
  double neg = 0.0;
  for (int k = 0; k < es.eigenvalues().size(); ++k) {
    const double x = es.eigenvalues()(k).real();
    if (x < 0.0) neg -= x;
  }
  return neg;
}

/// Joint state from full 2N-dimensional unitaries: U (|psi><psi| (x) R) U^dag.
inline Matrix joint_state(const Matrix& w0, const Matrix& w1, Complex a, Complex b,
                          const Matrix& r) {
  const auto n = r.rows();
  Matrix u = Matrix::Zero(2 * n, 2 * n);
  u.topLeftCorner(n, n) = w0;
  u.bottomRightCorner(n, n) = w1;
  Eigen::Vector2cd psi(a, b);
  Matrix p = psi * psi.adjoint();
  Matrix init(2 * n, 2 * n);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) init.block(i * n, j * n, n, n) = p(i, j) * r;
  return u * init * u.adjoint();
}

inline double shannon_bits(double p) { return p > 0.0 ? -p * std::log2(p) : 0.0; }

/// E = H((1 + sqrt D)/2), D = 1 - 4 |a|^2 |b|^2 (1 - |W|^2).
inline double entropy_closed_form(double a2, double abs_w) {
  const double b2 = 1.0 - a2;
  const double d = 1.0 - 4.0 * a2 * b2 * (1.0 - abs_w * abs_w);
  const double s = std::sqrt(std::max(0.0, d));
  return shannon_bits(0.5 * (1.0 + s)) + shannon_bits(0.5 * (1.0 - s));
}

/// Exact echo coherence from Hamiltonians: w_i = e^{-i (H + V_i) tau}.
inline Complex echo_coherence(const Matrix& h, const Matrix& v0, const Matrix& v1,
                              const Matrix& r, double tau) {
  const Matrix w0 = evolve(h + v0, tau);
  const Matrix w1 = evolve(h + v1, tau);
  return (r * w1.adjoint() * w0.adjoint() * w1 * w0).trace();
}

/// int_a^b int_a^{t1} g(t1, t2) dt2 dt1 (c = 0) or over a square [a,b] x [c,d].
inline double adaptive_1d(const std::function<double(double)>& f, double a, double b) {
  if (b <= a) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 6, 1e-12);
}

inline double triangle(const std::function<double(double, double)>& g, double a, double b) {
  return adaptive_1d(
      [&](double t1) { return adaptive_1d([&](double t2) { return g(t1, t2); }, a, t1); }, a, b);
}

inline double rectangle(const std::function<double(double, double)>& g, double a, double b,
                        double c, double d) {
  return adaptive_1d(
      [&](double t1) { return adaptive_1d([&](double t2) { return g(t1, t2); }, c, d); }, a, b);
}

/// chi = 1/2 int int_{t2<t1} f f C and Phi = 1/2 int int_{t2<t1} f(t1) K, by regions.
inline double chi_time(const Matrix& h, const Matrix& v, const Matrix& r, double tau) {
  const auto c = [&](double t1, double t2) { return correlation(h, v, r, t1, t2); };
  return 0.5 * (triangle(c, 0.0, tau) + triangle(c, tau, 2.0 * tau) -
                rectangle(c, tau, 2.0 * tau, 0.0, tau));
}

inline double phi_time(const Matrix& h, const Matrix& v, const Matrix& r, double tau) {
  const auto k = [&](double t1, double t2) { return response(h, v, r, t1, t2); };
  return 0.5 * (triangle(k, 0.0, tau) - triangle(k, tau, 2.0 * tau) -
                rectangle(k, tau, 2.0 * tau, 0.0, tau));
}

/// Least-squares slope of log y against log x.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline Matrix sx() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline Matrix sy() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}
inline Matrix sz() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

/// Thermal state of a diagonal-able 2x2 via explicit exponential.
inline Matrix thermal(const Matrix& h, double beta) {
  Matrix r = expm(Complex(-beta, 0.0) * h);
  return r / r.trace();
}

}  // namespace oracle
