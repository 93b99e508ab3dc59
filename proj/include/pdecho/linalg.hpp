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

#include <complex>
#include <string_view>

#include <Eigen/Dense>

namespace pdecho::linalg {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Largest square dimension accepted anywhere (joint space of a 64-level environment).
inline constexpr Index kMaxDim = 128;
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kUnitaryTol = 1e-12;
/// Relative factor in the scale-aware "commutes" threshold.
inline constexpr double kCommuteRelTol = 1e-10;

enum class Subsystem { A, B };

/// Dimensions of a bipartite space H_A (x) H_B; row index is i_A * b + i_B.
struct CompositeDims {
  Index a;
  Index b;
};

struct HermitianEigen {
  RealVector values;  // ascending
  Matrix vectors;     // columns are eigenvectors
};

Matrix dagger(const Matrix& m);

/// max_ij |M - M^dagger|_ij
double hermiticity_deviation(const Matrix& m);
/// max_ij |U^dagger U - 1|_ij
double unitarity_deviation(const Matrix& u);
/// max_ij |A - B|_ij
double max_abs_diff(const Matrix& a, const Matrix& b);

void require_square(const Matrix& m, std::string_view name);
void require_same_shape(const Matrix& a, const Matrix& b, std::string_view what);
/// Throws ValidationError naming `name` and the measured deviation.
void require_hermitian(const Matrix& m, std::string_view name, double tol = kHermitianTol);
void require_unitary(const Matrix& u, std::string_view name, double tol = kUnitaryTol);

/// (M + M^dagger) / 2
Matrix hermitian_part(const Matrix& m);

/// Spectral decomposition M = V diag(values) V^dagger with ascending values.
/// Each eigenvector is rotated so its largest-magnitude component is real positive.
HermitianEigen eig_hermitian(const Matrix& m);

/// exp(-i H t) from a precomputed decomposition of H.
Matrix expm_from_eigen(const HermitianEigen& eig, double t);
/// exp(-i H t); H must be Hermitian.
Matrix expm_hermitian_generator(const Matrix& h, double t);

Matrix partial_trace(const Matrix& s, CompositeDims dims, Subsystem over);
Matrix partial_transpose(const Matrix& s, CompositeDims dims, Subsystem on);

Matrix commutator(const Matrix& a, const Matrix& b);
/// Frobenius norm of AB - BA.
double comm_norm(const Matrix& a, const Matrix& b);
/// 1e-10 * (|A|_F |B|_F + 1)
double commute_threshold(const Matrix& a, const Matrix& b);
bool commutes(const Matrix& a, const Matrix& b);

Matrix kron(const Matrix& a, const Matrix& b);

namespace pauli {
Matrix identity();
Matrix x();
Matrix y();
Matrix z();
}  // namespace pauli

}  // namespace pdecho::linalg
