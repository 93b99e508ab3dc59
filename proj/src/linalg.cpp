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

#include "pdecho/linalg.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "pdecho/errors.hpp"

namespace pdecho::linalg {

namespace {

std::string shape_of(const Matrix& m) {
  std::ostringstream os;
  os << m.rows() << "x" << m.cols();
  return os.str();
}

void require_composite(const Matrix& s, CompositeDims dims, std::string_view op) {
  if (dims.a <= 0 || dims.b <= 0) {
    throw ValidationError(std::string(op) + ": subsystem dimensions must be positive");
  }
  if (s.rows() != s.cols() || s.rows() != dims.a * dims.b) {
    std::ostringstream os;
    os << op << ": matrix is " << shape_of(s) << " but dims (" << dims.a << ", " << dims.b
       << ") require " << dims.a * dims.b << "x" << dims.a * dims.b;
    throw ValidationError(os.str());
  }
}

}  // namespace

Matrix dagger(const Matrix& m) { return m.adjoint(); }

double hermiticity_deviation(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_deviation(const Matrix& u) {
  if (u.size() == 0) return 0.0;
  return (u.adjoint() * u - Matrix::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

void require_square(const Matrix& m, std::string_view name) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ValidationError(std::string(name) + " must be a non-empty square matrix, got " +
                          shape_of(m));
  }
  if (m.rows() > kMaxDim) {
    throw ValidationError(std::string(name) + " exceeds the dense dimension cap of " +
                          std::to_string(kMaxDim));
  }
  if (!m.allFinite()) {
    throw ValidationError(std::string(name) + " has non-finite entries");
  }
}

void require_same_shape(const Matrix& a, const Matrix& b, std::string_view what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ValidationError(std::string(what) + ": shape mismatch " + shape_of(a) + " vs " +
                          shape_of(b));
  }
}

void require_hermitian(const Matrix& m, std::string_view name, double tol) {
  require_square(m, name);
  const double dev = hermiticity_deviation(m);
  if (dev > tol) {
    std::ostringstream os;
    os << name << " is not Hermitian: max |M - M^dagger| = " << dev << " exceeds " << tol;
    throw ValidationError(os.str());
  }
}

void require_unitary(const Matrix& u, std::string_view name, double tol) {
  require_square(u, name);
  const double dev = unitarity_deviation(u);
  if (dev > tol) {
    std::ostringstream os;
    os << name << " is not unitary: max |U^dagger U - 1| = " << dev << " exceeds " << tol;
    throw ValidationError(os.str());
  }
}

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

HermitianEigen eig_hermitian(const Matrix& m) {
  require_hermitian(m, "eig_hermitian input");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(m));
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eig_hermitian: eigensolver did not converge");
  }
  HermitianEigen out{solver.eigenvalues(), solver.eigenvectors()};
  for (Index col = 0; col < out.vectors.cols(); ++col) {
    auto v = out.vectors.col(col);
    Index best = 0;
    double best_mag = -1.0;
    // ties resolved toward the lowest index so the output is reproducible
    for (Index row = 0; row < v.size(); ++row) {
      const double mag = std::abs(v(row));
      if (mag > best_mag * (1.0 + 1e-12)) {
        best_mag = mag;
        best = row;
      }
    }
    if (best_mag > 0.0) {
      v *= std::conj(v(best)) / best_mag;
      v(best) = Complex(std::abs(v(best)), 0.0);
    }
  }
  return out;
}

Matrix expm_from_eigen(const HermitianEigen& eig, double t) {
  if (!std::isfinite(t)) throw ValidationError("expm: time must be finite");
  const Index n = eig.values.size();
  Vector phases(n);
  for (Index k = 0; k < n; ++k) {
    phases(k) = std::polar(1.0, -eig.values(k) * t);
  }
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

Matrix expm_hermitian_generator(const Matrix& h, double t) {
  return expm_from_eigen(eig_hermitian(h), t);
}

Matrix partial_trace(const Matrix& s, CompositeDims dims, Subsystem over) {
  require_composite(s, dims, "partial_trace");
  if (over == Subsystem::B) {
    Matrix out = Matrix::Zero(dims.a, dims.a);
    for (Index i = 0; i < dims.a; ++i) {
      for (Index j = 0; j < dims.a; ++j) {
        out(i, j) = s.block(i * dims.b, j * dims.b, dims.b, dims.b).trace();
      }
    }
    return out;
  }
  Matrix out = Matrix::Zero(dims.b, dims.b);
  for (Index i = 0; i < dims.a; ++i) {
    out += s.block(i * dims.b, i * dims.b, dims.b, dims.b);
  }
  return out;
}

Matrix partial_transpose(const Matrix& s, CompositeDims dims, Subsystem on) {
  require_composite(s, dims, "partial_transpose");
  Matrix out(s.rows(), s.cols());
  for (Index i = 0; i < dims.a; ++i) {
    for (Index j = 0; j < dims.a; ++j) {
      const auto block = s.block(i * dims.b, j * dims.b, dims.b, dims.b);
      if (on == Subsystem::A) {
        out.block(j * dims.b, i * dims.b, dims.b, dims.b) = block;
      } else {
        out.block(i * dims.b, j * dims.b, dims.b, dims.b) = block.transpose();
      }
    }
  }
  return out;
}

Matrix commutator(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "commutator");
  if (a.rows() != a.cols()) throw ValidationError("commutator: operands must be square");
  return a * b - b * a;
}

double comm_norm(const Matrix& a, const Matrix& b) { return commutator(a, b).norm(); }

double commute_threshold(const Matrix& a, const Matrix& b) {
  return kCommuteRelTol * (a.norm() * b.norm() + 1.0);
}

bool commutes(const Matrix& a, const Matrix& b) {
  return comm_norm(a, b) < commute_threshold(a, b);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

namespace pauli {

Matrix identity() { return Matrix::Identity(2, 2); }

Matrix x() {
  Matrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

Matrix y() {
  Matrix m(2, 2);
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}

Matrix z() {
  Matrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

}  // namespace pauli

}  // namespace pdecho::linalg
