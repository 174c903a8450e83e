// Copyright 2026 The qfav developers
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

#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "qfav/errors.hpp"

namespace qfav {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Dense operations are capped at 8 qubits (256 x 256 matrices).
inline constexpr int max_dense_qubits = 8;

/// Default tolerance for validity checks: Hermiticity, trace, minimum
/// eigenvalue, unitarity, trace preservation.
inline constexpr double default_tol = 1e-9;

/// Residual imaginary parts at or above this threshold are treated as
/// bugs rather than rounding noise.
inline constexpr double imag_tol = 1e-10;

inline std::string num_str(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

inline bool is_power_of_two(long value) {
  return value > 0 && (value & (value - 1)) == 0;
}

inline long dim_for_qubits(int n) { return 1L << n; }

/// Qubit count for a 2^n-dimensional space; rejects dimensions that are
/// not powers of two or that exceed the dense cap.
inline int qubits_for_dim(long dim, const std::string& what) {
  if (dim < 2 || !is_power_of_two(dim)) {
    throw std::invalid_argument(what + ": dimension " + std::to_string(dim) +
                                " is not a power of two >= 2");
  }
  int n = 0;
  while ((1L << n) < dim) ++n;
  if (n > max_dense_qubits) {
    throw std::invalid_argument(what + ": " + std::to_string(n) +
                                " qubits exceeds the dense cap of " +
                                std::to_string(max_dense_qubits));
  }
  return n;
}

/// Kronecker product; the result dimension is the product of the inputs'.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  return Eigen::kroneckerProduct(a, b);
}

/// Hilbert-Schmidt inner product tr(A^dag B).
inline Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("hs_inner: shape mismatch (" +
                                std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " vs " +
                                std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()) + ")");
  }
  return a.conjugate().cwiseProduct(b).sum();
}

/// tr(A B) without forming the product.
inline Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw std::invalid_argument("trace_product: shape mismatch");
  }
  return a.transpose().cwiseProduct(b).sum();
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  }
  return (a - b).cwiseAbs().maxCoeff();
}

/// Largest entry of U^dag U - 1.
inline double unitarity_deviation(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) {
    throw std::invalid_argument("unitarity_deviation: matrix is not square");
  }
  return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols()))
      .cwiseAbs()
      .maxCoeff();
}

/// Real part of z, after checking that the imaginary part is rounding
/// noise. Quantities fed through here are real by construction (traces of
/// Hermitian products), so anything above tol means the inputs broke an
/// assumption somewhere upstream.
inline double real_checked(Complex z, const std::string& what,
                           double tol = imag_tol) {
  if (!(std::abs(z.imag()) < tol)) {
    throw consistency_error(what + ": residual imaginary part " +
                            num_str(z.imag()));
  }
  return z.real();
}

}  // namespace qfav
