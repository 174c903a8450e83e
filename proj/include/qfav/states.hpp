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

#include <string>
#include <utility>

#include <Eigen/Eigenvalues>

#include "qfav/matrix.hpp"
#include "qfav/pauli.hpp"
#include "qfav/rng.hpp"

namespace qfav {

/// Measured deviations of a square matrix from the density-matrix
/// contract. Useful both for validation and for reporting how badly a
/// candidate fails.
struct DensityDeviation {
  double hermiticity = 0.0;     // max entry of |m - m^dag|
  double trace = 0.0;           // |tr(m) - 1|
  double min_eigenvalue = 0.0;  // smallest eigenvalue of (m + m^dag)/2
};

inline DensityDeviation measure_density_deviation(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("measure_density_deviation: matrix is not square");
  }
  DensityDeviation dev;
  dev.hermiticity = (m - m.adjoint().eval()).cwiseAbs().maxCoeff();
  dev.trace = std::abs(m.trace() - Complex(1.0, 0.0));
  const ComplexMatrix herm = 0.5 * (m + m.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm, Eigen::EigenvaluesOnly);
  dev.min_eigenvalue = es.eigenvalues().minCoeff();
  return dev;
}

/// A 2^n x 2^n density matrix. Instances only come from construction
/// paths that guarantee validity (from_ket, validate_density) or from
/// unchecked(), whose caller takes on that guarantee.
class DensityMatrix {
 public:
  int qubits() const { return n_; }
  long dim() const { return mat_.rows(); }
  const ComplexMatrix& matrix() const { return mat_; }

  /// |psi><psi| after normalizing the ket. Pure by construction.
  static DensityMatrix from_ket(const ComplexVector& psi) {
    const int n = qubits_for_dim(psi.size(), "DensityMatrix::from_ket");
    const double norm = psi.norm();
    if (!(norm > 0.0)) {
      throw std::invalid_argument("DensityMatrix::from_ket: zero ket");
    }
    const ComplexVector unit = psi / norm;
    return DensityMatrix(n, unit * unit.adjoint());
  }

  /// Wraps a matrix the caller has already established to be a valid
  /// density matrix. No checks are run.
  static DensityMatrix unchecked(int n, ComplexMatrix m) {
    return DensityMatrix(n, std::move(m));
  }

 private:
  DensityMatrix(int n, ComplexMatrix m) : n_(n), mat_(std::move(m)) {}

  int n_;
  ComplexMatrix mat_;
};

/// Checks Hermiticity, unit trace and positivity at tolerance tol and
/// wraps the matrix. Each failed check gets its own diagnostic; shape
/// problems are argument errors, physics problems are validation errors.
inline DensityMatrix validate_density(const ComplexMatrix& m,
                                      double tol = default_tol) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("validate_density: matrix is not square");
  }
  const int n = qubits_for_dim(m.rows(), "validate_density");
  const DensityDeviation dev = measure_density_deviation(m);
  if (dev.hermiticity > tol) {
    throw validation_error("density matrix is not Hermitian: max entry deviation " +
                           num_str(dev.hermiticity));
  }
  if (dev.trace > tol) {
    throw validation_error("density matrix trace deviates from 1 by " +
                           num_str(dev.trace));
  }
  if (dev.min_eigenvalue < -tol) {
    throw validation_error("density matrix has negative eigenvalue " +
                           num_str(dev.min_eigenvalue));
  }
  return DensityMatrix::unchecked(n, m);
}

/// Coefficients of a state in the traceless Pauli-product basis.
/// w[j - 1] pairs with basis_element(j, n).
struct PolarizationVector {
  int n = 0;
  RealVector w;
};

/// w^j = tr(rho f_j) for every basis element. Real for Hermitian input;
/// the extraction checks that.
inline PolarizationVector polarization_expand(const DensityMatrix& rho) {
  PolarizationVector out;
  out.n = rho.qubits();
  out.w = RealVector::Zero((1L << (2 * out.n)) - 1);
  for_each_basis_element(out.n, [&](long j, const ComplexMatrix& f) {
    out.w[j - 1] = real_checked(trace_product(rho.matrix(), f),
                                "polarization_expand");
  });
  return out;
}

/// rho = (1/N)(1 + sum_j w^j f_j). Coefficient vectors outside the state
/// space produce a matrix with a negative eigenvalue, reported as a
/// validation error.
inline DensityMatrix polarization_reconstruct(const PolarizationVector& w) {
  if (w.n < 1 || w.n > max_dense_qubits) {
    throw std::invalid_argument("polarization_reconstruct: qubit count " +
                                std::to_string(w.n) + " outside [1, " +
                                std::to_string(max_dense_qubits) + "]");
  }
  const long dim = dim_for_qubits(w.n);
  if (w.w.size() != dim * dim - 1) {
    throw std::invalid_argument("polarization_reconstruct: expected " +
                                std::to_string(dim * dim - 1) +
                                " coefficients, got " +
                                std::to_string(w.w.size()));
  }
  ComplexMatrix m = ComplexMatrix::Identity(dim, dim);
  for_each_basis_element(w.n, [&](long j, const ComplexMatrix& f) {
    m += w.w[j - 1] * f;
  });
  m /= static_cast<double>(dim);
  try {
    return validate_density(m);
  } catch (const validation_error& e) {
    throw validation_error(std::string("inadmissible polarization vector: ") +
                           e.what());
  }
}

/// tr(rho^2); 1 on pure states, 1/2^n on the maximally mixed state.
inline double purity(const DensityMatrix& rho) {
  return real_checked(trace_product(rho.matrix(), rho.matrix()), "purity");
}

/// Haar-random pure state: a ket of independent standard complex
/// Gaussians, normalized. The Gaussian vector is invariant under
/// unitaries, so the normalized ket is uniform on the sphere.
inline DensityMatrix haar_random_pure(int n, RngStream& rng) {
  if (n < 1 || n > max_dense_qubits) {
    throw std::invalid_argument("haar_random_pure: qubit count " +
                                std::to_string(n) + " outside [1, " +
                                std::to_string(max_dense_qubits) + "]");
  }
  const long dim = dim_for_qubits(n);
  ComplexVector psi(dim);
  for (long i = 0; i < dim; ++i) psi[i] = rng.gaussian_complex();
  return DensityMatrix::from_ket(psi);
}

}  // namespace qfav
