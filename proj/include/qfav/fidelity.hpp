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
#include <cstdint>
#include <optional>
#include <string>

#include <Eigen/Eigenvalues>

#include "qfav/channels.hpp"
#include "qfav/matrix.hpp"
#include "qfav/pauli.hpp"
#include "qfav/states.hpp"

namespace qfav {

enum class FidelityMethod { closed_form, six_state, monte_carlo };

inline const char* to_string(FidelityMethod m) {
  switch (m) {
    case FidelityMethod::closed_form: return "closed_form";
    case FidelityMethod::six_state: return "six_state";
    case FidelityMethod::monte_carlo: return "monte_carlo";
  }
  return "unknown";
}

inline FidelityMethod fidelity_method_from_string(const std::string& s) {
  if (s == "closed_form") return FidelityMethod::closed_form;
  if (s == "six_state") return FidelityMethod::six_state;
  if (s == "monte_carlo") return FidelityMethod::monte_carlo;
  throw std::invalid_argument("unknown fidelity method '" + s + "'");
}

/// Result of an average-fidelity evaluation, with enough metadata to
/// reproduce it. samples, std_error, seed and rng are only populated by
/// the Monte-Carlo estimator.
struct FidelityReport {
  double value = 0.0;
  FidelityMethod method = FidelityMethod::closed_form;
  int n = 0;
  long samples = 0;
  double std_error = 0.0;
  std::optional<std::uint64_t> seed;
  std::string rng;
};

namespace detail {

/// Average fidelities live in [0, 1]. Rounding may leak out by a hair;
/// anything worse means the channel or the arithmetic is broken.
inline double checked_fidelity_value(double v, const std::string& what) {
  if (v < -1e-9 || v > 1.0 + 1e-9) {
    throw consistency_error(what + ": value " + num_str(v) +
                            " is outside [0, 1] beyond rounding");
  }
  return std::min(std::max(v, 0.0), 1.0);
}

inline void require_target_unitary(const ComplexMatrix& u, int n_channel,
                                   const std::string& what, double tol) {
  if (u.rows() != u.cols()) {
    throw std::invalid_argument(what + ": target matrix is not square");
  }
  const int n = qubits_for_dim(u.rows(), what);
  if (n != n_channel) {
    throw std::invalid_argument(what + ": target acts on " + std::to_string(n) +
                                " qubits, channel on " +
                                std::to_string(n_channel));
  }
  const double dev = unitarity_deviation(u);
  if (dev > tol) {
    throw validation_error(what + ": target is not unitary: max deviation " +
                           num_str(dev));
  }
}

// Eigenvalues of a positive matrix may come out of the solver a touch
// negative; within the clip they are rounding and get zeroed, below it
// the input was not a state.
inline RealVector clip_nonnegative(const RealVector& ev, const std::string& what) {
  constexpr double clip = 1e-10;
  RealVector out = ev;
  for (long i = 0; i < out.size(); ++i) {
    if (out[i] < -clip) {
      throw consistency_error(what + ": eigenvalue " + num_str(out[i]) +
                              " is negative beyond the rounding clip");
    }
    if (out[i] < 0.0) out[i] = 0.0;
  }
  return out;
}

}  // namespace detail

/// Fidelity tr(rho rho') of a pure rho against an arbitrary rho'.
inline double pure_fidelity(const DensityMatrix& rho,
                            const DensityMatrix& rho_prime) {
  if (rho.dim() != rho_prime.dim()) {
    throw std::invalid_argument("pure_fidelity: dimension mismatch");
  }
  const double p = purity(rho);
  if (std::abs(p - 1.0) > 1e-8) {
    throw std::invalid_argument("pure_fidelity: first state is not pure (tr(rho^2) = " +
                                num_str(p) + ")");
  }
  return real_checked(trace_product(rho.matrix(), rho_prime.matrix()),
                      "pure_fidelity");
}

/// Uhlmann fidelity (tr sqrt(sqrt(rho) rho' sqrt(rho)))^2 for arbitrary
/// mixed states. Reduces to tr(rho rho') when either argument is pure.
inline double uhlmann_fidelity(const DensityMatrix& rho,
                               const DensityMatrix& rho_prime) {
  if (rho.dim() != rho_prime.dim()) {
    throw std::invalid_argument("uhlmann_fidelity: dimension mismatch");
  }
  const ComplexMatrix herm =
      0.5 * (rho.matrix() + rho.matrix().adjoint().eval());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm);
  const RealVector ev = detail::clip_nonnegative(es.eigenvalues(), "uhlmann_fidelity");
  const ComplexMatrix sqrt_rho = es.eigenvectors() *
                                 ev.cwiseSqrt().asDiagonal() *
                                 es.eigenvectors().adjoint();
  ComplexMatrix inner = sqrt_rho * rho_prime.matrix() * sqrt_rho;
  inner = 0.5 * (inner + inner.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es_inner(inner, Eigen::EigenvaluesOnly);
  const RealVector inner_ev =
      detail::clip_nonnegative(es_inner.eigenvalues(), "uhlmann_fidelity");
  const double root_sum = inner_ev.cwiseSqrt().sum();
  const double value = root_sum * root_sum;
  return detail::checked_fidelity_value(value, "uhlmann_fidelity");
}

/// Average fidelity of the channel m against the target u over
/// Haar-random pure inputs, in closed form:
///
///   <F> = 1/N + 1/((N + 1) N^2) sum_j tr[U f_j U^dag M(f_j)],  N = 2^n,
///
/// where the sum runs over the 4^n - 1 traceless Pauli products. The sum
/// has 4^n - 1 terms of N^3 work each, so evaluation is capped at max_n
/// qubits; raise max_n explicitly (up to the dense cap of 8) if you are
/// prepared to wait.
inline FidelityReport average_fidelity(const ComplexMatrix& u, const Channel& m,
                                       int max_n = 5, double tol = default_tol) {
  detail::require_target_unitary(u, m.qubits(), "average_fidelity", tol);
  const int n = m.qubits();
  if (n > max_n) {
    throw std::invalid_argument("average_fidelity: " + std::to_string(n) +
                                " qubits exceeds max_n = " +
                                std::to_string(max_n) +
                                "; pass a larger max_n to override");
  }
  const double dim = static_cast<double>(dim_for_qubits(n));
  Complex acc(0.0, 0.0);
  for_each_basis_element(n, [&](long, const ComplexMatrix& f) {
    const ComplexMatrix rotated = u * f * u.adjoint();
    acc += trace_product(rotated, apply_to_operator(m, f));
  });
  const double value = 1.0 / dim +
                       real_checked(acc, "average_fidelity") /
                           ((dim + 1.0) * dim * dim);
  FidelityReport report;
  report.value = detail::checked_fidelity_value(value, "average_fidelity");
  report.method = FidelityMethod::closed_form;
  report.n = n;
  return report;
}

/// Single-qubit average fidelity as the mean of tr(U rho U^dag M(rho))
/// over the six axial Bloch states (1 +- sigma_j)/2. Equals
/// average_fidelity up to rounding; kept as an independent evaluation
/// path.
inline FidelityReport average_fidelity_six_state(const ComplexMatrix& u,
                                                 const Channel& m,
                                                 double tol = default_tol) {
  if (m.qubits() != 1) {
    throw std::invalid_argument("average_fidelity_six_state: channel must act on one qubit");
  }
  detail::require_target_unitary(u, 1, "average_fidelity_six_state", tol);
  const auto& sigma = pauli_matrices();
  const ComplexMatrix eye = ComplexMatrix::Identity(2, 2);
  double sum = 0.0;
  for (int axis = 1; axis <= 3; ++axis) {
    for (int sign : {+1, -1}) {
      const ComplexMatrix state = 0.5 * (eye + static_cast<double>(sign) * sigma[axis]);
      const DensityMatrix rho = DensityMatrix::unchecked(1, state);
      const ComplexMatrix rotated = u * state * u.adjoint();
      sum += real_checked(trace_product(rotated, apply(m, rho).matrix()),
                          "average_fidelity_six_state");
    }
  }
  FidelityReport report;
  report.value = detail::checked_fidelity_value(sum / 6.0,
                                                "average_fidelity_six_state");
  report.method = FidelityMethod::six_state;
  report.n = 1;
  return report;
}

/// Monte-Carlo estimate of the average fidelity: the sample mean of
/// tr(U rho_0 U^dag M(rho_0)) over Haar-random pure rho_0. The report
/// carries the unbiased standard error, the seed and the RNG identifier,
/// so a run is reproducible from its own output.
inline FidelityReport mc_average_fidelity(const ComplexMatrix& u, const Channel& m,
                                          long samples, std::uint64_t seed,
                                          double tol = default_tol) {
  detail::require_target_unitary(u, m.qubits(), "mc_average_fidelity", tol);
  if (samples < 2) {
    throw std::invalid_argument("mc_average_fidelity: needs at least 2 samples "
                                "for a standard error, got " +
                                std::to_string(samples));
  }
  const int n = m.qubits();
  RngStream rng(seed);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (long s = 0; s < samples; ++s) {
    const DensityMatrix rho0 = haar_random_pure(n, rng);
    const DensityMatrix evolved = apply(m, rho0);
    const DensityMatrix rotated =
        DensityMatrix::unchecked(n, u * rho0.matrix() * u.adjoint());
    const double f = pure_fidelity(rotated, evolved);
    sum += f;
    sum_sq += f * f;
  }
  const double count = static_cast<double>(samples);
  const double mean = sum / count;
  const double variance =
      std::max(0.0, (sum_sq - count * mean * mean) / (count - 1.0));
  FidelityReport report;
  report.value = detail::checked_fidelity_value(mean, "mc_average_fidelity");
  report.method = FidelityMethod::monte_carlo;
  report.n = n;
  report.samples = samples;
  report.std_error = std::sqrt(variance / count);
  report.seed = seed;
  report.rng = RngStream::algorithm();
  return report;
}

}  // namespace qfav
