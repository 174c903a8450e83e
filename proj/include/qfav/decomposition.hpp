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

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qfav/channels.hpp"
#include "qfav/matrix.hpp"
#include "qfav/pauli.hpp"
#include "qfav/states.hpp"

namespace qfav {

/// A signed combination of pure states whose weighted sum reproduces an
/// observable: sum_k coeff_k * state_k. Coefficients are +-1 for every
/// decomposition produced here.
struct PureStateCombination {
  struct Term {
    double coeff;
    DensityMatrix state;
  };
  int n = 0;
  std::vector<Term> terms;
};

namespace detail {

// Per-qubit axial states are labelled by (axis - 1) * 2 + (0 for +, 1 for -),
// so codes 0..5 run +x, -x, +y, -y, +z, -z. A vector of codes labels a
// product state exactly, which is what preparation deduplication keys on.
inline std::uint8_t axial_code(int axis, int sign) {
  return static_cast<std::uint8_t>((axis - 1) * 2 + (sign < 0 ? 1 : 0));
}
inline int axis_of_code(std::uint8_t code) { return code / 2 + 1; }
inline int sign_of_code(std::uint8_t code) { return code % 2 == 0 ? +1 : -1; }

/// (1 + sign * sigma_axis) / 2: the pure state polarized along +-axis.
inline ComplexMatrix axial_state_matrix(int axis, int sign) {
  if (axis < 1 || axis > 3) {
    throw std::invalid_argument("axial_state_matrix: axis must be 1, 2 or 3");
  }
  return 0.5 * (ComplexMatrix::Identity(2, 2) +
                static_cast<double>(sign) * pauli_matrices()[axis]);
}

inline ComplexMatrix product_state_matrix(const std::vector<std::uint8_t>& code) {
  ComplexMatrix out = axial_state_matrix(axis_of_code(code.at(0)), sign_of_code(code.at(0)));
  for (std::size_t i = 1; i < code.size(); ++i) {
    out = kron(out, axial_state_matrix(axis_of_code(code[i]), sign_of_code(code[i])));
  }
  return out;
}

struct AxialTerm {
  double coeff = 1.0;
  std::vector<std::uint8_t> code;
};

/// The 2^n signed product-state branches of a Pauli string: each sigma
/// factor splits into its +- eigenstates with signs +-1, each identity
/// factor splits into the two identity_axis eigenstates with signs +1.
inline std::vector<AxialTerm> axial_terms(const PauliString& f, int identity_axis) {
  if (identity_axis < 1 || identity_axis > 3) {
    throw std::invalid_argument("axial_terms: identity_axis must be 1, 2 or 3");
  }
  const int n = f.qubits();
  std::vector<AxialTerm> terms;
  terms.reserve(1uL << n);
  for (long mask = 0; mask < (1L << n); ++mask) {
    AxialTerm t;
    t.code.resize(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) {
      const bool minus = (mask >> (n - 1 - q)) & 1;
      const int label = f.label(q);
      if (label == 0) {
        t.code[static_cast<std::size_t>(q)] = axial_code(identity_axis, minus ? -1 : +1);
      } else {
        t.code[static_cast<std::size_t>(q)] = axial_code(label, minus ? -1 : +1);
        if (minus) t.coeff = -t.coeff;
      }
    }
    terms.push_back(std::move(t));
  }
  return terms;
}

}  // namespace detail

/// sigma_axis = rho_{+axis} - rho_{-axis}: the difference of its two
/// eigenprojectors.
inline PureStateCombination decompose_single_qubit_pauli(int axis) {
  if (axis < 1 || axis > 3) {
    throw std::invalid_argument("decompose_single_qubit_pauli: axis must be 1, 2 or 3");
  }
  PureStateCombination out;
  out.n = 1;
  out.terms.push_back({+1.0, DensityMatrix::unchecked(1, detail::axial_state_matrix(axis, +1))});
  out.terms.push_back({-1.0, DensityMatrix::unchecked(1, detail::axial_state_matrix(axis, -1))});
  return out;
}

/// 1 = rho_{+axis} + rho_{-axis}: completeness of the same projectors,
/// along whichever axis the caller prefers.
inline PureStateCombination decompose_identity_factor(int axis) {
  if (axis < 1 || axis > 3) {
    throw std::invalid_argument("decompose_identity_factor: axis must be 1, 2 or 3");
  }
  PureStateCombination out;
  out.n = 1;
  out.terms.push_back({+1.0, DensityMatrix::unchecked(1, detail::axial_state_matrix(axis, +1))});
  out.terms.push_back({+1.0, DensityMatrix::unchecked(1, detail::axial_state_matrix(axis, -1))});
  return out;
}

/// Tensor-distributes the per-factor decompositions of a Pauli string
/// into 2^n signed pure product states. Identity factors split along
/// identity_axis (z by default) with both branches positive, sigma
/// factors split into their +- eigenstates with signs +-1. The signed sum
/// of the terms is exactly to_matrix(f).
inline PureStateCombination decompose_pauli_string(const PauliString& f,
                                                   int identity_axis = 3) {
  if (f.is_identity()) {
    throw std::invalid_argument(
        "decompose_pauli_string: the all-identity string is not a basis element; "
        "decompose_identity_factor handles single identity factors");
  }
  if (f.qubits() > max_dense_qubits) {
    throw std::invalid_argument("decompose_pauli_string: " +
                                std::to_string(f.qubits()) +
                                " qubits exceeds the dense cap of " +
                                std::to_string(max_dense_qubits));
  }
  PureStateCombination out;
  out.n = f.qubits();
  for (auto& t : detail::axial_terms(f, identity_axis)) {
    out.terms.push_back(
        {t.coeff, DensityMatrix::unchecked(out.n, detail::product_state_matrix(t.code))});
  }
  return out;
}

/// The two stated ways of expanding sigma_mu (x) sigma_nu through the
/// simple idempotents P_{+-ab} = (1 +- sigma_a (x) sigma_b)/2.
enum class IdempotentBranch {
  /// (P_{+mu,nu} - P_{-mu,nu})(P_{+nu,mu} + P_{-nu,mu}); requires mu > nu.
  swapped,
  /// (P_{+mu,0} - P_{-mu,0})(P_{+0,nu} - P_{-0,nu}); requires mu, nu >= 1.
  factored,
};

/// Expands sigma_mu (x) sigma_nu into four signed rank-1 projectors via
/// products of commuting idempotents. Both branches are self-checked:
/// each term must be a rank-1 projector and the signed sum must rebuild
/// the target.
inline PureStateCombination two_qubit_idempotent_decomposition(int mu, int nu,
                                                               IdempotentBranch branch) {
  if (mu < 0 || mu > 3 || nu < 0 || nu > 3) {
    throw std::invalid_argument("two_qubit_idempotent_decomposition: labels must be in [0, 3]");
  }
  if (mu == 0 && nu == 0) {
    throw std::invalid_argument("two_qubit_idempotent_decomposition: (0, 0) is the identity");
  }
  if (branch == IdempotentBranch::swapped && !(mu > nu)) {
    throw std::invalid_argument(
        "two_qubit_idempotent_decomposition: the swapped branch requires mu > nu");
  }
  if (branch == IdempotentBranch::factored && !(mu >= 1 && nu >= 1)) {
    throw std::invalid_argument(
        "two_qubit_idempotent_decomposition: the factored branch requires mu, nu >= 1");
  }
  const auto& sigma = pauli_matrices();
  const ComplexMatrix eye = ComplexMatrix::Identity(4, 4);
  auto idempotent = [&](int a, int b, int sign) {
    return ComplexMatrix(0.5 * (eye + static_cast<double>(sign) * kron(sigma[a], sigma[b])));
  };

  PureStateCombination out;
  out.n = 2;
  ComplexMatrix signed_sum = ComplexMatrix::Zero(4, 4);
  for (int s : {+1, -1}) {
    for (int t : {+1, -1}) {
      ComplexMatrix term;
      double coeff;
      if (branch == IdempotentBranch::swapped) {
        term = idempotent(mu, nu, s) * idempotent(nu, mu, t);
        coeff = static_cast<double>(s);
      } else {
        term = idempotent(mu, 0, s) * idempotent(0, nu, t);
        coeff = static_cast<double>(s * t);
      }
      const double trace_dev = std::abs(term.trace() - Complex(1.0, 0.0));
      const double idem_dev = max_abs_diff(term * term, term);
      if (trace_dev > 1e-10 || idem_dev > 1e-10) {
        throw consistency_error(
            "two_qubit_idempotent_decomposition: term is not a rank-1 projector "
            "(trace deviation " + num_str(trace_dev) + ", idempotency deviation " +
            num_str(idem_dev) + ")");
      }
      signed_sum += coeff * term;
      out.terms.push_back({coeff, DensityMatrix::unchecked(2, std::move(term))});
    }
  }
  if (max_abs_diff(signed_sum, kron(sigma[mu], sigma[nu])) > 1e-12) {
    throw consistency_error(
        "two_qubit_idempotent_decomposition: signed sum does not rebuild the target");
  }
  return out;
}

/// A measurement protocol for the average fidelity of any channel against
/// a fixed target U:
///
///   <F>(M) = offset + scale * sum_{s,t} weight(s, t) tr[projector_s M(preparation_t)]
///
/// with offset = 1/N and scale = 1/((N + 1) N^2). Preparations are the
/// deduplicated axial product states drawn from the basis decompositions
/// (at most 6^n of them); projectors are the same states conjugated by U.
struct ProtocolSpec {
  int n = 0;
  std::vector<DensityMatrix> preparations;
  std::vector<DensityMatrix> projectors;
  RealMatrix weight;  // indexed (projector, preparation)
  double offset = 0.0;
  double scale = 0.0;
};

/// Builds the protocol for a target unitary. Every basis element f_j
/// expands into 2^n signed product states; collecting the expansion
/// coefficients into a matrix C (basis element x preparation) turns the
/// closed-form sum into the quadratic form C^T C over preparation pairs,
/// which is the weight matrix stored here.
///
/// Preparation counts grow as 6^n, so the builder is capped at n <= 3.
inline ProtocolSpec build_protocol(const ComplexMatrix& u, int n,
                                   double tol = default_tol) {
  if (n < 1 || n > 3) {
    throw std::invalid_argument("build_protocol: qubit count " + std::to_string(n) +
                                " outside [1, 3]");
  }
  const long dim = dim_for_qubits(n);
  if (u.rows() != dim || u.cols() != dim) {
    throw std::invalid_argument("build_protocol: target must be " +
                                std::to_string(dim) + "x" + std::to_string(dim) +
                                " for n = " + std::to_string(n));
  }
  const double unitary_dev = unitarity_deviation(u);
  if (unitary_dev > tol) {
    throw validation_error("build_protocol: target is not unitary: max deviation " +
                           num_str(unitary_dev));
  }

  const long basis_count = dim * dim - 1;
  std::vector<std::vector<detail::AxialTerm>> expansions;
  expansions.reserve(static_cast<std::size_t>(basis_count));
  std::map<std::vector<std::uint8_t>, int> index_of;
  for (long j = 1; j <= basis_count; ++j) {
    expansions.push_back(detail::axial_terms(basis_element(j, n), 3));
    for (const auto& t : expansions.back()) index_of.emplace(t.code, 0);
  }
  int next = 0;
  for (auto& entry : index_of) entry.second = next++;

  RealMatrix coeffs = RealMatrix::Zero(basis_count, next);
  for (long j = 0; j < basis_count; ++j) {
    for (const auto& t : expansions[static_cast<std::size_t>(j)]) {
      coeffs(j, index_of.at(t.code)) = t.coeff;
    }
  }

  ProtocolSpec protocol;
  protocol.n = n;
  protocol.preparations.reserve(static_cast<std::size_t>(next));
  protocol.projectors.reserve(static_cast<std::size_t>(next));
  for (const auto& entry : index_of) {
    const ComplexMatrix prep = detail::product_state_matrix(entry.first);
    protocol.preparations.push_back(DensityMatrix::unchecked(n, prep));
    protocol.projectors.push_back(
        DensityMatrix::unchecked(n, u * prep * u.adjoint()));
  }
  protocol.weight = coeffs.transpose() * coeffs;
  const double dimension = static_cast<double>(dim);
  protocol.offset = 1.0 / dimension;
  protocol.scale = 1.0 / ((dimension + 1.0) * dimension * dimension);
  return protocol;
}

/// Runs the protocol against a concrete channel. Agrees with
/// average_fidelity(u, m) to rounding for every trace-preserving channel.
inline double evaluate_protocol(const ProtocolSpec& protocol, const Channel& m) {
  if (protocol.n != m.qubits()) {
    throw std::invalid_argument("evaluate_protocol: protocol is for " +
                                std::to_string(protocol.n) +
                                " qubits, channel acts on " +
                                std::to_string(m.qubits()));
  }
  const long projector_count = static_cast<long>(protocol.projectors.size());
  const long preparation_count = static_cast<long>(protocol.preparations.size());
  if (protocol.weight.rows() != projector_count ||
      protocol.weight.cols() != preparation_count) {
    throw std::invalid_argument("evaluate_protocol: weight matrix shape does not "
                                "match the preparation/projector counts");
  }
  double acc = 0.0;
  for (long t = 0; t < preparation_count; ++t) {
    const ComplexMatrix evolved = apply(m, protocol.preparations[static_cast<std::size_t>(t)]).matrix();
    for (long s = 0; s < projector_count; ++s) {
      const double w = protocol.weight(s, t);
      if (w == 0.0) continue;
      acc += w * real_checked(
                     trace_product(protocol.projectors[static_cast<std::size_t>(s)].matrix(),
                                   evolved),
                     "evaluate_protocol");
    }
  }
  return protocol.offset + protocol.scale * acc;
}

}  // namespace qfav
