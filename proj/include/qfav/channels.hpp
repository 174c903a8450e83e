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
#include <vector>

#include "qfav/matrix.hpp"
#include "qfav/pauli.hpp"
#include "qfav/states.hpp"

namespace qfav {

struct TracePreservationReport {
  double max_deviation = 0.0;  // max entry of |sum_i K_i^dag K_i - 1|
  bool ok = false;
};

/// A quantum channel, stored either as a single unitary or as a Kraus
/// family. The checked factories enforce the defining condition (U^dag U
/// = 1, sum K^dag K = 1); the unchecked ones only fix the shape, so that
/// a defective channel can still be constructed and measured.
class Channel {
 public:
  enum class Kind { unitary, kraus };

  static Channel unitary(ComplexMatrix u, double tol = default_tol) {
    Channel c = unitary_unchecked(std::move(u));
    const double dev = unitarity_deviation(c.u_);
    if (dev > tol) {
      throw validation_error("channel matrix is not unitary: max deviation " +
                             num_str(dev));
    }
    return c;
  }

  static Channel kraus(std::vector<ComplexMatrix> ops, double tol = default_tol) {
    Channel c = kraus_unchecked(std::move(ops));
    const double dev = c.trace_preservation_deviation();
    if (dev > tol) {
      throw validation_error(
          "Kraus family is not trace preserving: max deviation of "
          "sum K^dag K from 1 is " + num_str(dev));
    }
    return c;
  }

  static Channel unitary_unchecked(ComplexMatrix u) {
    if (u.rows() != u.cols()) {
      throw std::invalid_argument("Channel: unitary matrix is not square");
    }
    const int n = qubits_for_dim(u.rows(), "Channel");
    Channel c;
    c.kind_ = Kind::unitary;
    c.n_ = n;
    c.u_ = std::move(u);
    return c;
  }

  static Channel kraus_unchecked(std::vector<ComplexMatrix> ops) {
    if (ops.empty()) {
      throw std::invalid_argument("Channel: empty Kraus family");
    }
    const long dim = ops.front().rows();
    for (const auto& k : ops) {
      if (k.rows() != dim || k.cols() != dim) {
        throw std::invalid_argument(
            "Channel: Kraus operators must all be square with one common dimension");
      }
    }
    const int n = qubits_for_dim(dim, "Channel");
    Channel c;
    c.kind_ = Kind::kraus;
    c.n_ = n;
    c.ops_ = std::move(ops);
    return c;
  }

  Kind kind() const { return kind_; }
  int qubits() const { return n_; }
  long dim() const { return dim_for_qubits(n_); }

  const ComplexMatrix& unitary_matrix() const {
    if (kind_ != Kind::unitary) {
      throw std::invalid_argument("Channel: not a unitary channel");
    }
    return u_;
  }

  const std::vector<ComplexMatrix>& kraus_ops() const {
    if (kind_ != Kind::kraus) {
      throw std::invalid_argument("Channel: not a Kraus channel");
    }
    return ops_;
  }

  double trace_preservation_deviation() const {
    if (kind_ == Kind::unitary) return unitarity_deviation(u_);
    ComplexMatrix acc = ComplexMatrix::Zero(dim(), dim());
    for (const auto& k : ops_) acc += k.adjoint() * k;
    return (acc - ComplexMatrix::Identity(dim(), dim())).cwiseAbs().maxCoeff();
  }

 private:
  Channel() = default;

  Kind kind_ = Kind::unitary;
  int n_ = 0;
  ComplexMatrix u_;
  std::vector<ComplexMatrix> ops_;
};

/// Raw action of the channel on an arbitrary operator (no output
/// validation): U a U^dag or sum_i K_i a K_i^dag.
inline ComplexMatrix apply_to_operator(const Channel& c, const ComplexMatrix& a) {
  if (a.rows() != c.dim() || a.cols() != c.dim()) {
    throw std::invalid_argument("apply_to_operator: operator dimension " +
                                std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) +
                                " does not match the channel (" +
                                std::to_string(c.dim()) + ")");
  }
  if (c.kind() == Channel::Kind::unitary) {
    const ComplexMatrix& u = c.unitary_matrix();
    return u * a * u.adjoint();
  }
  ComplexMatrix out = ComplexMatrix::Zero(c.dim(), c.dim());
  for (const auto& k : c.kraus_ops()) out += k * a * k.adjoint();
  return out;
}

/// Action on a state. The output is re-validated; a failure here means
/// the channel itself is defective (e.g. built unchecked), which is a
/// consistency problem rather than bad input.
inline DensityMatrix apply(const Channel& c, const DensityMatrix& rho) {
  if (rho.qubits() != c.qubits()) {
    throw std::invalid_argument("apply: state acts on " +
                                std::to_string(rho.qubits()) +
                                " qubits, channel on " +
                                std::to_string(c.qubits()));
  }
  ComplexMatrix out = apply_to_operator(c, rho.matrix());
  try {
    return validate_density(out);
  } catch (const validation_error& e) {
    throw consistency_error(std::string("channel defect: output state failed validation: ") +
                            e.what());
  }
}

inline TracePreservationReport check_trace_preserving(const Channel& c,
                                                      double tol = default_tol) {
  TracePreservationReport report;
  report.max_deviation = c.trace_preservation_deviation();
  report.ok = report.max_deviation <= tol;
  return report;
}

/// Depolarizing channel: rho -> (1 - p) rho + p 1/2^n. Realized by the
/// Kraus family sqrt(1 - p + p/4^n) 1 together with sqrt(p/4^n) f_j over
/// the 4^n - 1 traceless Pauli products.
inline Channel depolarizing(int n, double p) {
  if (n < 1 || n > max_dense_qubits) {
    throw std::invalid_argument("depolarizing: qubit count " + std::to_string(n) +
                                " outside [1, " +
                                std::to_string(max_dense_qubits) + "]");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("depolarizing: p = " + num_str(p) +
                                " outside [0, 1]");
  }
  const long dim = dim_for_qubits(n);
  const double strings = static_cast<double>(dim) * static_cast<double>(dim);
  std::vector<ComplexMatrix> ops;
  ops.reserve(static_cast<std::size_t>(strings));
  ops.push_back(std::sqrt(1.0 - p + p / strings) *
                ComplexMatrix::Identity(dim, dim));
  const double weight = std::sqrt(p / strings);
  for_each_basis_element(n, [&](long, const ComplexMatrix& f) {
    ops.push_back(weight * f);
  });
  return Channel::kraus(std::move(ops));
}

/// Single-qubit amplitude damping with decay probability gamma.
inline Channel amplitude_damping(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("amplitude_damping: gamma = " + num_str(gamma) +
                                " outside [0, 1]");
  }
  ComplexMatrix k0{{1.0, 0.0}, {0.0, std::sqrt(1.0 - gamma)}};
  ComplexMatrix k1{{0.0, std::sqrt(gamma)}, {0.0, 0.0}};
  return Channel::kraus({std::move(k0), std::move(k1)});
}

/// Composition outer after inner, as the Kraus family of all pairwise
/// products. The result is always stored in Kraus form.
inline Channel compose(const Channel& outer, const Channel& inner) {
  if (outer.qubits() != inner.qubits()) {
    throw std::invalid_argument("compose: channels act on different qubit counts");
  }
  auto ops_of = [](const Channel& c) -> std::vector<ComplexMatrix> {
    if (c.kind() == Channel::Kind::unitary) return {c.unitary_matrix()};
    return c.kraus_ops();
  };
  const auto outer_ops = ops_of(outer);
  const auto inner_ops = ops_of(inner);
  std::vector<ComplexMatrix> ops;
  ops.reserve(outer_ops.size() * inner_ops.size());
  for (const auto& a : outer_ops) {
    for (const auto& b : inner_ops) ops.push_back(a * b);
  }
  return Channel::kraus(std::move(ops));
}

}  // namespace qfav
