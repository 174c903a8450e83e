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

#include <array>
#include <cstdint>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "qfav/matrix.hpp"

namespace qfav {

/// Symbolic n-fold Kronecker product of Pauli matrices.
///
/// Labels follow the usual numbering: 0 is the 2x2 identity and 1, 2, 3
/// are sigma_x, sigma_y, sigma_z. The first label is the leftmost tensor
/// factor.
class PauliString {
 public:
  explicit PauliString(std::vector<std::uint8_t> labels)
      : labels_(std::move(labels)) {
    if (labels_.empty()) {
      throw std::invalid_argument("PauliString: needs at least one qubit");
    }
    for (auto l : labels_) {
      if (l > 3) {
        throw std::invalid_argument("PauliString: label " + std::to_string(l) +
                                    " outside [0, 3]");
      }
    }
  }

  static PauliString identity(int n) {
    if (n < 1) {
      throw std::invalid_argument("PauliString: qubit count must be positive");
    }
    return PauliString(std::vector<std::uint8_t>(static_cast<std::size_t>(n), 0));
  }

  int qubits() const { return static_cast<int>(labels_.size()); }
  std::uint8_t label(int i) const { return labels_.at(static_cast<std::size_t>(i)); }
  const std::vector<std::uint8_t>& labels() const { return labels_; }

  bool is_identity() const {
    for (auto l : labels_) {
      if (l != 0) return false;
    }
    return true;
  }

  /// "IXZ"-style rendering, first factor leftmost.
  std::string str() const {
    static constexpr char names[4] = {'I', 'X', 'Y', 'Z'};
    std::string s;
    s.reserve(labels_.size());
    for (auto l : labels_) s.push_back(names[l]);
    return s;
  }

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  std::vector<std::uint8_t> labels_;
};

/// The four single-qubit Pauli matrices, indexed by label.
inline const std::array<ComplexMatrix, 4>& pauli_matrices() {
  static const std::array<ComplexMatrix, 4> mats = [] {
    const Complex i(0.0, 1.0);
    std::array<ComplexMatrix, 4> m;
    m[0] = ComplexMatrix{{1, 0}, {0, 1}};
    m[1] = ComplexMatrix{{0, 1}, {1, 0}};
    m[2] = ComplexMatrix{{0, -i}, {i, 0}};
    m[3] = ComplexMatrix{{1, 0}, {0, -1}};
    return m;
  }();
  return mats;
}

/// Basis element f_j for j in [1, 4^n - 1]: the labels are the base-4
/// digits of j, most significant digit = first tensor factor. j = 0 (the
/// identity) is excluded; the remaining strings are the traceless part of
/// the operator basis.
inline PauliString basis_element(long j, int n) {
  if (n < 1 || n > max_dense_qubits) {
    throw std::invalid_argument("basis_element: qubit count " +
                                std::to_string(n) + " outside [1, " +
                                std::to_string(max_dense_qubits) + "]");
  }
  const long count = (1L << (2 * n)) - 1;
  if (j < 1 || j > count) {
    throw std::invalid_argument("basis_element: index " + std::to_string(j) +
                                " outside [1, " + std::to_string(count) + "]");
  }
  std::vector<std::uint8_t> labels(static_cast<std::size_t>(n));
  long rest = j;
  for (int i = n - 1; i >= 0; --i) {
    labels[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(rest & 3);
    rest >>= 2;
  }
  return PauliString(std::move(labels));
}

/// Inverse of basis_element. The all-identity string carries no index.
inline long basis_index(const PauliString& p) {
  long j = 0;
  for (int i = 0; i < p.qubits(); ++i) j = (j << 2) | p.label(i);
  if (j == 0) {
    throw std::invalid_argument("basis_index: the identity string is not a basis element");
  }
  return j;
}

/// Dense 2^n x 2^n matrix of the Pauli product.
inline ComplexMatrix to_matrix(const PauliString& p) {
  if (p.qubits() > max_dense_qubits) {
    throw std::invalid_argument("to_matrix: " + std::to_string(p.qubits()) +
                                " qubits exceeds the dense cap of " +
                                std::to_string(max_dense_qubits));
  }
  const auto& sigma = pauli_matrices();
  ComplexMatrix out = sigma[p.label(0)];
  for (int i = 1; i < p.qubits(); ++i) out = kron(out, sigma[p.label(i)]);
  return out;
}

/// Factorwise product of two Pauli strings. The returned phase is an
/// exact unit element of {1, i, -1, -i} satisfying
///   phase * to_matrix(result) == to_matrix(a) * to_matrix(b).
inline std::pair<Complex, PauliString> pauli_product(const PauliString& a,
                                                     const PauliString& b) {
  if (a.qubits() != b.qubits()) {
    throw std::invalid_argument("pauli_product: qubit count mismatch (" +
                                std::to_string(a.qubits()) + " vs " +
                                std::to_string(b.qubits()) + ")");
  }
  // sigma_a sigma_b = i^kPhaseExp[a][b] * sigma_{kProdLabel[a][b]}
  static constexpr std::uint8_t kProdLabel[4][4] = {
      {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static constexpr std::uint8_t kPhaseExp[4][4] = {
      {0, 0, 0, 0}, {0, 0, 1, 3}, {0, 3, 0, 1}, {0, 1, 3, 0}};
  static const Complex kUnit[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

  std::vector<std::uint8_t> labels(static_cast<std::size_t>(a.qubits()));
  int exp = 0;
  for (int i = 0; i < a.qubits(); ++i) {
    const auto la = a.label(i);
    const auto lb = b.label(i);
    labels[static_cast<std::size_t>(i)] = kProdLabel[la][lb];
    exp = (exp + kPhaseExp[la][lb]) & 3;
  }
  return {kUnit[exp], PauliString(std::move(labels))};
}

namespace detail {

/// Dense basis matrices for small n, built once. Larger n are generated
/// on the fly by for_each_basis_element to keep memory bounded.
inline const std::vector<ComplexMatrix>& dense_basis_cache(int n) {
  static std::array<std::vector<ComplexMatrix>, 4> cache;
  static std::array<std::once_flag, 4> flags;
  std::call_once(flags[static_cast<std::size_t>(n)], [n] {
    const long count = (1L << (2 * n)) - 1;
    auto& slot = cache[static_cast<std::size_t>(n)];
    slot.reserve(static_cast<std::size_t>(count));
    for (long j = 1; j <= count; ++j) {
      slot.push_back(to_matrix(basis_element(j, n)));
    }
  });
  return cache[static_cast<std::size_t>(n)];
}

}  // namespace detail

/// Calls fn(j, f_j) for every basis index j in [1, 4^n - 1], in order.
template <typename Fn>
void for_each_basis_element(int n, Fn&& fn) {
  if (n < 1 || n > max_dense_qubits) {
    throw std::invalid_argument("for_each_basis_element: qubit count " +
                                std::to_string(n) + " outside [1, " +
                                std::to_string(max_dense_qubits) + "]");
  }
  if (n <= 3) {
    const auto& basis = detail::dense_basis_cache(n);
    for (long j = 1; j <= static_cast<long>(basis.size()); ++j) {
      fn(j, basis[static_cast<std::size_t>(j - 1)]);
    }
    return;
  }
  const long count = (1L << (2 * n)) - 1;
  for (long j = 1; j <= count; ++j) fn(j, to_matrix(basis_element(j, n)));
}

}  // namespace qfav
