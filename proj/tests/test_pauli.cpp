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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "qfav/pauli.hpp"
#include "support.hpp"

using qfav::basis_element;
using qfav::basis_index;
using qfav::Complex;
using qfav::ComplexMatrix;
using qfav::PauliString;
using qfav::pauli_product;
using qfav::to_matrix;

namespace {

PauliString str_of(std::vector<std::uint8_t> labels) {
  return PauliString(std::move(labels));
}

}  // namespace

TEST_CASE("basis indexing is base-4 with the first factor most significant") {
  REQUIRE(basis_element(3, 1) == str_of({3}));
  REQUIRE(basis_element(5, 2) == str_of({1, 1}));
  REQUIRE(basis_element(1, 2) == str_of({0, 1}));
  REQUIRE(basis_element(4, 2) == str_of({1, 0}));
  REQUIRE(basis_element(63, 3) == str_of({3, 3, 3}));
  REQUIRE(basis_element(5, 2).str() == "XX");

  // 16 = 4^2 is one past the end for two qubits.
  REQUIRE_THROWS_AS(basis_element(16, 2), std::invalid_argument);
  REQUIRE_THROWS_AS(basis_element(0, 2), std::invalid_argument);
  REQUIRE_THROWS_AS(basis_element(-1, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(basis_element(1, 0), std::invalid_argument);
}

TEST_CASE("basis_element and basis_index are inverse bijections") {
  for (int n = 1; n <= 3; ++n) {
    const long count = (1L << (2 * n)) - 1;
    for (long j = 1; j <= count; ++j) {
      REQUIRE(basis_index(basis_element(j, n)) == j);
    }
  }
  REQUIRE_THROWS_AS(basis_index(PauliString::identity(2)), std::invalid_argument);
}

TEST_CASE("to_matrix matches the hand-built Kronecker products") {
  // Frozen single-qubit matrices.
  const ComplexMatrix z = to_matrix(str_of({3}));
  REQUIRE(z(0, 0) == Complex(1, 0));
  REQUIRE(z(1, 1) == Complex(-1, 0));
  REQUIRE(z(0, 1) == Complex(0, 0));

  const ComplexMatrix y = to_matrix(str_of({2}));
  REQUIRE(y(0, 1) == Complex(0, -1));
  REQUIRE(y(1, 0) == Complex(0, 1));

  // sigma_x (x) sigma_z written out entry by entry.
  ComplexMatrix xz_expected(4, 4);
  xz_expected << 0, 0, 1, 0,
                 0, 0, 0, -1,
                 1, 0, 0, 0,
                 0, -1, 0, 0;
  REQUIRE(qfav::max_abs_diff(to_matrix(str_of({1, 3})), xz_expected) == 0.0);

  // Identity stays identity at any width.
  REQUIRE(qfav::max_abs_diff(to_matrix(PauliString::identity(2)),
                             ComplexMatrix::Identity(4, 4)) == 0.0);

  // Full sweep against the independent oracle.
  for (int n = 1; n <= 3; ++n) {
    const long count = (1L << (2 * n)) - 1;
    for (long j = 1; j <= count; ++j) {
      const PauliString p = basis_element(j, n);
      std::vector<int> labels;
      for (int i = 0; i < n; ++i) labels.push_back(p.label(i));
      REQUIRE(qfav::max_abs_diff(to_matrix(p),
                                 support::oracle_pauli_product_matrix(labels)) == 0.0);
    }
  }
}

TEST_CASE("basis elements are Hermitian, unitary and traceless") {
  for (int n = 1; n <= 3; ++n) {
    const long dim = 1L << n;
    const long count = (1L << (2 * n)) - 1;
    for (long j = 1; j <= count; ++j) {
      const ComplexMatrix f = to_matrix(basis_element(j, n));
      REQUIRE(qfav::max_abs_diff(f, f.adjoint()) == 0.0);
      REQUIRE(qfav::max_abs_diff(f * f, ComplexMatrix::Identity(dim, dim)) == 0.0);
      REQUIRE(std::abs(f.trace()) == 0.0);
    }
  }
}

TEST_CASE("single-factor products carry the cyclic phases") {
  auto check = [](std::uint8_t a, std::uint8_t b, Complex phase, std::uint8_t prod) {
    const auto [got_phase, got] = pauli_product(str_of({a}), str_of({b}));
    REQUIRE(got_phase == phase);
    REQUIRE(got == str_of({prod}));
  };
  const Complex i(0, 1);
  check(1, 2, i, 3);
  check(2, 3, i, 1);
  check(3, 1, i, 2);
  check(2, 1, -i, 3);
  check(3, 2, -i, 1);
  check(1, 3, -i, 2);
  check(1, 1, Complex(1, 0), 0);
  check(0, 2, Complex(1, 0), 2);
}

TEST_CASE("pauli_product frozen multi-qubit cases") {
  // (sigma_x (x) sigma_y)(sigma_y (x) sigma_x): the i and -i phases cancel.
  const auto [phase, prod] = pauli_product(str_of({1, 2}), str_of({2, 1}));
  REQUIRE(phase == Complex(1, 0));
  REQUIRE(prod == str_of({3, 3}));

  // A square of any string is the identity with unit phase.
  const auto [phase2, prod2] = pauli_product(str_of({3, 0}), str_of({3, 0}));
  REQUIRE(phase2 == Complex(1, 0));
  REQUIRE(prod2.is_identity());

  REQUIRE_THROWS_AS(pauli_product(str_of({1}), str_of({1, 2})),
                    std::invalid_argument);
}

TEST_CASE("pauli_product agrees with dense multiplication") {
  qfav::RngStream rng(20260816);
  for (int n = 1; n <= 3; ++n) {
    const long count = (1L << (2 * n)) - 1;
    for (int trial = 0; trial < 200; ++trial) {
      const long ja = 1 + static_cast<long>(rng.next_u64() % count);
      const long jb = 1 + static_cast<long>(rng.next_u64() % count);
      const PauliString a = basis_element(ja, n);
      const PauliString b = basis_element(jb, n);
      const auto [phase, prod] = pauli_product(a, b);
      REQUIRE(qfav::max_abs_diff(phase * to_matrix(prod),
                                 to_matrix(a) * to_matrix(b)) < 1e-12);
    }
  }
}

TEST_CASE("hs_inner reproduces the orthogonality relation tr(f_i f_j) = N delta_ij") {
  for (int n = 1; n <= 3; ++n) {
    const double dim = static_cast<double>(1L << n);
    const long count = (1L << (2 * n)) - 1;
    std::vector<ComplexMatrix> basis;
    for (long j = 1; j <= count; ++j) basis.push_back(to_matrix(basis_element(j, n)));
    for (long a = 0; a < count; ++a) {
      for (long b = 0; b < count; ++b) {
        // Basis elements are Hermitian, so the HS inner product is the
        // plain trace inner product here.
        const Complex got = qfav::hs_inner(basis[a], basis[b]);
        const double expected = (a == b) ? dim : 0.0;
        REQUIRE(std::abs(got - Complex(expected, 0.0)) < 1e-12);
      }
    }
  }
  REQUIRE_THROWS_AS(qfav::hs_inner(ComplexMatrix::Identity(2, 2),
                                   ComplexMatrix::Identity(4, 4)),
                    std::invalid_argument);
}

TEST_CASE("orthogonality also holds through the symbolic product") {
  // tr(f_a f_b) via pauli_product: nonzero only when the product is the
  // identity string, i.e. a == b, and then the phase is exactly +1.
  const int n = 3;
  const long count = (1L << (2 * n)) - 1;
  for (long a = 1; a <= count; ++a) {
    for (long b = 1; b <= count; ++b) {
      const auto [phase, prod] = pauli_product(basis_element(a, n), basis_element(b, n));
      if (a == b) {
        REQUIRE(prod.is_identity());
        REQUIRE(phase == Complex(1, 0));
      } else {
        REQUIRE(!prod.is_identity());
      }
    }
  }
}

TEST_CASE("kron composes dimensions and matches to_matrix") {
  const ComplexMatrix a = to_matrix(str_of({1}));
  const ComplexMatrix b = to_matrix(str_of({3}));
  const ComplexMatrix ab = qfav::kron(a, b);
  REQUIRE(ab.rows() == 4);
  REQUIRE(qfav::max_abs_diff(ab, to_matrix(str_of({1, 3}))) == 0.0);

  // Diagonal example: kron of diagonals is the diagonal of products.
  ComplexMatrix d1(2, 2), d2(2, 2);
  d1 << 2, 0, 0, 3;
  d2 << 5, 0, 0, 7;
  const ComplexMatrix d = qfav::kron(d1, d2);
  REQUIRE(d(0, 0) == Complex(10, 0));
  REQUIRE(d(3, 3) == Complex(21, 0));
}

TEST_CASE("rotor conjugation moves basis elements onto each other") {
  const Complex i(0, 1);
  const double c = std::sqrt(0.5);

  // R = exp(-i sigma_z pi/4) rotates x to y on the first factor.
  const double quarter = std::numbers::pi / 4.0;
  ComplexMatrix r(2, 2);
  r << std::exp(-i * quarter), 0, 0, std::exp(i * quarter);
  const ComplexMatrix r1 = qfav::kron(r, ComplexMatrix::Identity(2, 2));
  const ComplexMatrix x1 = to_matrix(str_of({1, 0}));
  const ComplexMatrix y1 = to_matrix(str_of({2, 0}));
  REQUIRE(qfav::max_abs_diff(r1 * x1 * r1.adjoint(), y1) < 1e-12);

  // The two-qubit rotor exp(-i (pi/4) sigma_z (x) sigma_x) carries
  // sigma_x (x) 1 onto sigma_y (x) sigma_x. Since (sigma_z (x) sigma_x)^2
  // = 1 the exponential is cos - i sin on that generator.
  const ComplexMatrix zx = to_matrix(str_of({3, 1}));
  const ComplexMatrix r12 = c * (ComplexMatrix::Identity(4, 4) - i * zx);
  const ComplexMatrix yx = to_matrix(str_of({2, 1}));
  REQUIRE(qfav::max_abs_diff(r12 * x1 * r12.adjoint(), yx) < 1e-12);
}
