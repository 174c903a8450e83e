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

// Shared test helpers. The Pauli/Kronecker pieces here are written from
// scratch on purpose: they are the independent oracle the library is
// checked against, so they must not share code with it.

#pragma once

#include <array>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "qfav/channels.hpp"
#include "qfav/matrix.hpp"
#include "qfav/rng.hpp"
#include "qfav/states.hpp"

namespace support {

using qfav::Complex;
using qfav::ComplexMatrix;

/// Hand-written 2x2 Pauli matrices (oracle side).
inline ComplexMatrix oracle_pauli(int label) {
  const Complex i(0.0, 1.0);
  ComplexMatrix m(2, 2);
  switch (label) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -i, i, 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument("oracle_pauli: bad label");
  }
  return m;
}

/// Hand-written Kronecker product (oracle side).
inline ComplexMatrix oracle_kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i) {
    for (long j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// Dense matrix of a label vector, built entirely from the oracle pieces.
inline ComplexMatrix oracle_pauli_product_matrix(const std::vector<int>& labels) {
  ComplexMatrix out = oracle_pauli(labels.at(0));
  for (std::size_t i = 1; i < labels.size(); ++i) {
    out = oracle_kron(out, oracle_pauli(labels[i]));
  }
  return out;
}

/// Haar-random unitary: QR of a complex Ginibre matrix with the R
/// diagonal phases folded back in.
inline ComplexMatrix random_unitary(long dim, qfav::RngStream& rng) {
  ComplexMatrix g(dim, dim);
  for (long r = 0; r < dim; ++r) {
    for (long c = 0; c < dim; ++c) g(r, c) = rng.gaussian_complex();
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (long c = 0; c < dim; ++c) {
    const Complex d = r(c, c);
    const double mag = std::abs(d);
    q.col(c) *= (mag > 0.0) ? d / mag : Complex(1.0, 0.0);
  }
  return q;
}

/// Random trace-preserving Kraus channel: Ginibre operators G_i whitened
/// by S^{-1/2} with S = sum G_i^dag G_i.
inline qfav::Channel random_kraus_channel(int n, int op_count, qfav::RngStream& rng) {
  const long dim = 1L << n;
  std::vector<ComplexMatrix> raw;
  raw.reserve(static_cast<std::size_t>(op_count));
  ComplexMatrix s = ComplexMatrix::Zero(dim, dim);
  for (int i = 0; i < op_count; ++i) {
    ComplexMatrix g(dim, dim);
    for (long r = 0; r < dim; ++r) {
      for (long c = 0; c < dim; ++c) g(r, c) = rng.gaussian_complex();
    }
    s += g.adjoint() * g;
    raw.push_back(std::move(g));
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(s);
  const ComplexMatrix s_inv_sqrt = es.eigenvectors() *
                                   es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                                   es.eigenvectors().adjoint();
  std::vector<ComplexMatrix> ops;
  ops.reserve(raw.size());
  for (const auto& g : raw) ops.push_back(g * s_inv_sqrt);
  return qfav::Channel::kraus(std::move(ops));
}

/// Random mixed state: normalized Ginibre Wishart matrix G G^dag / tr.
inline qfav::DensityMatrix random_density(int n, qfav::RngStream& rng) {
  const long dim = 1L << n;
  ComplexMatrix g(dim, dim);
  for (long r = 0; r < dim; ++r) {
    for (long c = 0; c < dim; ++c) g(r, c) = rng.gaussian_complex();
  }
  ComplexMatrix w = g * g.adjoint();
  w /= w.trace().real();
  return qfav::validate_density(w);
}

struct CommandResult {
  int exit_code = -1;
  std::string out;
};

/// Runs a shell command, capturing stdout and the exit code.
inline CommandResult run_command(const std::string& command) {
  CommandResult result;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) throw std::runtime_error("popen failed for: " + command);
  std::array<char, 4096> buffer;
  std::size_t got = 0;
  while ((got = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
    result.out.append(buffer.data(), got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

/// Fresh temporary directory for fixture files.
inline std::string make_temp_dir() {
  std::string tmpl = "/tmp/qfav_test_XXXXXX";
  if (mkdtemp(tmpl.data()) == nullptr) {
    throw std::runtime_error("mkdtemp failed");
  }
  return tmpl;
}

}  // namespace support
