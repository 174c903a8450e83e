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

#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qfav/channels.hpp"
#include "qfav/decomposition.hpp"
#include "qfav/fidelity.hpp"
#include "qfav/matrix.hpp"
#include "qfav/states.hpp"

// JSON encodings for the file formats the CLI reads and writes: channel
// spec files, fidelity reports and measurement protocols. All three carry
// a format_version field; complex numbers are [re, im] pairs; matrices
// are row-major nested arrays of those pairs.

namespace qfav::io {

using json = nlohmann::json;

inline constexpr int format_version = 1;

namespace detail {

inline const json& require_field(const json& doc, const char* key,
                                 const std::string& what) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw validation_error(what + ": missing field '" + key + "'");
  }
  return doc.at(key);
}

inline void check_format_version(const json& doc, const std::string& what) {
  const json& v = require_field(doc, "format_version", what);
  if (!v.is_number_integer() || v.get<int>() != format_version) {
    throw validation_error(what + ": unsupported format_version (expected " +
                           std::to_string(format_version) + ")");
  }
}

inline double require_number(const json& doc, const char* key,
                             const std::string& what) {
  const json& v = require_field(doc, key, what);
  if (!v.is_number()) {
    throw validation_error(what + ": field '" + key + "' must be a number");
  }
  return v.get<double>();
}

inline int require_int(const json& doc, const char* key, const std::string& what) {
  const json& v = require_field(doc, key, what);
  if (!v.is_number_integer()) {
    throw validation_error(what + ": field '" + key + "' must be an integer");
  }
  return v.get<int>();
}

inline std::string require_string(const json& doc, const char* key,
                                  const std::string& what) {
  const json& v = require_field(doc, key, what);
  if (!v.is_string()) {
    throw validation_error(what + ": field '" + key + "' must be a string");
  }
  return v.get<std::string>();
}

}  // namespace detail

inline json complex_to_json(const Complex& z) {
  return json::array({z.real(), z.imag()});
}

inline Complex complex_from_json(const json& v, const std::string& what) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw validation_error(what + ": complex entries are encoded as [re, im]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

inline json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (long r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (long c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline ComplexMatrix matrix_from_json(const json& v, const std::string& what) {
  if (!v.is_array() || v.empty()) {
    throw validation_error(what + ": matrices are non-empty arrays of rows");
  }
  const long rows = static_cast<long>(v.size());
  if (!v[0].is_array() || v[0].empty()) {
    throw validation_error(what + ": matrix rows are non-empty arrays");
  }
  const long cols = static_cast<long>(v[0].size());
  ComplexMatrix m(rows, cols);
  for (long r = 0; r < rows; ++r) {
    const json& row = v[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<long>(row.size()) != cols) {
      throw validation_error(what + ": matrix rows have inconsistent lengths");
    }
    for (long c = 0; c < cols; ++c) {
      m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)], what);
    }
  }
  return m;
}

/// A parsed channel spec file: the system size, the target unitary
/// (identity when the file names none) and the channel itself. kind keeps
/// the channel kind string as written in the file.
struct ChannelSpec {
  int n;
  ComplexMatrix target_unitary;
  Channel channel;
  std::string kind;
};

/// Reads a channel spec from parsed JSON. With validate = false the
/// channel and target are only shape-checked, so that a defective channel
/// can still be loaded and measured (see the check subcommand).
inline ChannelSpec channel_spec_from_json(const json& doc,
                                          double tol = default_tol,
                                          bool validate = true) {
  const std::string what = "channel spec";
  detail::check_format_version(doc, what);
  const int n = detail::require_int(doc, "n", what);
  if (n < 1 || n > max_dense_qubits) {
    throw validation_error(what + ": n = " + std::to_string(n) + " outside [1, " +
                           std::to_string(max_dense_qubits) + "]");
  }
  const long dim = dim_for_qubits(n);

  ComplexMatrix target = ComplexMatrix::Identity(dim, dim);
  if (doc.contains("target_unitary")) {
    target = matrix_from_json(doc.at("target_unitary"), what + ": target_unitary");
    if (target.rows() != dim || target.cols() != dim) {
      throw validation_error(what + ": target_unitary must be " +
                             std::to_string(dim) + "x" + std::to_string(dim) +
                             " for n = " + std::to_string(n));
    }
    if (validate) {
      const double dev = unitarity_deviation(target);
      if (dev > tol) {
        throw validation_error(what + ": target_unitary is not unitary: max deviation " +
                               num_str(dev));
      }
    }
  }

  const json& ch = detail::require_field(doc, "channel", what);
  const std::string kind = detail::require_string(ch, "kind", what + ": channel");

  if (kind == "unitary") {
    ComplexMatrix u = matrix_from_json(
        detail::require_field(ch, "matrix", what + ": channel"), what + ": channel.matrix");
    if (u.rows() != dim || u.cols() != dim) {
      throw validation_error(what + ": channel.matrix must be " +
                             std::to_string(dim) + "x" + std::to_string(dim));
    }
    Channel channel = validate ? Channel::unitary(std::move(u), tol)
                               : Channel::unitary_unchecked(std::move(u));
    return {n, std::move(target), std::move(channel), kind};
  }
  if (kind == "kraus") {
    const json& ops_json = detail::require_field(ch, "operators", what + ": channel");
    if (!ops_json.is_array() || ops_json.empty()) {
      throw validation_error(what + ": channel.operators must be a non-empty array");
    }
    std::vector<ComplexMatrix> ops;
    ops.reserve(ops_json.size());
    for (const auto& op : ops_json) {
      ComplexMatrix k = matrix_from_json(op, what + ": channel.operators");
      if (k.rows() != dim || k.cols() != dim) {
        throw validation_error(what + ": Kraus operators must be " +
                               std::to_string(dim) + "x" + std::to_string(dim));
      }
      ops.push_back(std::move(k));
    }
    Channel channel = validate ? Channel::kraus(std::move(ops), tol)
                               : Channel::kraus_unchecked(std::move(ops));
    return {n, std::move(target), std::move(channel), kind};
  }
  if (kind == "depolarizing") {
    const double p = detail::require_number(ch, "p", what + ": channel");
    return {n, std::move(target), depolarizing(n, p), kind};
  }
  if (kind == "amplitude_damping") {
    if (n != 1) {
      throw validation_error(what + ": amplitude_damping is a single-qubit channel");
    }
    const double gamma = detail::require_number(ch, "gamma", what + ": channel");
    return {n, std::move(target), amplitude_damping(gamma), kind};
  }
  throw validation_error(what + ": channel.kind '" + kind +
                         "' is not one of unitary, kraus, depolarizing, "
                         "amplitude_damping");
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw validation_error("cannot open '" + path + "'");
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw validation_error("invalid JSON in '" + path + "': " + e.what());
  }
}

inline ChannelSpec load_channel_spec_file(const std::string& path,
                                          double tol = default_tol,
                                          bool validate = true) {
  return channel_spec_from_json(load_json_file(path), tol, validate);
}

inline json report_to_json(const FidelityReport& r) {
  json doc{
      {"format_version", format_version},
      {"method", to_string(r.method)},
      {"n", r.n},
      {"value", r.value},
      {"samples", r.samples},
      {"stderr", r.std_error},
  };
  if (r.seed) doc["seed"] = *r.seed;
  if (!r.rng.empty()) doc["rng"] = r.rng;
  return doc;
}

inline FidelityReport report_from_json(const json& doc) {
  const std::string what = "fidelity report";
  detail::check_format_version(doc, what);
  FidelityReport r;
  r.method = fidelity_method_from_string(detail::require_string(doc, "method", what));
  r.n = detail::require_int(doc, "n", what);
  r.value = detail::require_number(doc, "value", what);
  r.samples = static_cast<long>(detail::require_number(doc, "samples", what));
  r.std_error = detail::require_number(doc, "stderr", what);
  if (doc.contains("seed")) r.seed = doc.at("seed").get<std::uint64_t>();
  if (doc.contains("rng")) r.rng = doc.at("rng").get<std::string>();
  return r;
}

inline json protocol_to_json(const ProtocolSpec& p) {
  json preparations = json::array();
  for (const auto& s : p.preparations) preparations.push_back(matrix_to_json(s.matrix()));
  json projectors = json::array();
  for (const auto& s : p.projectors) projectors.push_back(matrix_to_json(s.matrix()));
  json weights = json::array();
  for (long s = 0; s < p.weight.rows(); ++s) {
    json row = json::array();
    for (long t = 0; t < p.weight.cols(); ++t) row.push_back(p.weight(s, t));
    weights.push_back(std::move(row));
  }
  return json{
      {"format_version", format_version},
      {"n", p.n},
      {"offset", p.offset},
      {"scale", p.scale},
      {"preparations", std::move(preparations)},
      {"projectors", std::move(projectors)},
      {"weights", std::move(weights)},
  };
}

inline ProtocolSpec protocol_from_json(const json& doc, double tol = default_tol) {
  const std::string what = "protocol";
  detail::check_format_version(doc, what);
  ProtocolSpec p;
  p.n = detail::require_int(doc, "n", what);
  if (p.n < 1 || p.n > 3) {
    throw validation_error(what + ": n = " + std::to_string(p.n) + " outside [1, 3]");
  }
  p.offset = detail::require_number(doc, "offset", what);
  p.scale = detail::require_number(doc, "scale", what);

  auto load_states = [&](const char* key) {
    const json& arr = detail::require_field(doc, key, what);
    if (!arr.is_array() || arr.empty()) {
      throw validation_error(what + ": '" + key + "' must be a non-empty array");
    }
    std::vector<DensityMatrix> states;
    states.reserve(arr.size());
    for (const auto& entry : arr) {
      const ComplexMatrix m = matrix_from_json(entry, what + ": " + key);
      DensityMatrix state = [&] {
        try {
          return validate_density(m, tol);
        } catch (const validation_error& e) {
          throw validation_error(what + ": " + key + ": " + e.what());
        }
      }();
      if (std::abs(purity(state) - 1.0) > 1e-8) {
        throw validation_error(what + ": " + key + ": state is not pure");
      }
      states.push_back(std::move(state));
    }
    return states;
  };
  p.preparations = load_states("preparations");
  p.projectors = load_states("projectors");

  const json& weights = detail::require_field(doc, "weights", what);
  const long rows = static_cast<long>(p.projectors.size());
  const long cols = static_cast<long>(p.preparations.size());
  if (!weights.is_array() || static_cast<long>(weights.size()) != rows) {
    throw validation_error(what + ": weights must have one row per projector");
  }
  p.weight = RealMatrix::Zero(rows, cols);
  for (long s = 0; s < rows; ++s) {
    const json& row = weights[static_cast<std::size_t>(s)];
    if (!row.is_array() || static_cast<long>(row.size()) != cols) {
      throw validation_error(what + ": weights rows must have one entry per preparation");
    }
    for (long t = 0; t < cols; ++t) {
      const json& v = row[static_cast<std::size_t>(t)];
      if (!v.is_number()) {
        throw validation_error(what + ": weights entries must be numbers");
      }
      p.weight(s, t) = v.get<double>();
    }
  }
  return p;
}

inline ProtocolSpec load_protocol_file(const std::string& path,
                                       double tol = default_tol) {
  return protocol_from_json(load_json_file(path), tol);
}

inline void save_json_file(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) {
    throw validation_error("cannot write '" + path + "'");
  }
  out << doc.dump(2) << "\n";
  if (!out) {
    throw validation_error("failed while writing '" + path + "'");
  }
}

}  // namespace qfav::io
