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

#include <stdexcept>

namespace qfav {

/// Input data failed a physical-validity check (Hermiticity, trace,
/// positivity, unitarity, trace preservation). The message names the
/// check and the measured deviation.
class validation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computed quantity violated an internal contract: a residual
/// imaginary part above rounding scale, a fidelity outside [0, 1], a
/// projector failing its rank-1 check. These indicate a bug or a
/// numerically hopeless input, not a bad argument.
class consistency_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qfav
