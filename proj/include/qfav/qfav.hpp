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

#include "qfav/channels.hpp"
#include "qfav/decomposition.hpp"
#include "qfav/errors.hpp"
#include "qfav/fidelity.hpp"
#include "qfav/io.hpp"
#include "qfav/matrix.hpp"
#include "qfav/pauli.hpp"
#include "qfav/rng.hpp"
#include "qfav/states.hpp"
