// Copyright 2026 The pdecho Authors
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

#include <filesystem>
#include <string_view>

#include <json.hpp>

#include "pdecho/model.hpp"

namespace pdecho {

/// A model file: the Hamiltonian data plus the initial environment state.
///
/// Schema (unknown keys anywhere are rejected):
///
///     {
///       "env_dim": N,
///       "epsilon": [e0, e1],
///       "H_E": [[[re, im], ...], ...],      // row-major, N rows of N pairs
///       "V0": ..., "V1": ...,
///       "rotating_frame": false,            // optional
///       "R0": {"kind": "thermal", "beta": b}        // b may be the string "inf"
///           | {"kind": "pure", "state": [[re, im], ...]}
///           | {"kind": "diagonal", "weights": [p0, ...]}
///           | {"kind": "random", "seed": s}
///     }
struct ModelSpec {
  PureDephasingModel model;
  EnvDensity r0;
};

/// Throws ValidationError on malformed JSON or schema violations.
ModelSpec parse_model_json(std::string_view text);
ModelSpec load_model_file(const std::filesystem::path& path);

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j, Index rows, Index cols, std::string_view name);

/// Serializes the model with an explicit "R0" object supplied by the caller.
nlohmann::json model_to_json(const PureDephasingModel& model, const nlohmann::json& r0);

}  // namespace pdecho
