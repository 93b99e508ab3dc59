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

#include "pdecho/model_io.hpp"

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pdecho/errors.hpp"

namespace pdecho {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                         std::string_view where) {
  const std::set<std::string_view> known(allowed);
  for (const auto& [key, value] : obj.items()) {
    if (!known.contains(key)) {
      throw ValidationError("unknown key '" + key + "' in " + std::string(where));
    }
  }
}

const json& require_key(const json& obj, const char* key, std::string_view where) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    throw ValidationError(std::string(where) + ": missing required key '" + key + "'");
  }
  return *it;
}

double number(const json& j, std::string_view name) {
  if (!j.is_number()) throw ValidationError(std::string(name) + " must be a number");
  return j.get<double>();
}

Complex complex_from_json(const json& j, std::string_view name) {
  if (!j.is_array() || j.size() != 2) {
    throw ValidationError(std::string(name) + ": complex entries are [re, im] pairs");
  }
  return {number(j[0], name), number(j[1], name)};
}

EnvDensity parse_r0(const json& j, const Matrix& h_env, Index dim) {
  if (!j.is_object()) throw ValidationError("R0 must be an object");
  const json& kind_j = require_key(j, "kind", "R0");
  if (!kind_j.is_string()) throw ValidationError("R0.kind must be a string");
  const auto kind = kind_j.get<std::string>();
  if (kind == "thermal") {
    reject_unknown_keys(j, {"kind", "beta"}, "R0 (thermal)");
    const json& beta_j = require_key(j, "beta", "R0 (thermal)");
    double beta = 0.0;
    if (beta_j.is_string() && beta_j.get<std::string>() == "inf") {
      beta = kInfiniteBeta;
    } else {
      beta = number(beta_j, "R0.beta");
    }
    return EnvDensity::thermal(h_env, beta);
  }
  if (kind == "pure") {
    reject_unknown_keys(j, {"kind", "state"}, "R0 (pure)");
    const json& state_j = require_key(j, "state", "R0 (pure)");
    if (!state_j.is_array() || static_cast<Index>(state_j.size()) != dim) {
      throw ValidationError("R0.state must list env_dim complex amplitudes");
    }
    Vector state(dim);
    for (Index k = 0; k < dim; ++k) {
      state(k) = complex_from_json(state_j[static_cast<std::size_t>(k)], "R0.state");
    }
    return EnvDensity::pure(state);
  }
  if (kind == "diagonal") {
    reject_unknown_keys(j, {"kind", "weights"}, "R0 (diagonal)");
    const json& w_j = require_key(j, "weights", "R0 (diagonal)");
    if (!w_j.is_array() || static_cast<Index>(w_j.size()) != dim) {
      throw ValidationError("R0.weights must list env_dim numbers");
    }
    std::vector<double> weights;
    for (const auto& w : w_j) weights.push_back(number(w, "R0.weights"));
    return EnvDensity::diagonal(weights);
  }
  if (kind == "random") {
    reject_unknown_keys(j, {"kind", "seed"}, "R0 (random)");
    const json& seed_j = require_key(j, "seed", "R0 (random)");
    if (!seed_j.is_number_unsigned()) throw ValidationError("R0.seed must be a nonnegative integer");
    return EnvDensity::random_full_rank(dim, seed_j.get<std::uint64_t>());
  }
  throw ValidationError("R0.kind must be one of thermal|pure|diagonal|random, got '" + kind + "'");
}

}  // namespace

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, Index rows, Index cols, std::string_view name) {
  if (!j.is_array() || static_cast<Index>(j.size()) != rows) {
    throw ValidationError(std::string(name) + " must have " + std::to_string(rows) + " rows");
  }
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      throw ValidationError(std::string(name) + " row " + std::to_string(i) + " must have " +
                            std::to_string(cols) + " entries");
    }
    for (Index k = 0; k < cols; ++k) {
      m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)], name);
    }
  }
  return m;
}

ModelSpec parse_model_json(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed model JSON: ") + e.what());
  }
  if (!root.is_object()) throw ValidationError("model JSON must be an object");
  reject_unknown_keys(root, {"env_dim", "epsilon", "H_E", "V0", "V1", "R0", "rotating_frame"},
                      "model");
  const json& dim_j = require_key(root, "env_dim", "model");
  if (!dim_j.is_number_integer()) throw ValidationError("env_dim must be an integer");
  const auto dim = static_cast<Index>(dim_j.get<long long>());
  require_env_dim(dim);

  const json& eps_j = require_key(root, "epsilon", "model");
  if (!eps_j.is_array() || eps_j.size() != 2) {
    throw ValidationError("epsilon must be a pair [e0, e1]");
  }
  const double e0 = number(eps_j[0], "epsilon[0]");
  const double e1 = number(eps_j[1], "epsilon[1]");

  Matrix h = matrix_from_json(require_key(root, "H_E", "model"), dim, dim, "H_E");
  Matrix v0 = matrix_from_json(require_key(root, "V0", "model"), dim, dim, "V0");
  Matrix v1 = matrix_from_json(require_key(root, "V1", "model"), dim, dim, "V1");

  bool rotating = false;
  if (const auto it = root.find("rotating_frame"); it != root.end()) {
    if (!it->is_boolean()) throw ValidationError("rotating_frame must be a boolean");
    rotating = it->get<bool>();
  }
  PureDephasingModel model(e0, e1, std::move(h), std::move(v0), std::move(v1), rotating);
  EnvDensity r0 = parse_r0(require_key(root, "R0", "model"), model.h_env(), dim);
  return ModelSpec{std::move(model), std::move(r0)};
}

ModelSpec load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read model file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_model_json(buffer.str());
}

json model_to_json(const PureDephasingModel& model, const json& r0) {
  json out;
  out["env_dim"] = model.env_dim();
  out["epsilon"] = {model.bare_epsilon(0), model.bare_epsilon(1)};
  out["H_E"] = matrix_to_json(model.h_env());
  out["V0"] = matrix_to_json(model.v0());
  out["V1"] = matrix_to_json(model.v1());
  out["rotating_frame"] = model.rotating_frame();
  out["R0"] = r0;
  return out;
}

}  // namespace pdecho
