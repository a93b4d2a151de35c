/*
 Copyright 2026 The plt Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

     http://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#pragma once

#include "plt/instances.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

// JSON instance files: {"schema": 1, "name": ..., "A": {"rows", "cols", "data"}, ...,
// "policies": {"<name>": {"DK", "CK", "BK", "AK"}}}.

namespace plt::io {

using json = nlohmann::json;

inline constexpr int kSchema = 1;

/// Malformed or unreadable input file.
class ParseError : public Error {
 public:
  using Error::Error;
};

inline json to_json(const Mat& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json r = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) r.push_back(M(i, j));
    rows.push_back(std::move(r));
  }
  return {{"rows", M.rows()}, {"cols", M.cols()}, {"data", std::move(rows)}};
}

inline Mat matrix_from_json(const json& j, const std::string& what) {
  try {
    const Eigen::Index r = j.at("rows").get<Eigen::Index>(), c = j.at("cols").get<Eigen::Index>();
    const json& d = j.at("data");
    if (r < 0 || c < 0 || !d.is_array() || static_cast<Eigen::Index>(d.size()) != r)
      throw ParseError(what + ": row count does not match \"rows\"");
    Mat M(r, c);
    for (Eigen::Index i = 0; i < r; ++i) {
      const json& row = d.at(i);
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != c)
        throw ParseError(what + ": row " + std::to_string(i) + " does not have \"cols\" entries");
      for (Eigen::Index k = 0; k < c; ++k) {
        if (!row.at(k).is_number()) throw ParseError(what + ": non-numeric entry");
        M(i, k) = row.at(k).get<double>();
      }
    }
    return M;
  } catch (const json::exception& e) {
    throw ParseError(what + ": " + e.what());
  }
}

inline json to_json(const Policy& K) {
  return {{"DK", to_json(K.DK)}, {"CK", to_json(K.CK)}, {"BK", to_json(K.BK)}, {"AK", to_json(K.AK)}};
}

inline Policy policy_from_json(const json& j, const std::string& what = "policy") {
  if (!j.is_object()) throw ParseError(what + ": expected an object");
  auto get = [&](const char* key) {
    if (!j.contains(key)) throw ParseError(what + ": missing \"" + key + "\"");
    return matrix_from_json(j.at(key), what + "." + key);
  };
  Policy K{get("DK"), get("CK"), get("BK"), get("AK")};
  try {
    check_policy_dims(K);
  } catch (const DimensionError& e) {
    throw ParseError(what + ": " + e.what());
  }
  return K;
}

struct Instance {
  std::string name;
  Plant plant;
  std::map<std::string, Policy> policies;
};

inline json to_json(const Instance& in) {
  json j = {{"schema", kSchema}, {"name", in.name}};
  const Plant& P = in.plant;
  j["A"] = to_json(P.A);
  j["B"] = to_json(P.B);
  j["C"] = to_json(P.C);
  j["Q"] = to_json(P.Q);
  j["R"] = to_json(P.R);
  j["W"] = to_json(P.W);
  j["V"] = to_json(P.V);
  if (!in.policies.empty()) {
    json pol = json::object();
    for (const auto& [k, K] : in.policies) pol[k] = to_json(K);
    j["policies"] = std::move(pol);
  }
  return j;
}

/// Parses an instance; shapes and plant assumptions are validated, a failing assumption is a DomainError.
inline Instance instance_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("instance: expected a JSON object");
  if (j.contains("schema") && (!j.at("schema").is_number_integer() || j.at("schema").get<int>() != kSchema))
    throw ParseError("instance: unsupported schema version");
  Instance in;
  in.name = j.value("name", std::string("unnamed"));
  auto get = [&](const char* key) {
    if (!j.contains(key)) throw ParseError(std::string("instance: missing \"") + key + "\"");
    return matrix_from_json(j.at(key), key);
  };
  in.plant = Plant{get("A"), get("B"), get("C"), get("Q"), get("R"), get("W"), get("V")};
  try {
    check_plant_dims(in.plant);
  } catch (const DimensionError& e) {
    throw ParseError(std::string("instance: ") + e.what());
  }
  const PlantReport rep = validate_plant(in.plant);
  if (!rep.ok) throw DomainError("instance " + in.name + ": " + rep.failures.front());
  if (j.contains("policies")) {
    const json& pol = j.at("policies");
    if (!pol.is_object()) throw ParseError("instance: \"policies\" must be an object");
    for (auto it = pol.begin(); it != pol.end(); ++it) {
      Policy K = policy_from_json(it.value(), "policies." + it.key());
      try {
        check_dims(in.plant, K);
      } catch (const DimensionError& e) {
        throw ParseError("policies." + it.key() + ": " + e.what());
      }
      in.policies.emplace(it.key(), std::move(K));
    }
  }
  return in;
}

inline json parse_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ": " + e.what());
  }
}

inline json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_text(ss.str(), path);
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream f(path);
  if (!f) throw ParseError("cannot write " + path);
  f << j.dump(2) << '\n';
}

constexpr const char* kBuiltinPrefix = "builtin:";

inline bool is_builtin(const std::string& ref) { return ref.rfind(kBuiltinPrefix, 0) == 0; }

/// Loads "builtin:NAME" or a JSON file path.
inline Instance load_instance(const std::string& ref) {
  if (is_builtin(ref)) {
    const std::string name = ref.substr(std::string(kBuiltinPrefix).size());
    if (!instances::plant_table().count(name)) throw ParseError("unknown built-in instance: " + name);
    return {name, instances::plant(name), {}};
  }
  return instance_from_json(read_json_file(ref));
}

/**
 * Resolves a policy reference against an instance: "builtin:NAME", a policy
 * named in the instance file, or a JSON file holding either a bare policy or
 * an object with a "policy" member.
 */
inline Policy load_policy(const std::string& ref, const Instance& in) {
  if (is_builtin(ref)) {
    const std::string name = ref.substr(std::string(kBuiltinPrefix).size());
    const auto names = instances::policy_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
      throw ParseError("unknown built-in policy: " + name);
    return instances::policy(name, in.plant);
  }
  if (auto it = in.policies.find(ref); it != in.policies.end()) return it->second;
  const json j = read_json_file(ref);
  const Policy K = policy_from_json(j.contains("policy") ? j.at("policy") : j, ref);
  try {
    check_dims(in.plant, K);
  } catch (const DimensionError& e) {
    throw ParseError(ref + ": " + e.what());
  }
  return K;
}

}  // namespace plt::io
