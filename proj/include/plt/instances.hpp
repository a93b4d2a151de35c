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

#include "plt/matsolve.hpp"

#include <map>
#include <string>

// Built-in plants and named policies.

namespace plt::instances {

inline Mat mat(std::initializer_list<std::initializer_list<double>> rows) {
  const Eigen::Index r = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index c = r ? static_cast<Eigen::Index>(rows.begin()->size()) : 0;
  Mat M(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Eigen::Index>(row.size()) != c) throw DimensionError("ragged matrix literal");
    Eigen::Index j = 0;
    for (double v : row) M(i, j++) = v;
    ++i;
  }
  return M;
}

inline Mat scalar(double v) { return Mat::Constant(1, 1, v); }

/// A = a, all other data equal to one.
inline Plant scalar_plant(double a) {
  return {scalar(a), scalar(1), scalar(1), scalar(1), scalar(1), scalar(1), scalar(1)};
}

inline Plant paper_1dim() { return scalar_plant(-1.0); }

inline Plant paper_2dim() {
  return {mat({{0, -1}, {1, 0}}), mat({{1}, {0}}), mat({{1, -1}}),
          mat({{4, 0}, {0, 0}}), scalar(1), mat({{1, -1}, {-1, 16}}), scalar(1)};
}

inline Plant paper_3dim() {
  const Mat I3 = Mat::Identity(3, 3);
  return {mat({{1, 1, 1}, {0, 1, 0}, {1, 0, 0}}), mat({{1, 0}, {0, 1}, {0, 0}}),
          mat({{0, 0, 1}, {1, 0, 0}, {0, 1, 1}}), I3, Mat::Identity(2, 2), I3, I3};
}

inline Plant hinf_2dim() {
  const Mat I2 = Mat::Identity(2, 2);
  return {mat({{1, 1}, {0, 1}}), mat({{0}, {1}}), mat({{1, 1}, {1, 0}}), I2, scalar(1), I2, I2};
}

inline Plant hinf_3dim() { return paper_3dim(); }

inline const std::map<std::string, Plant (*)()>& plant_table() {
  static const std::map<std::string, Plant (*)()> t = {{"paper-1dim", paper_1dim},
                                                       {"paper-2dim", paper_2dim},
                                                       {"paper-3dim", paper_3dim},
                                                       {"hinf-2dim", hinf_2dim},
                                                       {"hinf-3dim", hinf_3dim}};
  return t;
}

inline Plant plant(const std::string& name) {
  const auto& t = plant_table();
  auto it = t.find(name);
  if (it == t.end()) throw DomainError("unknown built-in instance: " + name);
  return it->second();
}

/// Scalar-plant policy from (D_K, C_K; B_K, A_K).
inline Policy scalar_policy(double d, double c, double b, double a) {
  return {scalar(d), scalar(c), scalar(b), scalar(a)};
}

// Policies on the scalar plant used to illustrate informativity.
inline Policy sample_k1() { return scalar_policy(0, 2, 2, -1); }
inline Policy sample_k2() { return scalar_policy(0, 1, -1, -5); }
inline Policy sample_k3() { return scalar_policy(0, 0, 1, -1); }
inline Policy sample_k4() { return scalar_policy(0, -1, 0, -1); }

/// Stationary saddle of the scalar LQG problem.
inline Policy saddle() { return scalar_policy(0, 0, 0, -1); }

/// Static H-infinity optimum of the scalar plant (q = 0).
inline Policy static_hinf_optimal() {
  return {scalar(1.0 - std::sqrt(3.0)), Mat(1, 0), Mat(0, 1), Mat(0, 0)};
}

/// The static optimum realized with a disconnected controller state A_K = a.
inline Policy static_hinf_optimal_lifted(double a = -1.0) { return scalar_policy(1.0 - std::sqrt(3.0), 0, 0, a); }

/// Observer-based optimum of the two-state instance (not minimal).
inline Policy nonminimal_optimal() {
  return {scalar(0), mat({{-2, 0}}), mat({{1}, {-4}}), mat({{-3, 0}, {5, -4}})};
}

/// The same transfer function with a zero-coupled second controller state.
inline Policy zero_augmented_optimal() {
  return {scalar(0), mat({{-2, 0}}), mat({{1}, {0}}), mat({{-3, 0}, {0, -1}})};
}

/// Static policy with D_K = 0 (q = 0).
inline Policy zero_static(const Plant& pl) { return Policy::zero(pl.m(), pl.p(), 0); }

/// A_K = -I, all other blocks zero.
inline Policy zero_dynamic(const Plant& pl) {
  Policy K = Policy::zero(pl.m(), pl.p(), pl.n());
  K.AK = -Mat::Identity(pl.n(), pl.n());
  return K;
}

inline std::vector<std::string> policy_names() {
  return {"riccati-optimal",     "hinf-central",         "zero-dynamic", "zero-static", "sample-k1",
          "sample-k2",           "sample-k3",            "sample-k4",    "saddle",
          "static-hinf-optimal", "static-hinf-optimal-lifted", "nonminimal-optimal", "zero-augmented-optimal"};
}

/// Named policy for a plant; scalar-only names require a scalar plant.
inline Policy policy(const std::string& name, const Plant& pl) {
  if (name == "riccati-optimal") return lqg_optimal_policy(solve_lqg_riccati(pl), pl);
  if (name == "hinf-central") return gamma_iteration(pl, 1e-6).policy;
  if (name == "zero-dynamic") return zero_dynamic(pl);
  if (name == "zero-static") return zero_static(pl);
  const bool sc = pl.n() == 1 && pl.m() == 1 && pl.p() == 1;
  const bool two = pl.n() == 2 && pl.m() == 1 && pl.p() == 1;
  if (sc) {
    if (name == "sample-k1") return sample_k1();
    if (name == "sample-k2") return sample_k2();
    if (name == "sample-k3") return sample_k3();
    if (name == "sample-k4") return sample_k4();
    if (name == "saddle") return saddle();
    if (name == "static-hinf-optimal") return static_hinf_optimal();
    if (name == "static-hinf-optimal-lifted") return static_hinf_optimal_lifted();
  }
  if (two) {
    if (name == "nonminimal-optimal") return nonminimal_optimal();
    if (name == "zero-augmented-optimal") return zero_augmented_optimal();
  }
  throw DomainError("unknown or incompatible built-in policy: " + name);
}

}  // namespace plt::instances
