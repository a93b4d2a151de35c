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

// Shared helpers for the unit tests and the acceptance binary.

#include "plt/instances.hpp"
#include "plt/search.hpp"

#include <random>

namespace plt::testing {

inline double max_abs_diff(const Mat& A, const Mat& B) { return (A - B).cwiseAbs().maxCoeff(); }

/// Random stabilizing full-order strictly proper policy for pl, drawn near the LQG optimum.
inline Policy random_stabilizing(const Plant& pl, std::mt19937_64& rng, double spread = 0.6) {
  const Policy K0 = lqg_optimal_policy(solve_lqg_riccati(pl), pl);
  std::normal_distribution<double> nd(0.0, 1.0);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Policy K = K0;
    for (Mat* M : {&K.AK, &K.BK, &K.CK})
      for (Eigen::Index i = 0; i < M->size(); ++i) M->data()[i] += spread * nd(rng);
    if (is_internally_stabilizing(pl, K).abscissa < -0.05) return K;
  }
  throw NumericalError("random_stabilizing: no draw");
}

/// Central differences of J_LQG over [vec A_K; vec B_K; vec C_K].
inline Vec fd_lqg_gradient(const Plant& pl, const Policy& K, double h = 1e-6) {
  const Vec x = pack_strictly_proper(K);
  Vec g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Vec xp = x, xm = x;
    xp(i) += h;
    xm(i) -= h;
    g(i) = (lqg_cost(pl, unpack_strictly_proper(xp, K.m(), K.p(), K.q())) -
            lqg_cost(pl, unpack_strictly_proper(xm, K.m(), K.p(), K.q()))) /
           (2.0 * h);
  }
  return g;
}

/// Central differences of J_inf over the lumped policy (column-major).
inline Mat fd_hinf_gradient(const Plant& pl, const Policy& K, double h = 1e-6) {
  const Mat L = K.lumped();
  Mat G(L.rows(), L.cols());
  for (Eigen::Index j = 0; j < L.cols(); ++j)
    for (Eigen::Index i = 0; i < L.rows(); ++i) {
      Mat Lp = L, Lm = L;
      Lp(i, j) += h;
      Lm(i, j) -= h;
      G(i, j) = (hinf_cost(pl, Policy::from_lumped(Lp, K.m(), K.p()), 1e-13) -
                 hinf_cost(pl, Policy::from_lumped(Lm, K.m(), K.p()), 1e-13)) /
                (2.0 * h);
    }
  return G;
}

/// Largest sigma_max(T(jw)) over n log-spaced frequencies in [1e-4, 1e4], plus w = 0 and the feedthrough.
inline double grid_hinf(const ClosedLoop& cl, int n = 100000) {
  double best = std::max(sigma_at(cl, 0.0), sigma_max(cl.D));
  for (int i = 0; i < n; ++i) best = std::max(best, sigma_at(cl, std::pow(10.0, -4.0 + 8.0 * i / (n - 1))));
  return best;
}

/// Max eigenvalue of the bounded-real LMI, assembled here independently of brl_lmi_residual.
inline double brl_recheck(const ClosedLoop& cl, double g, const Mat& P) {
  const Eigen::Index k = cl.A.rows(), d = cl.B.cols(), z = cl.C.rows();
  Mat M = Mat::Zero(k + d + z, k + d + z);
  M.block(0, 0, k, k) = cl.A.transpose() * P + P * cl.A;
  M.block(0, k, k, d) = P * cl.B;
  M.block(k, 0, d, k) = cl.B.transpose() * P;
  M.block(0, k + d, k, z) = cl.C.transpose();
  M.block(k + d, 0, z, k) = cl.C;
  M.block(k, k + d, d, z) = cl.D.transpose();
  M.block(k + d, k, z, d) = cl.D;
  M.block(k, k, d, d) = -g * Mat::Identity(d, d);
  M.block(k + d, k + d, z, z) = -g * Mat::Identity(z, z);
  return Eigen::SelfAdjointEigenSolver<Mat>(M).eigenvalues().maxCoeff();
}

}  // namespace plt::testing
