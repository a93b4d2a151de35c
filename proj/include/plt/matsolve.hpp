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

#include "plt/statespace.hpp"

#ifndef LAPACK_COMPLEX_CPP
#define LAPACK_COMPLEX_CPP
#endif
#include <lapacke.h>

#include <optional>
#include <string>

namespace plt {

namespace detail {

inline lapack_logical select_open_lhp(const double* wr, const double* /*wi*/) { return *wr < 0.0; }

}  // namespace detail

/// Real Schur form M = Z T Z^T, optionally with open-left-half-plane eigenvalues ordered first.
struct RealSchur {
  Mat T, Z;
  int n_stable = 0;  ///< number of leading eigenvalues with negative real part (ordered form only)
};

inline RealSchur real_schur(const Mat& M, bool order_stable_first) {
  const lapack_int k = static_cast<lapack_int>(M.rows());
  RealSchur out;
  out.T = M;
  out.Z = Mat::Zero(k, k);
  if (k == 0) return out;
  Vec wr(k), wi(k);
  lapack_int sdim = 0;
  const lapack_int info =
      LAPACKE_dgees(LAPACK_COL_MAJOR, 'V', order_stable_first ? 'S' : 'N',
                    order_stable_first ? detail::select_open_lhp : nullptr, k, out.T.data(), k, &sdim, wr.data(),
                    wi.data(), out.Z.data(), k);
  if (info < 0) throw NumericalError("dgees: invalid argument");
  if (info > 0 && info <= k) throw NumericalError("dgees: QR iteration failed");
  // info == k+1 or k+2 signals reordering trouble; the count below is then unreliable
  if (info > k) throw NumericalError("dgees: eigenvalue reordering failed");
  out.n_stable = static_cast<int>(sdim);
  return out;
}

/// A X + X A^T + Q = 0 via Kronecker vectorization (small k only).
inline Mat solve_lyapunov_kron(const Mat& A, const Mat& Q) {
  const Eigen::Index k = A.rows();
  if (k > 12) throw DimensionError("solve_lyapunov_kron: k > 12");
  const Mat I = Mat::Identity(k, k);
  Mat L = Mat::Zero(k * k, k * k);
  // vec(A X) = (I kron A) vec X, vec(X A^T) = (A kron I) vec X
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) {
      L.block(i * k, j * k, k, k) += I(i, j) * A;
      L.block(i * k, j * k, k, k) += A(i, j) * I;
    }
  Eigen::Map<const Vec> q(Q.data(), k * k);
  Vec x = L.fullPivLu().solve(-q);
  Mat X = Eigen::Map<Mat>(x.data(), k, k);
  return 0.5 * (X + X.transpose());
}

inline double lyapunov_residual(const Mat& A, const Mat& X, const Mat& Q) {
  return (A * X + X * A.transpose() + Q).norm();
}

namespace detail {

/// Bartels-Stewart core for A X + X A^T + Q = 0 given the real Schur form of A.
inline Mat lyapunov_from_schur(const RealSchur& S, const Mat& Q) {
  const lapack_int k = static_cast<lapack_int>(S.T.rows());
  Mat C = -(S.Z.transpose() * Q * S.Z);
  double scale = 1.0;
  const lapack_int info =
      LAPACKE_dtrsyl(LAPACK_COL_MAJOR, 'N', 'T', 1, k, k, S.T.data(), k, S.T.data(), k, C.data(), k, &scale);
  if (info < 0) throw NumericalError("dtrsyl: invalid argument");
  if (info == 1) throw NumericalError("Lyapunov solve is near-resonant (lambda_i + lambda_j ~ 0)");
  Mat X = S.Z * (C / scale) * S.Z.transpose();
  return 0.5 * (X + X.transpose());
}

}  // namespace detail

/// Solves A X + X A^T + Q = 0 for stable A (Bartels-Stewart on the real Schur form).
inline Mat solve_lyapunov(const Mat& A, const Mat& Q) {
  const Eigen::Index k = A.rows();
  if (A.cols() != k || Q.rows() != k || Q.cols() != k) throw DimensionError("solve_lyapunov: shape mismatch");
  if (k == 0) return Mat(0, 0);
  const Mat Qs = 0.5 * (Q + Q.transpose());
  const RealSchur S = real_schur(A, false);
  double absc = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < k; ++i) absc = std::max(absc, S.T(i, i));
  if (absc >= -tol::stab) throw DomainError("solve_lyapunov: A is not stable");

  Mat X = detail::lyapunov_from_schur(S, Qs);
  const double bound = tol::lyap * (1.0 + Qs.norm());
  for (int it = 0; it < 2 && lyapunov_residual(A, X, Qs) > bound; ++it)
    X += detail::lyapunov_from_schur(S, A * X + X * A.transpose() + Qs);
  if (lyapunov_residual(A, X, Qs) > bound && k <= 12) {
    Mat Xk = solve_lyapunov_kron(A, Qs);
    if (lyapunov_residual(A, Xk, Qs) < lyapunov_residual(A, X, Qs)) X = Xk;
  }
  return X;
}

struct Gramians {
  Mat Lc, Lo;
  bool controllable_pd, observable_pd;
};

/// Controllability and observability Gramians of a stable triple.
inline Gramians gramians(const Mat& A, const Mat& B, const Mat& C) {
  Gramians g;
  g.Lc = solve_lyapunov(A, B * B.transpose());
  g.Lo = solve_lyapunov(A.transpose(), C.transpose() * C);
  const double sc = std::max(1.0, sigma_max(g.Lc)), so = std::max(1.0, sigma_max(g.Lo));
  g.controllable_pd = min_sym_eig(g.Lc) > tol::rank * sc;
  g.observable_pd = min_sym_eig(g.Lo) > tol::rank * so;
  return g;
}

enum class CareStatus { ok, imaginary_axis, no_stable_subspace, ill_conditioned };

inline const char* to_string(CareStatus s) {
  switch (s) {
    case CareStatus::ok: return "ok";
    case CareStatus::imaginary_axis: return "hamiltonian-eigenvalue-on-imaginary-axis";
    case CareStatus::no_stable_subspace: return "no-n-dimensional-stable-subspace";
    case CareStatus::ill_conditioned: return "ill-conditioned-invariant-subspace";
  }
  return "unknown";
}

struct CareResult {
  CareStatus status = CareStatus::ok;
  Mat X;
  double residual = 0.0;
};

inline double care_residual(const Mat& A, const Mat& G, const Mat& Q, const Mat& X) {
  return (A.transpose() * X + X * A - X * G * X + Q).norm();
}

/**
 * Stabilizing solution of A^T X + X A - X G X + Q = 0 (A - G X stable).
 * G and Q are symmetric of either sign. ham_tol is the imaginary-axis margin
 * relative to ||H||.
 */
inline CareResult solve_care(const Mat& A, const Mat& G, const Mat& Q, double ham_tol = tol::ham) {
  const Eigen::Index n = A.rows();
  CareResult r;
  if (n == 0) {
    r.X = Mat(0, 0);
    return r;
  }
  Mat H(2 * n, 2 * n);
  H << A, -G, -Q, -A.transpose();
  const double hnorm = sigma_max(H);
  const CVec ev = eigenvalues(H);
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (std::abs(ev(i).real()) <= ham_tol * hnorm) {
      r.status = CareStatus::imaginary_axis;
      return r;
    }
  const RealSchur S = real_schur(H, true);
  if (S.n_stable != n) {
    r.status = CareStatus::no_stable_subspace;
    return r;
  }
  const Mat X1 = S.Z.topLeftCorner(n, n), X2 = S.Z.bottomLeftCorner(n, n);
  Eigen::JacobiSVD<Mat> svd(X1);
  const Vec sv = svd.singularValues();
  if (sv(n - 1) < 1e-12 * std::max(1.0, sv(0))) {
    r.status = CareStatus::ill_conditioned;
    return r;
  }
  Mat X = X1.transpose().partialPivLu().solve(X2.transpose()).transpose();
  X = 0.5 * (X + X.transpose());

  // one Newton (Kleinman) correction when the residual is poor
  const double bound = tol::ric * (1.0 + X.squaredNorm());
  if (care_residual(A, G, Q, X) > bound) {
    const Mat Ac = A - G * X;
    if (is_stable(Ac)) {
      const Mat Res = A.transpose() * X + X * A - X * G * X + Q;
      X += solve_lyapunov(Ac.transpose(), Res);
      X = 0.5 * (X + X.transpose());
    }
  }
  r.X = X;
  r.residual = care_residual(A, G, Q, X);
  return r;
}

/// Filter and control Riccati solutions with the corresponding gains.
struct LqgRiccatiSolution {
  Mat P, S;
  Mat L;      ///< Kalman gain P C^T V^{-1}
  Mat K_gain; ///< feedback gain R^{-1} B^T S
  double residual_P = 0.0, residual_S = 0.0;
};

inline LqgRiccatiSolution solve_lqg_riccati(const Plant& pl) {
  check_plant_dims(pl);
  const Mat Vi = pl.V.llt().solve(Mat::Identity(pl.p(), pl.p()));
  const Mat Ri = pl.R.llt().solve(Mat::Identity(pl.m(), pl.m()));
  const CareResult f = solve_care(pl.A.transpose(), pl.C.transpose() * Vi * pl.C, pl.W);
  if (f.status != CareStatus::ok) throw NumericalError(std::string("filter Riccati: ") + to_string(f.status));
  const CareResult c = solve_care(pl.A, pl.B * Ri * pl.B.transpose(), pl.Q);
  if (c.status != CareStatus::ok) throw NumericalError(std::string("control Riccati: ") + to_string(c.status));
  LqgRiccatiSolution s;
  s.P = f.X;
  s.S = c.X;
  s.L = s.P * pl.C.transpose() * Vi;
  s.K_gain = Ri * pl.B.transpose() * s.S;
  s.residual_P = f.residual;
  s.residual_S = c.residual;
  return s;
}

/// Observer-based optimal LQG controller.
inline Policy lqg_optimal_policy(const LqgRiccatiSolution& s, const Plant& pl) {
  return {Mat::Zero(pl.m(), pl.p()), -s.K_gain, s.L, pl.A - pl.B * s.K_gain - s.L * pl.C};
}

enum class HinfFailure { none, no_stabilizing_X, no_stabilizing_Y, X_not_pd, Y_not_pd, coupling_violated };

inline const char* to_string(HinfFailure f) {
  switch (f) {
    case HinfFailure::none: return "none";
    case HinfFailure::no_stabilizing_X: return "no-stabilizing-X";
    case HinfFailure::no_stabilizing_Y: return "no-stabilizing-Y";
    case HinfFailure::X_not_pd: return "X-not-positive-definite";
    case HinfFailure::Y_not_pd: return "Y-not-positive-definite";
    case HinfFailure::coupling_violated: return "coupling-violated";
  }
  return "unknown";
}

struct HinfRiccatiSolution {
  double gamma = 0.0;
  Mat X, Y, F, L, Z;
  double rho = 0.0;  ///< spectral radius of X Y
  bool coupling_ok = false;
};

/// Outcome of the two-Riccati existence test at a given gamma.
struct HinfRiccatiAttempt {
  std::optional<HinfRiccatiSolution> solution;
  HinfFailure reason = HinfFailure::none;
  bool certified = false;  ///< failure is certified rather than numerically inconclusive
};

inline HinfRiccatiAttempt solve_hinf_riccati_pair(const Plant& pl, double gamma) {
  check_plant_dims(pl);
  if (!(gamma > 0)) throw DomainError("solve_hinf_riccati_pair: gamma must be positive");
  const int n = pl.n();
  const double g2 = 1.0 / (gamma * gamma);
  const Mat Vi = pl.V.llt().solve(Mat::Identity(pl.p(), pl.p()));
  const Mat Ri = pl.R.llt().solve(Mat::Identity(pl.m(), pl.m()));
  HinfRiccatiAttempt out;
  auto fail = [&out](HinfFailure f, bool cert) {
    out.reason = f;
    out.certified = cert;
    return out;
  };

  const Mat Gx = pl.B * Ri * pl.B.transpose() - g2 * pl.W;
  const CareResult rx = solve_care(pl.A, Gx, pl.Q);
  if (rx.status != CareStatus::ok)
    return fail(HinfFailure::no_stabilizing_X, rx.status == CareStatus::imaginary_axis);
  const Mat Gy = pl.C.transpose() * Vi * pl.C - g2 * pl.Q;
  const CareResult ry = solve_care(pl.A.transpose(), Gy, pl.W);
  if (ry.status != CareStatus::ok)
    return fail(HinfFailure::no_stabilizing_Y, ry.status == CareStatus::imaginary_axis);

  const double margin = 1e-8;
  const double ex = min_sym_eig(rx.X), ey = min_sym_eig(ry.X);
  if (ex <= 0) return fail(HinfFailure::X_not_pd, ex < -margin);
  if (ey <= 0) return fail(HinfFailure::Y_not_pd, ey < -margin);
  const double rho = eigenvalues(rx.X * ry.X).cwiseAbs().maxCoeff();
  if (rho >= gamma * gamma) return fail(HinfFailure::coupling_violated, rho - gamma * gamma > margin);

  HinfRiccatiSolution s;
  s.gamma = gamma;
  s.X = rx.X;
  s.Y = ry.X;
  s.F = Ri * pl.B.transpose() * s.X;
  s.L = s.Y * pl.C.transpose() * Vi;
  s.Z = (Mat::Identity(n, n) - g2 * s.Y * s.X).partialPivLu().inverse();
  s.rho = rho;
  s.coupling_ok = true;
  out.solution = s;
  return out;
}

/// Central (minimum-entropy) gamma-suboptimal controller.
inline Policy central_controller(const HinfRiccatiSolution& s, const Plant& pl) {
  if (!s.coupling_ok) throw DomainError("central_controller: coupling condition violated");
  const double g2 = 1.0 / (s.gamma * s.gamma);
  Policy K;
  K.DK = Mat::Zero(pl.m(), pl.p());
  K.CK = -s.F;
  K.BK = s.Z * s.L;
  K.AK = pl.A + g2 * pl.W * s.X - pl.B * s.F - s.Z * s.L * pl.C;
  return K;
}

struct GammaIteration {
  double gamma_star;  ///< feasible upper end of the final bracket
  double gamma_lo;    ///< infeasible lower end
  Policy policy;      ///< central controller at gamma_star
  int iterations;
};

/// Bisection over the two-Riccati feasibility test.
inline GammaIteration gamma_iteration(const Plant& pl, double tol_abs) {
  if (!(tol_abs > 0)) throw DomainError("gamma_iteration: tol must be positive");
  auto feasible = [&pl](double g) { return solve_hinf_riccati_pair(pl, g).solution.has_value(); };
  // D_cl of the zero policy vanishes, so the floor is the small positive epsilon
  double lo = 1e-8;
  double hi = 1.0;
  const double cap = std::ldexp(1.0, 40);
  while (!feasible(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > cap) throw NumericalError("gamma_iteration: no feasible gamma below 2^40");
  }
  int it = 0;
  while (hi - lo > tol_abs) {
    const double mid = 0.5 * (lo + hi);
    if (feasible(mid))
      hi = mid;
    else
      lo = mid;
    ++it;
  }
  const auto s = solve_hinf_riccati_pair(pl, hi);
  return {hi, lo, central_controller(*s.solution, pl), it};
}

}  // namespace plt
