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

namespace plt {

/// Closed-loop covariance X_K and observability-type solution Y_K.
struct GramianPair {
  int n = 0, q = 0;
  Mat X, Y;
  double cost = 0.0;  ///< sqrt(tr(C_cl X C_cl^T))

  Mat X11() const { return X.topLeftCorner(n, n); }
  Mat X12() const { return X.topRightCorner(n, q); }
  Mat X22() const { return X.bottomRightCorner(q, q); }
  Mat Y11() const { return Y.topLeftCorner(n, n); }
  Mat Y12() const { return Y.topRightCorner(n, q); }
  Mat Y22() const { return Y.bottomRightCorner(q, q); }
};

namespace detail {

inline ClosedLoop lqg_closed_loop(const Plant& pl, const Policy& K) {
  check_dims(pl, K);
  if (!K.strictly_proper()) throw DomainError("LQG cost is infinite for D_K != 0");
  ClosedLoop cl = assemble_closed_loop(pl, K);
  if (!(cl.abscissa < -tol::stab)) throw DomainError("policy is not internally stabilizing");
  return cl;
}

}  // namespace detail

inline GramianPair gramian_pair(const Plant& pl, const Policy& K) {
  const ClosedLoop cl = detail::lqg_closed_loop(pl, K);
  GramianPair g;
  g.n = pl.n();
  g.q = K.q();
  g.X = solve_lyapunov(cl.A, cl.B * cl.B.transpose());
  g.Y = solve_lyapunov(cl.A.transpose(), cl.C.transpose() * cl.C);
  g.cost = std::sqrt(std::max(0.0, (cl.C * g.X * cl.C.transpose()).trace()));
  return g;
}

inline double lqg_cost(const Plant& pl, const Policy& K) { return gramian_pair(pl, K).cost; }

/// Partial derivatives of J_LQG over the strictly proper parameters.
struct LqgGradient {
  Mat dA, dB, dC;
  double norm() const { return std::sqrt(dA.squaredNorm() + dB.squaredNorm() + dC.squaredNorm()); }
};

inline LqgGradient lqg_gradient(const Plant& pl, const Policy& K, const GramianPair& g) {
  const double J = g.cost;
  if (!(J > 0)) throw NumericalError("lqg_gradient: zero cost");
  const Mat X11 = g.X11(), X12 = g.X12(), X22 = g.X22();
  const Mat Y11 = g.Y11(), Y12 = g.Y12(), Y22 = g.Y22();
  LqgGradient d;
  d.dA = (Y12.transpose() * X12 + Y22 * X22) / J;
  d.dB = (Y22 * K.BK * pl.V + Y22 * X12.transpose() * pl.C.transpose() + Y12.transpose() * X11 * pl.C.transpose()) / J;
  d.dC = (pl.R * K.CK * X22 + pl.B.transpose() * Y11 * X12 + pl.B.transpose() * Y12 * X22) / J;
  return d;
}

inline LqgGradient lqg_gradient(const Plant& pl, const Policy& K) { return lqg_gradient(pl, K, gramian_pair(pl, K)); }

/// Strictly proper parameters stacked as [vec A_K; vec B_K; vec C_K].
inline Vec pack_strictly_proper(const Policy& K) {
  Vec v(K.AK.size() + K.BK.size() + K.CK.size());
  v << Eigen::Map<const Vec>(K.AK.data(), K.AK.size()), Eigen::Map<const Vec>(K.BK.data(), K.BK.size()),
      Eigen::Map<const Vec>(K.CK.data(), K.CK.size());
  return v;
}

inline Policy unpack_strictly_proper(const Vec& v, int m, int p, int q) {
  if (v.size() != q * q + q * p + m * q) throw DimensionError("unpack_strictly_proper: wrong length");
  Policy K = Policy::zero(m, p, q);
  K.AK = Eigen::Map<const Mat>(v.data(), q, q);
  K.BK = Eigen::Map<const Mat>(v.data() + q * q, q, p);
  K.CK = Eigen::Map<const Mat>(v.data() + q * q + q * p, m, q);
  return K;
}

inline Vec pack_gradient(const LqgGradient& d) {
  Vec v(d.dA.size() + d.dB.size() + d.dC.size());
  v << Eigen::Map<const Vec>(d.dA.data(), d.dA.size()), Eigen::Map<const Vec>(d.dB.data(), d.dB.size()),
      Eigen::Map<const Vec>(d.dC.data(), d.dC.size());
  return v;
}

enum class Informativity { informative, marginal, not_informative };

inline const char* to_string(Informativity i) {
  switch (i) {
    case Informativity::informative: return "informative";
    case Informativity::marginal: return "marginal";
    case Informativity::not_informative: return "not-informative";
  }
  return "unknown";
}

struct InformativityReport {
  Informativity verdict;
  double sigma_min_X12;
  double threshold;  ///< tau_rank * sigma_max(X_K)

  /// Marginal cases are still above the threshold.
  bool informative() const { return verdict != Informativity::not_informative; }
};

inline InformativityReport informativity_test(const Plant& pl, const Policy& K) {
  check_dims(pl, K);
  if (K.q() != pl.n()) throw DomainError("informativity_test requires a full-order policy (q = n)");
  const GramianPair g = gramian_pair(pl, K);
  const double s = sigma_min(g.X12());
  const double thr = tol::rank * sigma_max(g.X);
  Informativity v = Informativity::informative;
  if (s <= thr)
    v = Informativity::not_informative;
  else if (s <= 10.0 * thr)
    v = Informativity::marginal;
  return {v, s, thr};
}

struct H2LmiReport {
  double lmi_residual_1 = 0.0;  ///< max eigenvalue of [[A^T P + P A, P B], [B^T P, -gamma I]]
  double lmi_residual_2 = 0.0;  ///< min eigenvalue of [[P, C^T], [C, Gamma]]
  double trace_slack = 0.0;     ///< gamma - tr(Gamma)
  double p_min_eig = 0.0;
  bool valid = false;
};

/// Residuals of the nonstrict H2 LMIs at an arbitrary candidate (P, Gamma).
inline H2LmiReport check_lmi_residual_h2(const ClosedLoop& cl, double gamma, const Mat& P, const Mat& Gamma) {
  const Eigen::Index k = cl.A.rows(), d = cl.B.cols(), z = cl.C.rows();
  if (P.rows() != k || P.cols() != k || Gamma.rows() != z || Gamma.cols() != z)
    throw DimensionError("check_lmi_residual_h2: shape mismatch");
  Mat M1(k + d, k + d);
  M1 << cl.A.transpose() * P + P * cl.A, P * cl.B, cl.B.transpose() * P, -gamma * Mat::Identity(d, d);
  Mat M2(k + z, k + z);
  M2 << P, cl.C.transpose(), cl.C, Gamma;
  H2LmiReport r;
  r.lmi_residual_1 = max_sym_eig(M1);
  r.lmi_residual_2 = min_sym_eig(M2);
  r.trace_slack = gamma - Gamma.trace();
  r.p_min_eig = min_sym_eig(P);
  r.valid = r.lmi_residual_1 <= tol::lmi && r.lmi_residual_2 >= -tol::lmi && r.trace_slack >= -tol::lmi &&
            r.p_min_eig > tol::pd;
  return r;
}

struct H2Certificate {
  double gamma = 0.0;
  Mat P, Gamma;
  Mat X;  ///< the covariance-type matrix with P = gamma X^{-1}
  H2LmiReport report;
  double p12_sigma_min = 0.0;
  bool completed = false;  ///< X_K was singular and was completed on its kernel
  bool valid() const { return report.valid; }
};

/**
 * Certificate P = gamma X_K^{-1}, Gamma = C_cl P^{-1} C_cl^T at gamma = J_LQG.
 *
 * A singular X_K is an error unless complete_singular is set; then the kernel
 * directions N are filled with the solution of A_cl Z + Z A_cl^T + N N^T = 0,
 * which keeps the first LMI feasible.
 */
inline H2Certificate build_h2_certificate(const Plant& pl, const Policy& K, bool complete_singular = false) {
  const ClosedLoop cl = detail::lqg_closed_loop(pl, K);
  const GramianPair g = gramian_pair(pl, K);
  H2Certificate c;
  c.gamma = g.cost;
  c.X = g.X;
  Eigen::SelfAdjointEigenSolver<Mat> es(g.X);
  const Vec ev = es.eigenvalues();
  const double thr = tol::rank * std::max(1.0, ev(ev.size() - 1));
  if (ev(0) <= thr) {
    if (!complete_singular) throw NumericalError("build_h2_certificate: X_K is singular");
    const Eigen::Index nk = (ev.array() <= thr).count();
    const Mat N = es.eigenvectors().leftCols(nk);
    c.X += solve_lyapunov(cl.A, N * N.transpose());
    c.completed = true;
  }
  c.P = c.gamma * c.X.llt().solve(Mat::Identity(c.X.rows(), c.X.cols()));
  c.P = 0.5 * (c.P + c.P.transpose());
  c.Gamma = cl.C * c.X * cl.C.transpose() / c.gamma;
  c.report = check_lmi_residual_h2(cl, c.gamma, c.P, c.Gamma);
  c.p12_sigma_min = sigma_min(c.P.topRightCorner(pl.n(), K.q()));
  return c;
}

struct LqgNondegeneracy {
  bool nondegenerate;
  InformativityReport informativity;
  bool certificate_valid;  ///< false when not informative
};

/// Non-degeneracy through the informativity equivalence, confirmed by the certificate.
inline LqgNondegeneracy is_nondegenerate_lqg(const Plant& pl, const Policy& K) {
  const InformativityReport info = informativity_test(pl, K);
  LqgNondegeneracy out{info.informative(), info, false};
  if (info.informative()) {
    const H2Certificate c = build_h2_certificate(pl, K, true);
    out.certificate_valid = c.valid() && c.p12_sigma_min > tol::rank * sigma_max(c.P);
  }
  return out;
}

/// Which form of the LQG cost a derivative refers to: J or the trace cost J^2.
enum class CostForm { root, squared };

/**
 * Hessian over [vec A_K; vec B_K; vec C_K] by central differences of the
 * analytic gradient. With CostForm::squared the gradient of J^2 = 2 J grad J is
 * differenced instead.
 */
inline Mat fd_hessian(const Plant& pl, const Policy& K, double h, CostForm form = CostForm::root) {
  if (h < 1e-6 || h > 1e-3) throw DomainError("fd_hessian: h must lie in [1e-6, 1e-3]");
  const int m = pl.m(), p = pl.p(), q = K.q();
  const Vec x0 = pack_strictly_proper(K);
  const Eigen::Index d = x0.size();
  auto grad_at = [&](const Vec& x) {
    const Policy Kx = unpack_strictly_proper(x, m, p, q);
    const GramianPair g = gramian_pair(pl, Kx);
    const Vec d = pack_gradient(lqg_gradient(pl, Kx, g));
    return form == CostForm::squared ? Vec(2.0 * g.cost * d) : d;
  };
  detail::lqg_closed_loop(pl, K);
  Mat H(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    double hi = h;
    for (int tries = 0;; ++tries) {
      Vec xp = x0, xm = x0;
      xp(i) += hi;
      xm(i) -= hi;
      const Policy Kp = unpack_strictly_proper(xp, m, p, q), Km = unpack_strictly_proper(xm, m, p, q);
      if (is_internally_stabilizing(pl, Kp).stable && is_internally_stabilizing(pl, Km).stable) {
        H.col(i) = (grad_at(xp) - grad_at(xm)) / (2.0 * hi);
        break;
      }
      if (tries > 20) throw DomainError("fd_hessian: no stabilizing step");
      hi *= 0.5;
    }
  }
  return 0.5 * (H + H.transpose());
}

}  // namespace plt
