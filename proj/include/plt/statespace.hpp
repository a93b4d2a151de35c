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

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace plt {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using Complex = std::complex<double>;

/// Numerical thresholds shared by all modules.
namespace tol {
inline constexpr double stab = 1e-9;     ///< margin on the spectral abscissa
inline constexpr double rank = 1e-8;     ///< relative singular-value cutoff
inline constexpr double psd = 1e-10;     ///< clamp for tiny negative eigenvalues
inline constexpr double pd = 1e-10;      ///< strict positivity floor
inline constexpr double lmi = 1e-7;      ///< nonstrict LMI eigenvalue slack
inline constexpr double ham = 1e-7;      ///< imaginary-axis test, relative to ||H||
inline constexpr double peak = 1e-6;     ///< relative band around the H-infinity norm
inline constexpr double lyap = 1e-9;     ///< scaled Lyapunov residual
inline constexpr double ric = 1e-8;      ///< scaled Riccati residual
}  // namespace tol

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a mathematical precondition (unstable loop, D_K != 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Matrix shapes do not agree.
class DimensionError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A numerical kernel failed to converge or produced an unusable result.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Continuous-time plant with LQG/H-infinity weights.
struct Plant {
  Mat A, B, C;
  Mat Q, R, W, V;

  int n() const { return static_cast<int>(A.rows()); }
  int m() const { return static_cast<int>(B.cols()); }
  int p() const { return static_cast<int>(C.rows()); }
};

/// Dynamic output-feedback controller K = [D_K C_K; B_K A_K] of order q.
struct Policy {
  Mat DK, CK, BK, AK;

  int q() const { return static_cast<int>(AK.rows()); }
  int m() const { return static_cast<int>(DK.rows()); }
  int p() const { return static_cast<int>(DK.cols()); }
  bool strictly_proper() const { return (DK.array() == 0.0).all(); }

  /// Lumped (m+q) x (p+q) matrix.
  Mat lumped() const {
    Mat K(m() + q(), p() + q());
    K << DK, CK, BK, AK;
    return K;
  }

  static Policy from_lumped(const Mat& K, int m, int p) {
    const int q = static_cast<int>(K.rows()) - m;
    if (q < 0 || K.cols() != p + q) throw DimensionError("lumped policy has inconsistent shape");
    return {K.topLeftCorner(m, p), K.topRightCorner(m, q), K.bottomLeftCorner(q, p),
            K.bottomRightCorner(q, q)};
  }

  static Policy zero(int m, int p, int q) {
    return {Mat::Zero(m, p), Mat::Zero(m, q), Mat::Zero(q, p), Mat::Zero(q, q)};
  }
};

/// Closed-loop realization (A_cl, B_cl, C_cl, D_cl).
struct ClosedLoop {
  Mat A, B, C, D;
  double abscissa = std::numeric_limits<double>::quiet_NaN();

  /// T(s) = C (sI - A)^{-1} B + D.
  CMat transfer(Complex s) const {
    const Eigen::Index k = A.rows();
    CMat M = s * CMat::Identity(k, k) - A.cast<Complex>();
    return C.cast<Complex>() * M.partialPivLu().solve(B.cast<Complex>()) + D.cast<Complex>();
  }
};

inline void check_plant_dims(const Plant& P) {
  const int n = P.n();
  if (P.A.cols() != n || P.B.rows() != n || P.C.cols() != n) throw DimensionError("plant A/B/C shapes disagree");
  if (P.Q.rows() != n || P.Q.cols() != n) throw DimensionError("Q must be n x n");
  if (P.W.rows() != n || P.W.cols() != n) throw DimensionError("W must be n x n");
  if (P.R.rows() != P.m() || P.R.cols() != P.m()) throw DimensionError("R must be m x m");
  if (P.V.rows() != P.p() || P.V.cols() != P.p()) throw DimensionError("V must be p x p");
}

inline void check_policy_dims(const Policy& K) {
  const int q = K.q();
  if (K.AK.cols() != q || K.BK.rows() != q || K.CK.cols() != q) throw DimensionError("policy A_K/B_K/C_K shapes disagree");
  if (K.CK.rows() != K.DK.rows() || K.BK.cols() != K.DK.cols()) throw DimensionError("policy D_K shape disagrees");
}

inline void check_dims(const Plant& P, const Policy& K) {
  check_plant_dims(P);
  check_policy_dims(K);
  if (K.m() != P.m() || K.p() != P.p()) throw DimensionError("policy does not match plant input/output sizes");
}

/// Symmetric PSD square root; eigenvalues in (-eps_psd, 0) are clamped to zero.
inline Mat sqrtm_psd(const Mat& S) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (S + S.transpose()));
  if (es.info() != Eigen::Success) throw NumericalError("symmetric eigendecomposition failed");
  Vec d = es.eigenvalues();
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (d(i) < -tol::psd) throw DomainError("matrix is not positive semidefinite");
    d(i) = std::sqrt(std::max(d(i), 0.0));
  }
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
}

inline double min_sym_eig(const Mat& S) {
  if (S.size() == 0) return std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (S + S.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

inline double max_sym_eig(const Mat& S) {
  if (S.size() == 0) return -std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (S + S.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

inline CVec eigenvalues(const Mat& A) {
  if (A.size() == 0) return CVec(0);
  Eigen::EigenSolver<Mat> es(A, false);
  if (es.info() != Eigen::Success) throw NumericalError("eigenvalue iteration did not converge");
  return es.eigenvalues();
}

/// Largest real part of the spectrum (-inf for an empty matrix).
inline double spectral_abscissa(const Mat& A) {
  if (A.size() == 0) return -std::numeric_limits<double>::infinity();
  return eigenvalues(A).real().maxCoeff();
}

inline bool is_stable(const Mat& A) { return spectral_abscissa(A) < -tol::stab; }

inline double sigma_max(const Mat& M) {
  if (M.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Mat>(M).singularValues()(0);
}

inline double sigma_min(const Mat& M) {
  if (M.size() == 0) return 0.0;
  Vec s = Eigen::JacobiSVD<Mat>(M).singularValues();
  return s(s.size() - 1);
}

/// Closed-loop matrices for the plant driven by the policy.
inline ClosedLoop assemble_closed_loop(const Plant& P, const Policy& K) {
  check_dims(P, K);
  const int n = P.n(), m = P.m(), p = P.p(), q = K.q();
  const Mat Wh = sqrtm_psd(P.W), Vh = sqrtm_psd(P.V);
  const Mat Qh = sqrtm_psd(P.Q), Rh = sqrtm_psd(P.R);

  ClosedLoop cl;
  cl.A.resize(n + q, n + q);
  cl.A << P.A + P.B * K.DK * P.C, P.B * K.CK, K.BK * P.C, K.AK;
  cl.B.resize(n + q, n + p);
  cl.B << Wh, P.B * K.DK * Vh, Mat::Zero(q, n), K.BK * Vh;
  cl.C.resize(n + m, n + q);
  cl.C << Qh, Mat::Zero(n, q), Rh * K.DK * P.C, Rh * K.CK;
  cl.D = Mat::Zero(n + m, n + p);
  cl.D.bottomRightCorner(m, p) = Rh * K.DK * Vh;
  cl.abscissa = spectral_abscissa(cl.A);
  return cl;
}

struct StabilityReport {
  bool stable;
  double abscissa;
};

inline StabilityReport is_internally_stabilizing(const Plant& P, const Policy& K) {
  check_dims(P, K);
  const int n = P.n(), q = K.q();
  Mat Acl(n + q, n + q);
  Acl << P.A + P.B * K.DK * P.C, P.B * K.CK, K.BK * P.C, K.AK;
  const double a = spectral_abscissa(Acl);
  return {a < -tol::stab, a};
}

/// Number of singular values above rel_tol * sigma_max.
inline int numerical_rank(const Mat& M, double rel_tol = tol::rank) {
  if (M.size() == 0) return 0;
  Vec s = Eigen::JacobiSVD<Mat>(M).singularValues();
  if (s(0) == 0.0) return 0;
  return static_cast<int>((s.array() > rel_tol * s(0)).count());
}

/// Kalman controllability matrix [B, AB, ..., A^{k-1}B] with unit-norm block columns.
inline Mat controllability_matrix(const Mat& A, const Mat& B) {
  const Eigen::Index k = A.rows(), c = B.cols();
  Mat Ctrb(k, k * c);
  Mat blk = B;
  for (Eigen::Index i = 0; i < k; ++i) {
    Mat scaled = blk;
    for (Eigen::Index j = 0; j < c; ++j) {
      const double nj = scaled.col(j).norm();
      if (nj > 0) scaled.col(j) /= nj;
    }
    Ctrb.middleCols(i * c, c) = scaled;
    blk = A * blk;
  }
  return Ctrb;
}

inline bool controllability_test(const Mat& A, const Mat& B) {
  if (A.rows() != A.cols() || B.rows() != A.rows()) throw DimensionError("controllability_test: shape mismatch");
  if (A.rows() == 0) return true;
  return numerical_rank(controllability_matrix(A, B)) == A.rows();
}

inline bool observability_test(const Mat& C, const Mat& A) {
  if (A.rows() != A.cols() || C.cols() != A.rows()) throw DimensionError("observability_test: shape mismatch");
  return controllability_test(A.transpose(), C.transpose());
}

inline bool is_minimal(const Policy& K) {
  check_policy_dims(K);
  return controllability_test(K.AK, K.BK) && observability_test(K.CK, K.AK);
}

struct PlantReport {
  bool ok = true;
  std::vector<std::string> failures;
};

/// Checks weight definiteness and the structural assumptions on the plant.
inline PlantReport validate_plant(const Plant& P) {
  check_plant_dims(P);
  PlantReport r;
  auto fail = [&r](const std::string& s) {
    r.ok = false;
    r.failures.push_back(s);
  };
  if (min_sym_eig(P.Q) < -tol::psd) fail("Q is not positive semidefinite");
  if (min_sym_eig(P.W) < -tol::psd) fail("W is not positive semidefinite");
  if (min_sym_eig(P.R) <= tol::pd) fail("R is not positive definite");
  if (min_sym_eig(P.V) <= tol::pd) fail("V is not positive definite");
  if (!r.ok) return r;
  if (!controllability_test(P.A, P.B)) fail("(A, B) is not controllable");
  if (!observability_test(P.C, P.A)) fail("(C, A) is not observable");
  if (!controllability_test(P.A, sqrtm_psd(P.W))) fail("(A, W^1/2) is not controllable");
  if (!observability_test(sqrtm_psd(P.Q), P.A)) fail("(Q^1/2, A) is not observable");
  return r;
}

/// Change of controller coordinates xi -> T xi.
inline Policy similarity_transform(const Policy& K, const Mat& T, double kappa_max = 1e12) {
  check_policy_dims(K);
  if (T.rows() != K.q() || T.cols() != K.q()) throw DimensionError("similarity_transform: T must be q x q");
  if (K.q() == 0) return K;
  Vec s = Eigen::JacobiSVD<Mat>(T).singularValues();
  if (s(s.size() - 1) == 0.0 || s(0) / s(s.size() - 1) > kappa_max)
    throw DomainError("similarity_transform: T is singular or ill-conditioned");
  const Mat Ti = T.partialPivLu().inverse();
  return {K.DK, K.CK * Ti, T * K.BK, T * K.AK * Ti};
}

enum class AugmentMode { zero, controllable, observable };

/**
 * Order augmentation with a stable block Lambda.
 *
 * zero:         [[D_K, C_K, 0], [B_K, A_K, 0], [0, 0, Lambda]]
 * controllable: the new rows receive coupling = [B~, A~21] of shape q' x (p+q)
 *               (a q' x p coupling is padded with zeros)
 * observable:   the new columns receive coupling = [C~; A~12] of shape (m+q) x q'
 *               (an m x q' coupling is padded with zeros)
 * The added states are unobservable or uncontrollable, so T_zd is unchanged.
 */
inline Policy augment_policy(const Policy& K, const Mat& Lambda, AugmentMode mode = AugmentMode::zero,
                             const Mat& coupling = Mat()) {
  check_policy_dims(K);
  const int q = K.q(), m = K.m(), p = K.p();
  const int qa = static_cast<int>(Lambda.rows());
  if (Lambda.cols() != qa) throw DimensionError("augment_policy: Lambda must be square");
  if (!is_stable(Lambda)) throw DomainError("augment_policy: Lambda is not stable");

  Mat Kt = Mat::Zero(m + q + qa, p + q + qa);
  Kt.topLeftCorner(m + q, p + q) = K.lumped();
  Kt.bottomRightCorner(qa, qa) = Lambda;
  if (mode == AugmentMode::controllable && coupling.size() > 0) {
    if (coupling.rows() != qa || (coupling.cols() != p && coupling.cols() != p + q))
      throw DimensionError("augment_policy: controllable coupling must be q' x p or q' x (p+q)");
    Kt.block(m + q, 0, qa, coupling.cols()) = coupling;
  } else if (mode == AugmentMode::observable && coupling.size() > 0) {
    if (coupling.cols() != qa || (coupling.rows() != m && coupling.rows() != m + q))
      throw DimensionError("augment_policy: observable coupling must be m x q' or (m+q) x q'");
    Kt.block(0, p + q, coupling.rows(), qa) = coupling;
  }
  return Policy::from_lumped(Kt, m, p);
}

/// Paths toward the zero boundary policy of the scalar plant.
enum class BoundaryPath {
  converging,  ///< (D_K, C_K; B_K, A_K) = (0, e; -e, 0)
  diverging    ///< (0, e + e^4; -e, e^2)
};

inline Policy boundary_path_policy(BoundaryPath path, double eps) {
  Policy K = Policy::zero(1, 1, 1);
  if (path == BoundaryPath::converging) {
    K.CK(0, 0) = eps;
    K.BK(0, 0) = -eps;
  } else {
    K.CK(0, 0) = eps + std::pow(eps, 4);
    K.BK(0, 0) = -eps;
    K.AK(0, 0) = eps * eps;
  }
  return K;
}

}  // namespace plt
