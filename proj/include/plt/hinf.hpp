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

#include "plt/lqg.hpp"

#include <array>
#include <numeric>

namespace plt {

inline constexpr double kInfFreq = std::numeric_limits<double>::infinity();

/// Frequencies used when sigma_max is flat over the whole axis.
inline constexpr std::array<double, 8> kFlatPeakSample = {0.0, 0.1, 0.3, 0.5, 1.0, 2.0, 5.0, 10.0};

struct Peak {
  double omega;  ///< rad/s, or kInfFreq
  double sigma;
  CMat Qs;  ///< orthonormal basis of the top left singular subspace
  CMat Vs;  ///< matching right singular vectors
};

struct HinfEvaluation {
  double gamma = 0.0;        ///< best attained sigma_max (lower end of the bracket)
  double gamma_upper = 0.0;  ///< certified upper end of the bracket
  std::vector<Peak> peaks;
  double bracket_width = 0.0;
  bool flat = false;  ///< sigma_max constant in frequency
  int iterations = 0;
};

/// sigma_max of T(j omega); omega = inf gives sigma_max(D).
inline double sigma_at(const ClosedLoop& cl, double omega) {
  if (std::isinf(omega)) return sigma_max(cl.D);
  Eigen::JacobiSVD<CMat> svd(cl.transfer(Complex(0.0, omega)));
  return svd.singularValues()(0);
}

/// Top singular pair(s) of T(j omega); singular values within rel_gap of the top are grouped.
inline Peak peak_at(const ClosedLoop& cl, double omega, double rel_gap = 1e-6) {
  const CMat T = std::isinf(omega) ? CMat(cl.D.cast<Complex>()) : cl.transfer(Complex(0.0, omega));
  Eigen::JacobiSVD<CMat> svd(T, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vec s = svd.singularValues();
  Eigen::Index r = 1;
  while (r < s.size() && s(r) >= s(0) * (1.0 - rel_gap)) ++r;
  return {omega, s(0), svd.matrixU().leftCols(r), svd.matrixV().leftCols(r)};
}

namespace detail {

/// Hamiltonian whose imaginary eigenvalues j omega mark sigma_i(T(j omega)) = gamma.
inline Mat norm_hamiltonian(const ClosedLoop& cl, double gamma) {
  const Eigen::Index k = cl.A.rows(), d = cl.B.cols(), z = cl.C.rows();
  const Mat Rg = gamma * gamma * Mat::Identity(d, d) - cl.D.transpose() * cl.D;
  const Mat Ri = Rg.ldlt().solve(Mat::Identity(d, d));
  const Mat At = cl.A + cl.B * Ri * cl.D.transpose() * cl.C;
  Mat H(2 * k, 2 * k);
  H << At, cl.B * Ri * cl.B.transpose(),
      -cl.C.transpose() * (Mat::Identity(z, z) + cl.D * Ri * cl.D.transpose()) * cl.C, -At.transpose();
  return H;
}

/// Nonnegative frequencies of the (numerically) imaginary Hamiltonian eigenvalues, sorted.
inline std::vector<double> crossing_frequencies(const ClosedLoop& cl, double gamma) {
  const Mat H = norm_hamiltonian(cl, gamma);
  const CVec ev = eigenvalues(H);
  const double thr = tol::ham * std::max(1.0, sigma_max(H));
  std::vector<double> w;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (std::abs(ev(i).real()) <= thr && ev(i).imag() >= 0) w.push_back(ev(i).imag());
  std::sort(w.begin(), w.end());
  return w;
}

/// Golden-section maximization of sigma_max over [a, b].
inline std::pair<double, double> golden_max(const ClosedLoop& cl, double a, double b, int iters = 80) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = sigma_at(cl, x1), f2 = sigma_at(cl, x2);
  for (int i = 0; i < iters && (b - a) > 1e-14 * (1.0 + std::abs(b)); ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = sigma_at(cl, x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = sigma_at(cl, x1);
    }
  }
  return f1 >= f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

/// Coarse probe grid scaled to the closed-loop bandwidth.
inline std::vector<double> probe_grid(const ClosedLoop& cl) {
  std::vector<double> w = {0.0};
  const CVec ev = eigenvalues(cl.A);
  double scale = 1.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) scale = std::max(scale, std::abs(ev(i)));
  for (int i = 0; i <= 40; ++i) w.push_back(scale * std::pow(10.0, -6.0 + 8.0 * i / 40.0));
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    w.push_back(std::abs(ev(i).imag()));
    w.push_back(std::abs(ev(i)));
  }
  return w;
}

}  // namespace detail

/**
 * H-infinity norm by bisection on the Hamiltonian imaginary-axis test.
 *
 * The lower end of the bracket is always an attained sigma_max value. A trial
 * level counts as crossed only when sigma_max at one of the reported crossing
 * frequencies (or their midpoints) really reaches it.
 */
inline HinfEvaluation hinf_norm(const ClosedLoop& cl, double rel_tol = 1e-10) {
  if (!(spectral_abscissa(cl.A) < -tol::stab)) throw DomainError("hinf_norm: A_cl is not stable");
  HinfEvaluation ev;
  const std::vector<double> probes = detail::probe_grid(cl);
  double lo = sigma_max(cl.D), lo_w = kInfFreq;
  double pmin = std::numeric_limits<double>::infinity(), pmax = 0.0;
  for (double w : probes) {
    const double s = sigma_at(cl, w);
    pmin = std::min(pmin, s);
    pmax = std::max(pmax, s);
    if (s > lo) {
      lo = s;
      lo_w = w;
    }
  }
  pmin = std::min(pmin, sigma_max(cl.D));
  if (lo == 0.0) {
    ev.gamma = ev.gamma_upper = 0.0;
    ev.peaks.push_back(peak_at(cl, 0.0));
    return ev;
  }

  // returns the best attained sigma at or above the level, or -1 when not crossed
  auto crossed = [&cl](double level, double& w_best) {
    const std::vector<double> w = detail::crossing_frequencies(cl, level);
    if (w.empty()) return -1.0;
    std::vector<double> cand = w;
    cand.push_back(0.0);
    for (size_t i = 0; i + 1 < w.size(); ++i) cand.push_back(0.5 * (w[i] + w[i + 1]));
    double best = -1.0;
    for (double c : cand) {
      const double s = sigma_at(cl, c);
      if (s > best) {
        best = s;
        w_best = c;
      }
    }
    return best >= level * (1.0 - 1e-12) ? best : -1.0;
  };

  double hi = lo * (1.0 + rel_tol);
  double w_try = 0.0;
  for (double s; (s = crossed(hi, w_try)) > 0;) {
    lo = std::max(lo, s);
    if (s >= lo) lo_w = w_try;
    hi = 2.0 * lo;
    if (++ev.iterations > 200) throw NumericalError("hinf_norm: upper bracket search failed");
  }
  while (hi - lo > rel_tol * lo) {
    const double mid = 0.5 * (lo + hi);
    const double s = crossed(mid, w_try);
    if (s > 0) {
      if (s > lo) {
        lo = s;
        lo_w = w_try;
      }
      lo = std::max(lo, mid);
    } else {
      hi = mid;
    }
    if (++ev.iterations > 500) throw NumericalError("hinf_norm: bisection did not converge");
  }
  ev.gamma_upper = hi;
  ev.bracket_width = hi - lo;

  // flat sigma_max: every frequency is a peak
  ev.flat = (pmax - pmin) < tol::peak * pmax;
  if (ev.flat) {
    ev.gamma = lo;
    for (double w : kFlatPeakSample) ev.peaks.push_back(peak_at(cl, w));
    return ev;
  }

  // peak extraction just below the attained level
  std::vector<double> cand = {0.0, kInfFreq};
  if (!std::isinf(lo_w)) cand.push_back(lo_w);
  const std::vector<double> w = detail::crossing_frequencies(cl, lo * (1.0 - 10.0 * tol::peak));
  for (double x : w) cand.push_back(x);
  for (size_t i = 0; i + 1 < w.size(); ++i) cand.push_back(0.5 * (w[i] + w[i + 1]));
  std::vector<std::pair<double, double>> refined;
  for (double c : cand) {
    if (std::isinf(c)) {
      refined.emplace_back(c, sigma_max(cl.D));
      continue;
    }
    const double r = 1e-3 * (1.0 + c);
    refined.push_back(detail::golden_max(cl, std::max(0.0, c - r), c + r));
  }
  double best = lo;
  for (auto& [x, s] : refined) best = std::max(best, s);
  ev.gamma = best;
  std::sort(refined.begin(), refined.end());
  for (auto& [x, s] : refined) {
    if (s < best * (1.0 - tol::peak)) continue;
    bool merged = false;
    for (auto& pk : ev.peaks)
      if ((std::isinf(x) && std::isinf(pk.omega)) ||
          (!std::isinf(x) && !std::isinf(pk.omega) && std::abs(pk.omega - x) <= 1e-6 * (1.0 + std::abs(x)))) {
        merged = true;
        break;
      }
    if (!merged) ev.peaks.push_back(peak_at(cl, x));
  }
  if (ev.gamma_upper < ev.gamma) ev.gamma_upper = ev.gamma;
  return ev;
}

inline double hinf_cost(const Plant& pl, const Policy& K, double rel_tol = 1e-10) {
  const ClosedLoop cl = assemble_closed_loop(pl, K);
  if (!(cl.abscissa < -tol::stab)) throw DomainError("policy is not internally stabilizing");
  return hinf_norm(cl, rel_tol).gamma;
}

/// Weighted frequency entering a subgradient: Y is Hermitian PSD of size dim(Q_s).
struct WeightedFrequency {
  double omega;
  CMat Y;
};

struct SubgradientElement {
  Mat Phi;  ///< (m+q) x (p+q)
  std::vector<double> frequencies;
  std::vector<CMat> weights;
};

namespace detail {

/// Per-frequency term of the subgradient formula before the 1/J factor and the real part.
inline CMat subgradient_term(const Plant& pl, const Policy& K, const ClosedLoop& cl, double omega,
                             const CMat& Qs, const CMat& Y) {
  const int n = pl.n(), m = pl.m(), p = pl.p(), q = K.q();
  const Mat Vh = sqrtm_psd(pl.V), Rh = sqrtm_psd(pl.R);
  Mat D21 = Mat::Zero(p + q, n + p);
  D21.topRightCorner(p, p) = Vh;
  Mat D12 = Mat::Zero(n + m, m + q);
  D12.bottomLeftCorner(m, m) = Rh;
  CMat left = D21.cast<Complex>();
  CMat right = D12.cast<Complex>();
  CMat T = cl.D.cast<Complex>();
  if (!std::isinf(omega)) {
    Mat C2 = Mat::Zero(p + q, n + q);
    C2.topLeftCorner(p, n) = pl.C;
    C2.bottomRightCorner(q, q) = Mat::Identity(q, q);
    Mat B2 = Mat::Zero(n + q, m + q);
    B2.topLeftCorner(n, m) = pl.B;
    B2.bottomRightCorner(q, q) = Mat::Identity(q, q);
    const Eigen::Index k = cl.A.rows();
    const CMat M = Complex(0.0, omega) * CMat::Identity(k, k) - cl.A.cast<Complex>();
    const Eigen::PartialPivLU<CMat> lu(M);
    const CMat RB = lu.solve(cl.B.cast<Complex>());
    const CMat RB2 = lu.solve(B2.cast<Complex>());
    left += C2.cast<Complex>() * RB;
    right += cl.C.cast<Complex>() * RB2;
    T += cl.C.cast<Complex>() * RB;
  }
  return left * T.adjoint() * Qs * Y * Qs.adjoint() * right;
}

}  // namespace detail

/**
 * Clarke subgradient element for frequencies from the peak set.
 * Each weight Y must match the multiplicity of the top singular value there.
 */
inline SubgradientElement clarke_subgradient(const Plant& pl, const Policy& K, const HinfEvaluation& ev,
                                             const std::vector<WeightedFrequency>& weights) {
  const ClosedLoop cl = assemble_closed_loop(pl, K);
  if (weights.empty()) throw DomainError("clarke_subgradient: no frequencies given");
  double trace = 0.0;
  for (const auto& wf : weights) trace += wf.Y.trace().real();
  if (std::abs(trace - 1.0) > 1e-12) throw DomainError("clarke_subgradient: weights must have unit total trace");
  const double J = ev.gamma;
  SubgradientElement out;
  CMat acc = CMat::Zero(pl.p() + K.q(), pl.m() + K.q());
  for (const auto& wf : weights) {
    const Peak pk = peak_at(cl, wf.omega);
    if (std::abs(pk.sigma - J) > tol::peak * J)
      throw DomainError("clarke_subgradient: frequency is not in the peak set");
    if (wf.Y.rows() != pk.Qs.cols() || wf.Y.cols() != pk.Qs.cols())
      throw DimensionError("clarke_subgradient: weight size differs from the peak multiplicity");
    if (Eigen::SelfAdjointEigenSolver<CMat>(wf.Y).eigenvalues().minCoeff() < -1e-12)
      throw DomainError("clarke_subgradient: weight is not positive semidefinite");
    acc += detail::subgradient_term(pl, K, cl, wf.omega, pk.Qs, wf.Y);
    out.frequencies.push_back(wf.omega);
    out.weights.push_back(wf.Y);
  }
  out.Phi = (acc.real() / J).transpose();
  return out;
}

/// Rank-one generators Phi for each peak frequency and each top singular direction.
inline std::vector<Mat> peak_generators(const Plant& pl, const Policy& K, const HinfEvaluation& ev,
                                        const std::vector<double>& freqs) {
  const ClosedLoop cl = assemble_closed_loop(pl, K);
  std::vector<Mat> gens;
  for (double w : freqs) {
    const Peak pk = peak_at(cl, w);
    if (std::abs(pk.sigma - ev.gamma) > tol::peak * ev.gamma) continue;
    for (Eigen::Index r = 0; r < pk.Qs.cols(); ++r) {
      const CMat Y = CMat::Identity(1, 1);
      const CMat term = detail::subgradient_term(pl, K, cl, w, pk.Qs.col(r), Y);
      gens.push_back((term.real() / ev.gamma).transpose());
    }
  }
  return gens;
}

/// Euclidean projection onto the probability simplex.
inline Vec project_simplex(const Vec& v) {
  const Eigen::Index n = v.size();
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<>());
  double css = 0.0, theta = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    css += u[i];
    const double t = (css - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0) theta = t;
  }
  return (v.array() - theta).max(0.0).matrix();
}

struct MinNormResult {
  Vec lambda;
  Mat element;
  double norm;
  int iterations;
};

/// Minimum-norm element of conv{G_i}: accelerated projected gradient on the simplex.
inline MinNormResult min_norm_hull(const std::vector<Mat>& G, int max_iter = 10000, double tol_stat = 1e-10) {
  if (G.empty()) throw DomainError("min_norm_hull: empty generator set");
  const Eigen::Index k = static_cast<Eigen::Index>(G.size());
  Mat M(G[0].size(), k);
  for (Eigen::Index i = 0; i < k; ++i) M.col(i) = Eigen::Map<const Vec>(G[i].data(), G[i].size());
  const Mat H = M.transpose() * M;
  const double L = std::max(max_sym_eig(H), 1e-300);
  Vec x = Vec::Constant(k, 1.0 / static_cast<double>(k)), y = x, xprev = x;
  double t = 1.0;
  int it = 0;
  for (; it < max_iter; ++it) {
    const Vec g = H * y;
    xprev = x;
    x = project_simplex(y - g / L);
    const double tn = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    y = x + ((t - 1.0) / tn) * (x - xprev);
    t = tn;
    // restart when the objective increases
    if (x.dot(H * x) > xprev.dot(H * xprev)) {
      y = x;
      t = 1.0;
    }
    // stationarity gap of the simplex-constrained QP
    const Vec gx = H * x;
    const double gap = x.dot(gx) - gx.minCoeff();
    if (gap <= tol_stat) break;
  }
  Mat E = Mat::Zero(G[0].rows(), G[0].cols());
  for (Eigen::Index i = 0; i < k; ++i) E += x(i) * G[i];
  return {x, E, E.norm(), it};
}

/// Distance of 0 from the hull of rank-one peak generators.
inline double stationarity_measure(const Plant& pl, const Policy& K, int n_freq_samples = 8) {
  const ClosedLoop cl = assemble_closed_loop(pl, K);
  if (!(cl.abscissa < -tol::stab)) throw DomainError("stationarity_measure: policy is not stabilizing");
  const HinfEvaluation ev = hinf_norm(cl);
  std::vector<double> freqs;
  if (ev.flat) {
    for (int i = 0; i < n_freq_samples; ++i) {
      if (i < static_cast<int>(kFlatPeakSample.size()))
        freqs.push_back(kFlatPeakSample[i]);
      else
        freqs.push_back(std::pow(10.0, -2.0 + 4.0 * (i - 8) / std::max(1, n_freq_samples - 9)));
    }
  } else {
    for (const auto& pk : ev.peaks) freqs.push_back(pk.omega);
  }
  const std::vector<Mat> gens = peak_generators(pl, K, ev, freqs);
  if (gens.empty()) throw NumericalError("stationarity_measure: empty peak set");
  return min_norm_hull(gens).norm;
}

// ---------------------------------------------------------------------------
// Bounded real lemma certificates

inline const std::vector<double>& default_delta_schedule() {
  static const std::vector<double> s = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8};
  return s;
}

/// Max eigenvalue of [[A^T P + P A, P B, C^T], [B^T P, -g I, D^T], [C, D, -g I]].
inline double brl_lmi_residual(const ClosedLoop& cl, double gamma, const Mat& P) {
  const Eigen::Index k = cl.A.rows(), d = cl.B.cols(), z = cl.C.rows();
  Mat M(k + d + z, k + d + z);
  M << cl.A.transpose() * P + P * cl.A, P * cl.B, cl.C.transpose(), cl.B.transpose() * P,
      -gamma * Mat::Identity(d, d), cl.D.transpose(), cl.C, cl.D, -gamma * Mat::Identity(z, z);
  return max_sym_eig(M);
}

struct BrlCertificate {
  double gamma = 0.0;
  Mat P;
  double lmi_residual = 0.0;
  double p_min_eig = 0.0;
  double p12_sigma_min = 0.0;
  double relaxation_delta = 0.0;
  bool valid = false;
};

/// Storage matrix from the strict-BRL Riccati equation at gamma_c.
inline std::optional<Mat> brl_riccati(const ClosedLoop& cl, double gamma_c, double eta) {
  const Eigen::Index k = cl.A.rows(), d = cl.B.cols(), z = cl.C.rows();
  Mat Ca(z + k, k), Da = Mat::Zero(z + k, d);
  Ca << cl.C, std::sqrt(eta) * Mat::Identity(k, k);
  Da.topRows(z) = cl.D;
  const Mat Rg = gamma_c * gamma_c * Mat::Identity(d, d) - Da.transpose() * Da;
  if (min_sym_eig(Rg) <= 0) return std::nullopt;
  const Mat Ri = Rg.llt().solve(Mat::Identity(d, d));
  const Mat At = cl.A + cl.B * Ri * Da.transpose() * Ca;
  const Mat G = gamma_c * cl.B * Ri * cl.B.transpose();
  const Mat H = (1.0 / gamma_c) * Ca.transpose() * (Mat::Identity(z + k, z + k) + Da * Ri * Da.transpose()) * Ca;
  // the gap to the axis shrinks with the relaxation, so only exact-axis cases are rejected here
  const CareResult r = solve_care(At, -G, H, 1e-13);
  if (r.status != CareStatus::ok) return std::nullopt;
  return r.X;
}

/// Level at which a storage matrix is checked: the target gamma, or its own relaxed level gamma (1 + delta).
enum class BrlLevel { target, relaxed };

/**
 * All certificates along the schedule that pass at the requested level (full
 * order: P12 is n x q).
 *
 * The output padding sqrt(eta) I keeps P definite. eta uses half of the
 * relaxation gap, scaled by the gain of (sI - A_cl)^{-1} B_cl, so the padded
 * system still has norm below gamma (1 + delta).
 */
inline std::vector<BrlCertificate> brl_certificates(const ClosedLoop& cl, double gamma, int n_plant,
                                                    const std::vector<double>& schedule = default_delta_schedule(),
                                                    BrlLevel level = BrlLevel::target) {
  if (!(spectral_abscissa(cl.A) < -tol::stab)) throw DomainError("brl_certificate: A_cl is not stable");
  std::vector<BrlCertificate> out;
  const int k = static_cast<int>(cl.A.rows());
  const int q = k - n_plant;
  const ClosedLoop resolvent{cl.A, cl.B, Mat::Identity(k, k), Mat::Zero(k, cl.B.cols()), cl.abscissa};
  const double g = std::max(hinf_norm(resolvent, 1e-6).gamma_upper, 1e-12);
  for (double delta : schedule) {
    const double gc = gamma * (1.0 + delta);
    const double eta = std::min(0.1 * delta * gamma, 0.5 * delta * gamma * gamma / (g * g));
    const auto P = brl_riccati(cl, gc, eta);
    if (!P) continue;
    BrlCertificate c;
    c.gamma = level == BrlLevel::target ? gamma : gc;
    c.P = *P;
    c.relaxation_delta = delta;
    c.lmi_residual = brl_lmi_residual(cl, c.gamma, c.P);
    c.p_min_eig = min_sym_eig(c.P);
    c.p12_sigma_min = q > 0 && n_plant > 0 ? sigma_min(c.P.topRightCorner(n_plant, q)) : 0.0;
    c.valid = c.lmi_residual <= tol::lmi && c.p_min_eig >= tol::pd;
    if (c.valid) out.push_back(c);
  }
  return out;
}

/// First valid certificate along the schedule, if any.
inline std::optional<BrlCertificate> brl_certificate(const ClosedLoop& cl, double gamma, int n_plant,
                                                     const std::vector<double>& schedule = default_delta_schedule()) {
  for (double delta : schedule) {
    const auto v = brl_certificates(cl, gamma, n_plant, {delta});
    if (!v.empty()) return v.front();
  }
  return std::nullopt;
}

enum class HinfVerdict { certified_nondegenerate, no_certificate_found, degenerate_evidence };

inline const char* to_string(HinfVerdict v) {
  switch (v) {
    case HinfVerdict::certified_nondegenerate: return "certified-nondegenerate";
    case HinfVerdict::no_certificate_found: return "no-certificate-found";
    case HinfVerdict::degenerate_evidence: return "degenerate-evidence";
  }
  return "unknown";
}

struct HinfNondegeneracy {
  HinfVerdict verdict;
  double best_p12_sigma_min;
  double gamma;
  int certificates;
};

inline HinfNondegeneracy is_nondegenerate_hinf(const Plant& pl, const Policy& K) {
  check_dims(pl, K);
  if (K.q() != pl.n()) throw DomainError("is_nondegenerate_hinf requires a full-order policy (q = n)");
  const ClosedLoop cl = assemble_closed_loop(pl, K);
  if (!(cl.abscissa < -tol::stab)) throw DomainError("policy is not internally stabilizing");
  const HinfEvaluation ev = hinf_norm(cl);
  const double gamma = ev.gamma_upper;
  const auto certs = brl_certificates(cl, gamma, pl.n());
  HinfNondegeneracy out{HinfVerdict::no_certificate_found, 0.0, gamma, static_cast<int>(certs.size())};
  for (const auto& c : certs) {
    out.best_p12_sigma_min = std::max(out.best_p12_sigma_min, c.p12_sigma_min);
    if (c.p12_sigma_min > 1e-6 * sigma_max(c.P)) out.verdict = HinfVerdict::certified_nondegenerate;
  }
  if (!certs.empty() && out.verdict != HinfVerdict::certified_nondegenerate)
    out.verdict = HinfVerdict::degenerate_evidence;
  return out;
}

/// J_inf along a boundary path of the scalar plant, one (eps, J) pair per epsilon.
inline std::vector<std::pair<double, double>> boundary_path_hinf(const Plant& pl, BoundaryPath path,
                                                                const std::vector<double>& epsilons) {
  if (pl.n() != 1 || pl.m() != 1 || pl.p() != 1) throw DimensionError("boundary_path_hinf: scalar plant required");
  std::vector<std::pair<double, double>> out;
  for (double e : epsilons) {
    if (!(e > 0.0 && e < 1.0)) throw DomainError("boundary_path_hinf: epsilon outside (0, 1)");
    out.emplace_back(e, hinf_cost(pl, boundary_path_policy(path, e)));
  }
  return out;
}

}  // namespace plt
