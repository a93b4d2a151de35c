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

#include "plt/hinf.hpp"

#include <chrono>
#include <cstdlib>
#include <optional>
#include <random>
#include <thread>

namespace plt {

enum class TerminalReason { max_iter, tol, step_underflow, left_domain };

inline const char* to_string(TerminalReason r) {
  switch (r) {
    case TerminalReason::max_iter: return "max-iter";
    case TerminalReason::tol: return "tol";
    case TerminalReason::step_underflow: return "step-underflow";
    case TerminalReason::left_domain: return "left-domain";
  }
  return "unknown";
}

struct Iterate {
  int iter;
  Policy policy;
  double cost;
  double stationarity;  ///< gradient norm, or norm of the min-norm sampled element
  double step;
};

struct SearchTrace {
  std::vector<Iterate> iterates;
  TerminalReason terminal_reason = TerminalReason::max_iter;
  double wall_time = 0.0;  ///< seconds

  const Iterate& last() const { return iterates.back(); }
};

struct GradientDescentParams {
  double step0 = 1.0;
  double armijo_c = 1e-4;
  double backtrack_ratio = 0.5;
  int max_iter = 500;
  double grad_tol = 1e-7;
  double min_step = 1e-16;
};

namespace detail {

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Generator keyed by (seed, iteration, index); independent of call order.
inline std::mt19937_64 keyed_rng(std::uint64_t seed, std::uint64_t iter, std::uint64_t idx) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(iter), static_cast<std::uint32_t>(idx)};
  return std::mt19937_64(seq);
}

/// Uniform sample from the unit ball in R^d.
inline Vec unit_ball_sample(std::mt19937_64& rng, Eigen::Index d) {
  std::normal_distribution<double> nd(0.0, 1.0);
  std::uniform_real_distribution<double> ud(0.0, 1.0);
  Vec v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = nd(rng);
  const double r = std::pow(ud(rng), 1.0 / static_cast<double>(d));
  return v * (r / v.norm());
}

inline Vec vec(const Mat& M) { return Eigen::Map<const Vec>(M.data(), M.size()); }

inline Mat unvec(const Vec& v, Eigen::Index rows, Eigen::Index cols) { return Eigen::Map<const Mat>(v.data(), rows, cols); }

}  // namespace detail

/**
 * Backtracking Armijo descent on J_LQG over strictly proper full-order policies.
 * Trial steps that leave the stabilizing set are rejected like Armijo failures.
 */
inline SearchTrace gradient_descent_lqg(const Plant& pl, const Policy& K0, const GradientDescentParams& prm = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  check_dims(pl, K0);
  if (K0.q() != pl.n()) throw DomainError("gradient_descent_lqg requires a full-order policy (q = n)");
  if (!K0.strictly_proper()) throw DomainError("gradient_descent_lqg requires D_K = 0");
  if (!is_internally_stabilizing(pl, K0).stable) throw DomainError("K0 is not internally stabilizing");
  const int m = pl.m(), p = pl.p(), q = K0.q();

  SearchTrace tr;
  Vec x = pack_strictly_proper(K0);
  Policy K = K0;
  GramianPair g = gramian_pair(pl, K);
  double J = g.cost;
  Vec d = pack_gradient(lqg_gradient(pl, K, g));
  tr.iterates.push_back({0, K, J, d.norm(), 0.0});
  tr.terminal_reason = TerminalReason::max_iter;
  for (int it = 1; it <= prm.max_iter; ++it) {
    const double gn2 = d.squaredNorm();
    if (std::sqrt(gn2) <= prm.grad_tol) {
      tr.terminal_reason = TerminalReason::tol;
      break;
    }
    double t = prm.step0;
    bool accepted = false, any_in_domain = false;
    Policy Kt;
    GramianPair gt;
    while (t >= prm.min_step) {
      Kt = unpack_strictly_proper(x - t * d, m, p, q);
      if (is_internally_stabilizing(pl, Kt).stable) {
        any_in_domain = true;
        gt = gramian_pair(pl, Kt);
        if (std::isfinite(gt.cost) && gt.cost <= J - prm.armijo_c * t * gn2) {
          accepted = true;
          break;
        }
      }
      t *= prm.backtrack_ratio;
    }
    if (!accepted) {
      tr.terminal_reason = any_in_domain ? TerminalReason::step_underflow : TerminalReason::left_domain;
      break;
    }
    x -= t * d;
    K = Kt;
    g = gt;
    J = g.cost;
    d = pack_gradient(lqg_gradient(pl, K, g));
    tr.iterates.push_back({it, K, J, d.norm(), t});
  }
  if (tr.terminal_reason == TerminalReason::max_iter && tr.iterates.back().stationarity <= prm.grad_tol)
    tr.terminal_reason = TerminalReason::tol;
  tr.wall_time = detail::seconds_since(t0);
  return tr;
}

/// Gradient of J_inf over the lumped K at a smooth point (single simple peak), if K is one.
inline std::optional<Mat> hinf_gradient(const Plant& pl, const Policy& K, const HinfEvaluation& ev) {
  if (ev.flat || ev.peaks.size() != 1 || ev.peaks[0].Qs.cols() != 1) return std::nullopt;
  const SubgradientElement e = clarke_subgradient(pl, K, ev, {{ev.peaks[0].omega, CMat::Identity(1, 1)}});
  return e.Phi;
}

struct GradientSamplingParams {
  int n_samples = 0;          ///< 0 selects 2 dim(K) + 1
  double radius0 = -1.0;      ///< negative selects 0.1 (1 + ||K0||_F)
  double radius_shrink = 0.5;
  double radius_floor = 1e-8;
  int max_iter = 200;
  double stat_tol = 1e-6;
  double armijo_c = 1e-4;
  double min_step = 1e-10;
  std::uint64_t seed = 0;
};

/**
 * Gradient sampling on J_inf over the lumped policy (D_K free).
 *
 * Gradients at the current point and at random points of the sampling ball
 * that are stabilizing and smooth span the hull whose min-norm element g gives
 * the search direction -g/||g||. A small g, or a failed line search, halves the
 * radius. Reaching the radius floor ends with tol if some hull at the final
 * point was near zero, otherwise with step-underflow.
 */
inline SearchTrace gradient_sampling_hinf(const Plant& pl, const Policy& K0, const GradientSamplingParams& prm = {}) {
  const auto t0 = std::chrono::steady_clock::now();
  check_dims(pl, K0);
  if (!is_internally_stabilizing(pl, K0).stable) throw DomainError("K0 is not internally stabilizing");
  const int m = pl.m(), p = pl.p(), q = K0.q();
  const Eigen::Index rows = m + q, cols = p + q, dim = rows * cols;
  const int ns = prm.n_samples > 0 ? prm.n_samples : static_cast<int>(2 * dim + 1);
  double radius = prm.radius0 > 0 ? prm.radius0 : 0.1 * (1.0 + K0.lumped().norm());

  auto eval = [&](const Vec& x, Policy& K, HinfEvaluation& ev) {
    K = Policy::from_lumped(detail::unvec(x, rows, cols), m, p);
    try {
      const ClosedLoop cl = assemble_closed_loop(pl, K);
      if (!(cl.abscissa < -tol::stab)) return false;
      ev = hinf_norm(cl);
    } catch (const NumericalError&) {
      return false;
    }
    return true;
  };

  SearchTrace tr;
  Vec x = detail::vec(K0.lumped());
  Policy K;
  HinfEvaluation ev;
  eval(x, K, ev);
  double J = ev.gamma;
  tr.iterates.push_back({0, K, J, std::numeric_limits<double>::quiet_NaN(), 0.0});
  tr.terminal_reason = TerminalReason::max_iter;
  bool stationary_here = false;  // a sampled hull at x contained a near-zero element

  for (int it = 1; it <= prm.max_iter; ++it) {
    std::vector<Mat> gens;
    if (auto gx = hinf_gradient(pl, K, ev)) gens.push_back(*gx);
    for (int s = 0; s < ns; ++s) {
      auto rng = detail::keyed_rng(prm.seed, static_cast<std::uint64_t>(it), static_cast<std::uint64_t>(s));
      const Vec xs = x + radius * detail::unit_ball_sample(rng, dim);
      Policy Ks;
      HinfEvaluation evs;
      if (!eval(xs, Ks, evs)) continue;
      if (auto gs = hinf_gradient(pl, Ks, evs)) gens.push_back(*gs);
    }
    if (gens.empty()) {
      radius *= prm.radius_shrink;
      if (radius < prm.radius_floor) {
        tr.terminal_reason = stationary_here ? TerminalReason::tol : TerminalReason::step_underflow;
        break;
      }
      tr.iterates.push_back({it, K, J, std::numeric_limits<double>::quiet_NaN(), 0.0});
      continue;
    }
    const MinNormResult mn = min_norm_hull(gens);
    const Vec gv = detail::vec(mn.element);
    if (mn.norm <= prm.stat_tol) {
      stationary_here = true;
      radius *= prm.radius_shrink;
      tr.iterates.push_back({it, K, J, mn.norm, 0.0});
      if (radius < prm.radius_floor) {
        tr.terminal_reason = TerminalReason::tol;
        break;
      }
      continue;
    }
    const Vec dir = -gv / mn.norm;
    double t = 1.0;
    bool accepted = false;
    Policy Kt;
    HinfEvaluation evt;
    while (t >= prm.min_step) {
      if (eval(x + t * dir, Kt, evt) && evt.gamma <= J - prm.armijo_c * t * mn.norm) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      radius *= prm.radius_shrink;
      tr.iterates.push_back({it, K, J, mn.norm, 0.0});
      if (radius < prm.radius_floor) {
        tr.terminal_reason = stationary_here ? TerminalReason::tol : TerminalReason::step_underflow;
        break;
      }
      continue;
    }
    x += t * dir;
    stationary_here = false;
    K = Kt;
    ev = evt;
    J = ev.gamma;
    tr.iterates.push_back({it, K, J, mn.norm, t});
  }
  tr.wall_time = detail::seconds_since(t0);
  return tr;
}

/// Deterministic perturbation of the strictly proper part of K with ||Delta||_F = radius, kept stabilizing.
inline Policy perturbed_policy(const Plant& pl, const Policy& K, double radius, std::uint64_t seed) {
  const Vec x = pack_strictly_proper(K);
  for (std::uint64_t k = 0; k < 1000; ++k) {
    auto rng = detail::keyed_rng(seed, 0, k);
    std::normal_distribution<double> nd(0.0, 1.0);
    Vec dlt(x.size());
    for (Eigen::Index i = 0; i < dlt.size(); ++i) dlt(i) = nd(rng);
    Policy Kp = unpack_strictly_proper(x + radius * dlt / dlt.norm(), K.m(), K.p(), K.q());
    if (is_internally_stabilizing(pl, Kp).stable) return Kp;
  }
  throw DomainError("perturbed_policy: no stabilizing perturbation found");
}

enum class BaselineMode { lqg, hinf };

struct Baseline {
  double cost;
  Policy policy;
};

/// Riccati-based optimum: the LQG controller, or the gamma-iterated central controller.
inline Baseline riccati_baseline(const Plant& pl, BaselineMode mode, double tol_abs = 1e-6) {
  if (mode == BaselineMode::lqg) {
    const Policy K = lqg_optimal_policy(solve_lqg_riccati(pl), pl);
    return {lqg_cost(pl, K), K};
  }
  const GammaIteration gi = gamma_iteration(pl, tol_abs);
  return {hinf_cost(pl, gi.policy), gi.policy};
}

/// J_LQG along a boundary path of the scalar plant, one (eps, J) pair per epsilon.
inline std::vector<std::pair<double, double>> boundary_path_lqg(const Plant& pl, BoundaryPath path,
                                                               const std::vector<double>& epsilons) {
  if (pl.n() != 1 || pl.m() != 1 || pl.p() != 1) throw DimensionError("boundary_path_lqg: scalar plant required");
  std::vector<std::pair<double, double>> out;
  for (double e : epsilons) {
    if (!(e > 0.0 && e < 1.0)) throw DomainError("boundary_path_lqg: epsilon outside (0, 1)");
    out.emplace_back(e, lqg_cost(pl, boundary_path_policy(path, e)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Landscape scans

enum class ScanMetric { lqg_cost, hinf_cost, ln_det_p12_lqg, p12_sigma_min_hinf };

inline const char* to_string(ScanMetric m) {
  switch (m) {
    case ScanMetric::lqg_cost: return "lqg_cost";
    case ScanMetric::hinf_cost: return "hinf_cost";
    case ScanMetric::ln_det_p12_lqg: return "ln_det_p12_lqg";
    case ScanMetric::p12_sigma_min_hinf: return "p12_sigma_min_hinf";
  }
  return "unknown";
}

inline ScanMetric scan_metric_from_string(const std::string& s) {
  for (ScanMetric m : {ScanMetric::lqg_cost, ScanMetric::hinf_cost, ScanMetric::ln_det_p12_lqg,
                       ScanMetric::p12_sigma_min_hinf})
    if (s == to_string(m)) return m;
  throw DomainError("unknown scan metric: " + s);
}

/// One grid axis over a single policy entry, e.g. block "AK", row 0, column 0.
struct ScanAxis {
  std::string block;
  int row = 0, col = 0;
  double lo = 0.0, hi = 0.0;
  int count = 1;

  double value(int i) const { return count == 1 ? lo : lo + (hi - lo) * i / (count - 1); }
  std::string name() const {
    return block + "[" + std::to_string(row) + "," + std::to_string(col) + "]";
  }
};

struct ScanSpec {
  Policy base;  ///< entries not on an axis keep these values
  std::vector<ScanAxis> axes;
  ScanMetric metric = ScanMetric::lqg_cost;
  /// Certificates whose P has min eigenvalue below this are treated as not bounded away from zero.
  double p_floor = 1e-5;
  /// Cells whose |P12| measure is below this count as low.
  double low_threshold = 1e-5;
  /// Low cells within this many grid steps (per index) are connected. A line sampled on
  /// a grid with unequal spacings hits only every few cells, so 1 would split it.
  int band_radius = 2;
};

enum class CellStatus { ok, not_stabilizing, improper, no_certificate };

inline const char* to_string(CellStatus s) {
  switch (s) {
    case CellStatus::ok: return "ok";
    case CellStatus::not_stabilizing: return "not-stabilizing";
    case CellStatus::improper: return "improper";
    case CellStatus::no_certificate: return "no-certificate";
  }
  return "unknown";
}

struct ScanCell {
  std::vector<double> coords;
  CellStatus status = CellStatus::ok;
  double value = std::numeric_limits<double>::quiet_NaN();
  bool low = false;  ///< certificate metrics: |P12| below threshold or no certificate bounded away from zero
};

struct ScanSummary {
  int cells = 0;
  int stabilizing = 0;
  int low = 0;
  double low_fraction = 0.0;  ///< low / stabilizing
  int slices_with_low = 0;      ///< 2-D slices over the first two axes that contain low cells
  int max_components = 0;       ///< most connected components of low cells in one slice
  int max_low_per_line = 0;     ///< most low cells on one grid line along the second axis (band width)
};

struct ScanResult {
  std::string instance;
  ScanSpec spec;
  std::vector<ScanCell> cells;  ///< first axis slowest
  ScanSummary summary;
};

/// Built-in grids on the scalar plant with C_K = 1: "lqg-2d", "hinf-3d" and the coarser "hinf-3d-reduced".
inline std::optional<ScanSpec> scan_preset(const std::string& name) {
  ScanSpec spec;
  spec.base = Policy::zero(1, 1, 1);
  spec.base.CK(0, 0) = 1.0;
  if (name == "lqg-2d") {
    spec.axes = {{"AK", 0, 0, -1, 1, 101}, {"BK", 0, 0, -2, 2, 101}};
    spec.metric = ScanMetric::ln_det_p12_lqg;
    spec.p_floor = spec.low_threshold = 1e-5;
    return spec;
  }
  if (name == "hinf-3d" || name == "hinf-3d-reduced") {
    const bool full = name == "hinf-3d";
    spec.axes = {{"AK", 0, 0, -2, 2, full ? 101 : 21},
                 {"BK", 0, 0, -4, 4, full ? 101 : 21},
                 {"DK", 0, 0, -1.5, 1.5, full ? 61 : 13}};
    spec.metric = ScanMetric::p12_sigma_min_hinf;
    spec.p_floor = spec.low_threshold = 1e-4;
    return spec;
  }
  return std::nullopt;
}

inline void set_entry(Policy& K, const std::string& block, int r, int c, double v) {
  Mat* M = block == "AK" ? &K.AK : block == "BK" ? &K.BK : block == "CK" ? &K.CK : block == "DK" ? &K.DK : nullptr;
  if (!M) throw DomainError("unknown policy block: " + block);
  if (r < 0 || c < 0 || r >= M->rows() || c >= M->cols()) throw DimensionError("policy entry out of range: " + block);
  (*M)(r, c) = v;
}

/// Worker count from PLT_THREADS, else the hardware concurrency.
inline unsigned scan_threads() {
  if (const char* e = std::getenv("PLT_THREADS")) {
    const long v = std::strtol(e, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

inline ScanCell scan_cell(const Plant& pl, const ScanSpec& spec, const std::vector<double>& coords) {
  ScanCell c;
  c.coords = coords;
  Policy K = spec.base;
  for (size_t a = 0; a < spec.axes.size(); ++a)
    set_entry(K, spec.axes[a].block, spec.axes[a].row, spec.axes[a].col, coords[a]);
  const ClosedLoop cl = assemble_closed_loop(pl, K);
  if (!(cl.abscissa < -tol::stab)) {
    c.status = CellStatus::not_stabilizing;
    return c;
  }
  const bool lqg = spec.metric == ScanMetric::lqg_cost || spec.metric == ScanMetric::ln_det_p12_lqg;
  if (lqg && !K.strictly_proper()) {
    c.status = CellStatus::improper;
    return c;
  }
  try {
    switch (spec.metric) {
      case ScanMetric::lqg_cost: c.value = lqg_cost(pl, K); break;
      case ScanMetric::hinf_cost: c.value = hinf_norm(cl).gamma; break;
      case ScanMetric::ln_det_p12_lqg: {
        const GramianPair g = gramian_pair(pl, K);
        const Eigen::LLT<Mat> llt(g.X);
        if (llt.info() != Eigen::Success || min_sym_eig(g.X) <= 0) {
          c.status = CellStatus::no_certificate;
          c.low = true;
          break;
        }
        const Mat P = g.cost * llt.solve(Mat::Identity(g.X.rows(), g.X.cols()));
        if (min_sym_eig(P) < spec.p_floor) {
          c.status = CellStatus::no_certificate;
          c.low = true;
          break;
        }
        const Mat P12 = P.topRightCorner(pl.n(), K.q());
        const double det = P12.rows() == P12.cols() ? std::abs(P12.determinant()) : 0.0;
        c.value = std::log(det);
        c.low = det < spec.low_threshold;
        break;
      }
      case ScanMetric::p12_sigma_min_hinf: {
        // storage at the smallest relaxation that is a valid certificate for its own level
        const double gamma = hinf_norm(cl).gamma_upper;
        const auto certs = brl_certificates(cl, gamma, pl.n(), default_delta_schedule(), BrlLevel::relaxed);
        double best = -1.0;
        if (!certs.empty() && certs.back().p_min_eig >= spec.p_floor) best = certs.back().p12_sigma_min;
        if (best < 0) {
          c.status = CellStatus::no_certificate;
          c.low = true;
          break;
        }
        c.value = best;
        c.low = best < spec.low_threshold;
        break;
      }
    }
  } catch (const NumericalError&) {
    c.status = CellStatus::no_certificate;
    c.low = spec.metric == ScanMetric::ln_det_p12_lqg || spec.metric == ScanMetric::p12_sigma_min_hinf;
  }
  return c;
}

namespace detail {

/// Connected components of flagged cells on an r x c slice; cells within radius steps are adjacent.
inline int slice_components(int r, int c, const std::vector<char>& flag, int radius) {
  std::vector<int> label(flag.size(), -1);
  std::vector<int> stack;
  int comps = 0;
  for (int s = 0; s < r * c; ++s) {
    if (!flag[s] || label[s] >= 0) continue;
    label[s] = comps;
    stack.push_back(s);
    while (!stack.empty()) {
      const int k = stack.back();
      stack.pop_back();
      const int i = k / c, j = k % c;
      for (int di = -radius; di <= radius; ++di)
        for (int dj = -radius; dj <= radius; ++dj) {
          const int ii = i + di, jj = j + dj;
          if (ii < 0 || jj < 0 || ii >= r || jj >= c) continue;
          const int l = ii * c + jj;
          if (flag[l] && label[l] < 0) {
            label[l] = comps;
            stack.push_back(l);
          }
        }
    }
    ++comps;
  }
  return comps;
}

}  // namespace detail

/// Evaluates the metric on every grid cell; workers write disjoint slots, so the result is deterministic.
inline ScanResult landscape_scan(const Plant& pl, const ScanSpec& spec, const std::string& instance = "",
                                 unsigned threads = 0) {
  check_dims(pl, spec.base);
  if (spec.axes.empty()) throw DomainError("landscape_scan: no axes");
  std::vector<int> dims;
  size_t N = 1;
  for (const auto& a : spec.axes) {
    if (a.count < 1) throw DomainError("landscape_scan: axis count must be positive");
    dims.push_back(a.count);
    N *= static_cast<size_t>(a.count);
  }
  ScanResult res;
  res.instance = instance;
  res.spec = spec;
  res.cells.resize(N);
  auto coords_of = [&](size_t k) {
    std::vector<double> c(dims.size());
    for (size_t a = dims.size(); a-- > 0;) {
      c[a] = spec.axes[a].value(static_cast<int>(k % dims[a]));
      k /= dims[a];
    }
    return c;
  };
  const unsigned T = std::max(1u, std::min<unsigned>(threads ? threads : scan_threads(), static_cast<unsigned>(N)));
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(T);
  for (unsigned t = 0; t < T; ++t)
    pool.emplace_back([&, t] {
      try {
        for (size_t k = t; k < N; k += T) res.cells[k] = scan_cell(pl, spec, coords_of(k));
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  ScanSummary& s = res.summary;
  s.cells = static_cast<int>(N);
  std::vector<char> flag(N, 0);
  for (size_t k = 0; k < N; ++k) {
    const ScanCell& c = res.cells[k];
    if (c.status == CellStatus::not_stabilizing || c.status == CellStatus::improper) continue;
    ++s.stabilizing;
    if (c.low) {
      ++s.low;
      flag[k] = 1;
    }
  }
  s.low_fraction = s.stabilizing ? static_cast<double>(s.low) / s.stabilizing : 0.0;

  // band analysis on each 2-D slice over the first two axes; the remaining axes index the slice
  const int r = dims[0], c = dims.size() > 1 ? dims[1] : 1;
  const size_t rest = N / (static_cast<size_t>(r) * c);
  for (size_t t = 0; t < rest; ++t) {
    std::vector<char> f(static_cast<size_t>(r) * c);
    bool any = false;
    for (int i = 0; i < r; ++i) {
      int line = 0;
      for (int j = 0; j < c; ++j) {
        const size_t k = (static_cast<size_t>(i) * c + j) * rest + t;
        f[i * c + j] = flag[k];
        line += flag[k];
        any = any || flag[k];
      }
      s.max_low_per_line = std::max(s.max_low_per_line, line);
    }
    if (!any) continue;
    ++s.slices_with_low;
    s.max_components = std::max(s.max_components, detail::slice_components(r, c, f, spec.band_radius));
  }
  return res;
}

}  // namespace plt
