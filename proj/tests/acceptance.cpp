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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>
#include <string>

namespace {

using namespace plt;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[miss] ";
    }
    detail << what << "; ";
  }
};

std::string fmt(double v, int prec = 7) {
  std::ostringstream s;
  s << std::setprecision(prec) << v;
  return s.str();
}

/// |x - target| within half a unit in the fourth significant figure of target.
bool four_sig(double x, double target) {
  const double unit = std::pow(10.0, std::floor(std::log10(std::abs(target))) - 3);
  return std::abs(x - target) <= 0.5 * unit;
}

void baselines(Outcome& o) {
  const std::pair<Plant, double> rows[] = {
      {instances::paper_1dim(), 0.6966}, {instances::paper_2dim(), 6.1644}, {instances::paper_3dim(), 10.3566}};
  int k = 1;
  for (const auto& [P, target] : rows) {
    const double J = riccati_baseline(P, BaselineMode::lqg).cost;
    o.check(four_sig(J, target), "instance " + std::to_string(k++) + " " + fmt(J) + " vs " + fmt(target));
  }
}

void gradient_descent(Outcome& o) {
  const Plant P1 = instances::paper_1dim();
  const SearchTrace t1 = gradient_descent_lqg(P1, instances::scalar_policy(0, -0.5, 0.5, -2));
  o.check(t1.last().cost <= 0.6970 && t1.last().iter <= 500,
          "instance 1 " + fmt(t1.last().cost) + " after " + std::to_string(t1.last().iter) + " iterations");
  const Plant P2 = instances::paper_2dim();
  const Policy K0 = perturbed_policy(P2, riccati_baseline(P2, BaselineMode::lqg).policy, 0.5, 1);
  const SearchTrace t2 = gradient_descent_lqg(P2, K0);
  o.check(std::abs(t2.last().cost - 6.1644) <= 1e-3 && t2.last().iter <= 500,
          "instance 2 " + fmt(t2.last().cost) + " after " + std::to_string(t2.last().iter) + " iterations");
}

void gamma_family(Outcome& o) {
  for (double a : {-1.0, 0.0, 1.0}) {
    const double g = gamma_iteration(instances::scalar_plant(a), 1e-6).gamma_star;
    const double target = std::sqrt(a * a + 2) + a;
    o.check(std::abs(g - target) <= 1e-4, "a=" + fmt(a, 2) + " " + fmt(g) + " vs " + fmt(target));
  }
  const double g1 = riccati_baseline(instances::paper_1dim(), BaselineMode::hinf).cost;
  o.check(four_sig(g1, 0.7321), "1-dim " + fmt(g1) + " vs 0.7321");
}

void gradient_sampling(Outcome& o) {
  const Plant P = instances::paper_1dim();
  GradientSamplingParams prm;
  prm.seed = 7;
  prm.max_iter = 200;
  const SearchTrace tr = gradient_sampling_hinf(P, instances::zero_dynamic(P), prm);
  o.check(tr.last().cost <= 0.7325 && tr.last().iter <= 200,
          "J=" + fmt(tr.last().cost) + " after " + std::to_string(tr.last().iter) + " iterations, seed 7, " +
              to_string(tr.terminal_reason));
}

void boundary(Outcome& o) {
  const Plant P = instances::paper_1dim();
  double worst = 0.0;
  for (const auto& [e, J] : boundary_path_lqg(P, BoundaryPath::converging, {0.05, 0.025, 0.01, 0.005, 1e-3}))
    worst = std::max(worst, std::abs(J - std::sqrt(0.5)) / (2 * e * e));
  o.check(worst <= 1.0, "converging LQG max |J-sqrt(2)/2|/(2e^2) = " + fmt(worst, 3));
  const double Jc = boundary_path_hinf(P, BoundaryPath::converging, {1e-3})[0].second;
  o.check(std::abs(Jc - (1 + std::sqrt(5.0)) / 2) <= 1e-4, "converging Hinf at 1e-3 " + fmt(Jc, 10));
  // the slow closed-loop pole is about -eps^5, so the certified halvings stop at eps = 0.025
  const std::vector<double> eps = {0.1, 0.05, 0.025};
  const auto lq = boundary_path_lqg(P, BoundaryPath::diverging, eps);
  const auto hi = boundary_path_hinf(P, BoundaryPath::diverging, eps);
  for (size_t i = 1; i < eps.size(); ++i) {
    const double r2 = (lq[i].second * lq[i].second) / (lq[i - 1].second * lq[i - 1].second);
    const double rh = hi[i].second / hi[i - 1].second;
    o.check(r2 >= 1.5, "LQG trace-cost ratio " + fmt(r2, 4) + " (J ratio " + fmt(std::sqrt(r2), 4) + ")");
    o.check(rh >= 1.5, "Hinf ratio " + fmt(rh, 4));
  }
}

void certificates(Outcome& o) {
  const Plant P2 = instances::paper_2dim();
  const Policy Kopt = instances::nonminimal_optimal();
  const Mat X = gramian_pair(P2, Kopt).X;
  const Mat expected =
      instances::mat({{5.25, -8, 4.25, -8}, {-8, 20.25, -8, 16.25}, {4.25, -8, 4.25, -8}, {-8, 16.25, -8, 16.25}});
  const double dx = testing::max_abs_diff(X, expected);
  const LqgNondegeneracy nd = is_nondegenerate_lqg(P2, Kopt);
  o.check(nd.nondegenerate && nd.certificate_valid && dx <= 1e-9, "observer controller non-degenerate, |dX|=" + fmt(dx, 3));
  const Plant P1 = instances::paper_1dim();
  o.check(informativity_test(P1, instances::sample_k2()).informative() &&
              informativity_test(P1, instances::sample_k3()).informative() &&
              !informativity_test(P1, instances::sample_k4()).informative(),
          "K2/K3 informative, K4 not");
  const Policy Kz = instances::zero_augmented_optimal();
  const H2Certificate c = build_h2_certificate(P2, Kz, true);
  o.check(c.valid() && c.p12_sigma_min <= 1e-9 * sigma_max(c.P) && !is_nondegenerate_lqg(P2, Kz).nondegenerate,
          "zero augmentation sigma_min(P12)=" + fmt(c.p12_sigma_min, 3));
  const HinfNondegeneracy h = is_nondegenerate_hinf(P1, instances::static_hinf_optimal_lifted());
  o.check(h.verdict == HinfVerdict::degenerate_evidence, std::string("lifted static optimum ") + to_string(h.verdict));
}

void subgradients(Outcome& o) {
  const Plant P = instances::paper_1dim();
  const Policy K = instances::static_hinf_optimal();
  const HinfEvaluation ev = hinf_norm(assemble_closed_loop(P, K));
  const double a = clarke_subgradient(P, K, ev, {{0.3, CMat::Identity(1, 1)}}).Phi(0, 0);
  const double b = clarke_subgradient(P, K, ev, {{0.5, CMat::Identity(1, 1)}}).Phi(0, 0);
  o.check(std::abs(a - 0.0359) <= 5e-3, "w=0.3 " + fmt(a, 5));
  o.check(std::abs(b + 0.0838) <= 5e-3, "w=0.5 " + fmt(b, 5));
  const double s = stationarity_measure(P, K);
  o.check(s <= 1e-3, "stationarity " + fmt(s, 3));
}

void saddle(Outcome& o) {
  const Plant P = instances::paper_1dim();
  const Vec ev = Eigen::SelfAdjointEigenSolver<Mat>(fd_hessian(P, instances::saddle(), 1e-4, CostForm::squared)).eigenvalues();
  const double err = std::max({std::abs(ev(0) + 0.25), std::abs(ev(1)), std::abs(ev(2) - 0.25)});
  o.check(err <= 5e-3, "trace-cost Hessian eigenvalues " + fmt(ev(0), 5) + ", " + fmt(ev(1), 3) + ", " + fmt(ev(2), 5));
  const double g = lqg_gradient(P, instances::saddle()).norm();
  o.check(g <= 1e-8, "gradient norm " + fmt(g, 3));
}

void properties(Outcome& o) {
  const Plant plants[] = {instances::paper_1dim(), instances::paper_2dim(), instances::paper_3dim()};
  std::mt19937_64 rng(2026);
  std::normal_distribution<double> nd(0.0, 1.0);

  int grad_n = 0, grad_bad = 0, grid_n = 0, grid_bad = 0, sim_n = 0, sim_bad = 0, brl_n = 0, brl_bad = 0;
  for (const Plant& P : plants) {
    for (int t = 0; t < 50; ++t) {
      const Policy K = testing::random_stabilizing(P, rng);
      const Vec g = pack_gradient(lqg_gradient(P, K));
      const Vec f = testing::fd_lqg_gradient(P, K);
      ++grad_n;
      if ((g - f).norm() > 1e-5 * std::max(1.0, g.norm())) ++grad_bad;

      if (t % 5 == 0) {
        const ClosedLoop cl = assemble_closed_loop(P, K);
        const HinfEvaluation ev = hinf_norm(cl);
        ++grid_n;
        if (std::abs(ev.gamma - testing::grid_hinf(cl, 20000)) > 1e-4 * ev.gamma) ++grid_bad;
        for (const auto& c : brl_certificates(cl, ev.gamma_upper, P.n())) {
          ++brl_n;
          if (testing::brl_recheck(cl, c.gamma, c.P) > tol::lmi || min_sym_eig(c.P) < tol::pd) ++brl_bad;
        }

        Mat T = Mat::Identity(K.q(), K.q());
        for (Eigen::Index i = 0; i < T.size(); ++i) T.data()[i] += 0.3 * nd(rng);
        const Policy Kt = similarity_transform(K, T);
        const double j0 = lqg_cost(P, K), j1 = lqg_cost(P, Kt);
        const double h0 = ev.gamma, h1 = hinf_cost(P, Kt);
        ++sim_n;
        if (std::abs(j0 - j1) > 1e-8 * j0 || std::abs(h0 - h1) > 1e-8 * h0 ||
            informativity_test(P, K).verdict != informativity_test(P, Kt).verdict)
          ++sim_bad;
      }
    }
  }
  o.check(grad_bad == 0, "gradient vs FD " + std::to_string(grad_n - grad_bad) + "/" + std::to_string(grad_n));
  o.check(grid_bad == 0, "bisection vs grid " + std::to_string(grid_n - grid_bad) + "/" + std::to_string(grid_n));
  o.check(sim_bad == 0, "similarity invariance " + std::to_string(sim_n - sim_bad) + "/" + std::to_string(sim_n));
  o.check(brl_n > 0 && brl_bad == 0, "BRL recheck " + std::to_string(brl_n - brl_bad) + "/" + std::to_string(brl_n));

  // zero augmentation keeps cost and stationarity
  const Plant P2 = instances::paper_2dim();
  const Policy Kz = instances::zero_augmented_optimal();
  const double dj = std::abs(lqg_cost(P2, Kz) - std::sqrt(38.0));
  const double gz = lqg_gradient(P2, Kz).norm();
  const Plant P1 = instances::paper_1dim();
  const double s0 = stationarity_measure(P1, instances::static_hinf_optimal());
  const double s1 = stationarity_measure(P1, instances::static_hinf_optimal_lifted());
  const double dh = std::abs(hinf_cost(P1, instances::static_hinf_optimal_lifted()) - hinf_cost(P1, instances::static_hinf_optimal()));
  bool aug_ok = dj <= 1e-8 * std::sqrt(38.0) && gz <= 1e-8 && dh <= 1e-8 && s0 <= 1e-3 && s1 <= 1e-3;
  for (const Plant& P : plants) {
    const Policy K = testing::random_stabilizing(P, rng);
    const Policy Ka = augment_policy(K, instances::scalar(-1.5));
    aug_ok = aug_ok && std::abs(lqg_cost(P, K) - lqg_cost(P, Ka)) <= 1e-8 * lqg_cost(P, K) &&
             std::abs(hinf_cost(P, K) - hinf_cost(P, Ka)) <= 1e-8 * hinf_cost(P, K);
  }
  o.check(aug_ok, "zero augmentation: |dJ|=" + fmt(dj, 2) + " grad=" + fmt(gz, 2) + " Hinf stationarity " +
                      fmt(s0, 2) + " -> " + fmt(s1, 2));
}

void write_csv(const ScanResult& r, const std::string& path) {
  std::ofstream f(path);
  for (const auto& a : r.spec.axes) f << a.name() << ',';
  f << to_string(r.spec.metric) << ",status,low\n";
  f << std::setprecision(17);
  for (const ScanCell& c : r.cells) {
    for (double x : c.coords) f << x << ',';
    f << c.value << ',' << to_string(c.status) << ',' << (c.low ? 1 : 0) << '\n';
  }
}

void scans(Outcome& o) {
  const Plant P = instances::paper_1dim();
  for (const char* name : {"lqg-2d", "hinf-3d-reduced"}) {
    const ScanResult r = landscape_scan(P, *scan_preset(name), "paper-1dim");
    const ScanSummary& s = r.summary;
    const std::string csv = std::string("scan_") + name + ".csv";
    write_csv(r, csv);
    o.check(s.low_fraction <= 0.03 && s.max_components <= 1 && s.max_low_per_line <= 3,
            std::string(name) + " low " + std::to_string(s.low) + "/" + std::to_string(s.stabilizing) + " (" +
                fmt(100 * s.low_fraction, 3) + "%), components " + std::to_string(s.max_components) +
                ", band width " + std::to_string(s.max_low_per_line) + ", csv " + csv);
  }
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<void(Outcome&)>> criteria[] = {
      {"LQG Riccati baselines", baselines},
      {"LQG gradient descent", gradient_descent},
      {"Hinf gamma iteration", gamma_family},
      {"Hinf gradient sampling", gradient_sampling},
      {"boundary behavior", boundary},
      {"certificates and verdicts", certificates},
      {"Clarke subgradients", subgradients},
      {"strict saddle", saddle},
      {"property suites", properties},
      {"scan evidence", scans},
  };
  int failed = 0, k = 0;
  for (const auto& [name, run] : criteria) {
    ++k;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += o.pass ? 0 : 1;
    std::printf("%s criterion %d (%s): %s[%.1f s]\n", o.pass ? "PASS" : "FAIL", k, name, o.detail.str().c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", k - failed, k);
  return failed ? 1 : 0;
}
