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
#include "support.hpp"

#include <gtest/gtest.h>

namespace plt {
namespace {

using instances::mat;
using instances::scalar_policy;

void expect_monotone_stabilizing(const Plant& P, const SearchTrace& tr) {
  for (size_t i = 0; i < tr.iterates.size(); ++i) {
    EXPECT_TRUE(std::isfinite(tr.iterates[i].cost));
    EXPECT_TRUE(is_internally_stabilizing(P, tr.iterates[i].policy).stable) << i;
    if (i > 0) EXPECT_LE(tr.iterates[i].cost, tr.iterates[i - 1].cost + 1e-12) << i;
  }
}

std::vector<double> costs(const SearchTrace& tr) {
  std::vector<double> c;
  for (const auto& it : tr.iterates) c.push_back(it.cost);
  return c;
}

TEST(GradientDescent, StationaryStartStops) {
  const Plant P = instances::paper_2dim();
  const SearchTrace tr = gradient_descent_lqg(P, instances::nonminimal_optimal());
  EXPECT_EQ(tr.terminal_reason, TerminalReason::tol);
  EXPECT_EQ(tr.iterates.size(), 1u);
  EXPECT_LE(tr.last().stationarity, GradientDescentParams{}.grad_tol);
}

TEST(GradientDescent, ScalarInstanceFromFixedStart) {
  const Plant P = instances::paper_1dim();
  const SearchTrace tr = gradient_descent_lqg(P, scalar_policy(0, -0.5, 0.5, -2));
  EXPECT_LE(tr.last().cost, 0.6970);
  EXPECT_LE(tr.last().iter, 500);
  expect_monotone_stabilizing(P, tr);
}

TEST(GradientDescent, TwoStateInstanceFromPerturbedOptimum) {
  const Plant P = instances::paper_2dim();
  const Policy K0 = perturbed_policy(P, instances::nonminimal_optimal(), 0.5, 1);
  EXPECT_NEAR((pack_strictly_proper(K0) - pack_strictly_proper(instances::nonminimal_optimal())).norm(), 0.5, 1e-12);
  const SearchTrace tr = gradient_descent_lqg(P, K0);
  EXPECT_NEAR(tr.last().cost, std::sqrt(38.0), 1e-3);
  expect_monotone_stabilizing(P, tr);
  EXPECT_GE(tr.last().cost, riccati_baseline(P, BaselineMode::lqg).cost - 1e-9);
}

TEST(GradientDescent, Deterministic) {
  const Plant P = instances::paper_3dim();
  GradientDescentParams prm;
  prm.max_iter = 40;
  const Policy K0 = perturbed_policy(P, riccati_baseline(P, BaselineMode::lqg).policy, 0.5, 4);
  EXPECT_EQ(costs(gradient_descent_lqg(P, K0, prm)), costs(gradient_descent_lqg(P, K0, prm)));
}

TEST(GradientDescent, MaxIterZero) {
  GradientDescentParams prm;
  prm.max_iter = 0;
  const SearchTrace tr = gradient_descent_lqg(instances::paper_1dim(), instances::sample_k2(), prm);
  ASSERT_EQ(tr.iterates.size(), 1u);
  EXPECT_EQ(tr.terminal_reason, TerminalReason::max_iter);
  EXPECT_EQ(tr.last().cost, lqg_cost(instances::paper_1dim(), instances::sample_k2()));
}

TEST(GradientDescent, RejectsInvalidStart) {
  const Plant P = instances::paper_1dim();
  EXPECT_THROW(gradient_descent_lqg(P, instances::sample_k1()), DomainError);
  EXPECT_THROW(gradient_descent_lqg(P, instances::static_hinf_optimal_lifted()), DomainError);
}

TEST(GradientDescent, ZeroAugmentedStationaryPointStays) {
  const SearchTrace tr = gradient_descent_lqg(instances::paper_2dim(), instances::zero_augmented_optimal());
  EXPECT_EQ(tr.terminal_reason, TerminalReason::tol);
  EXPECT_EQ(tr.iterates.size(), 1u);
}

TEST(GradientDescent, EscapesSaddleAlongNegativeCurvature) {
  const Plant P = instances::paper_1dim();
  const Mat H = fd_hessian(P, instances::saddle(), 1e-4, CostForm::squared);
  const Eigen::SelfAdjointEigenSolver<Mat> es(H);
  const Vec x = pack_strictly_proper(instances::saddle()) + 1e-3 * es.eigenvectors().col(0);
  const SearchTrace tr = gradient_descent_lqg(P, unpack_strictly_proper(x, 1, 1, 1));
  EXPECT_LT(tr.last().cost, std::sqrt(0.5) - 1e-3);
  expect_monotone_stabilizing(P, tr);
}

TEST(GradientSampling, ScalarInstanceFromZeroDynamic) {
  const Plant P = instances::paper_1dim();
  GradientSamplingParams prm;
  prm.seed = 7;
  const SearchTrace tr = gradient_sampling_hinf(P, instances::zero_dynamic(P), prm);
  EXPECT_LE(tr.last().cost, 0.7325);
  EXPECT_LE(tr.last().iter, 200);
  EXPECT_GE(tr.last().cost, std::sqrt(3.0) - 1 - 1e-9);
  expect_monotone_stabilizing(P, tr);
}

TEST(GradientSampling, DeterministicForFixedSeed) {
  const Plant P = instances::paper_1dim();
  GradientSamplingParams prm;
  prm.seed = 11;
  prm.max_iter = 15;
  const auto a = costs(gradient_sampling_hinf(P, instances::saddle(), prm));
  const auto b = costs(gradient_sampling_hinf(P, instances::saddle(), prm));
  EXPECT_EQ(a, b);
}

TEST(GradientSampling, StationaryStartEndsWithTol) {
  const Plant P = instances::paper_1dim();
  for (const Policy& K0 : {instances::static_hinf_optimal(), instances::static_hinf_optimal_lifted()}) {
    const SearchTrace tr = gradient_sampling_hinf(P, K0);
    EXPECT_EQ(tr.terminal_reason, TerminalReason::tol);
    EXPECT_NEAR(tr.last().cost, std::sqrt(3.0) - 1, 1e-8);
  }
}

TEST(GradientSampling, RejectsUnstableStart) {
  EXPECT_THROW(gradient_sampling_hinf(instances::paper_1dim(), instances::sample_k1()), DomainError);
}

TEST(RiccatiBaseline, PaperValues) {
  EXPECT_NEAR(riccati_baseline(instances::paper_1dim(), BaselineMode::lqg).cost, 0.6966213994980133, 1e-12);
  EXPECT_NEAR(riccati_baseline(instances::paper_2dim(), BaselineMode::lqg).cost, std::sqrt(38.0), 1e-12);
  EXPECT_NEAR(riccati_baseline(instances::paper_1dim(), BaselineMode::hinf).cost, std::sqrt(3.0) - 1, 1e-5);
  const Baseline b0 = riccati_baseline(instances::scalar_plant(0.0), BaselineMode::hinf, 1e-8);
  EXPECT_NEAR(b0.cost, std::sqrt(2.0), 1e-6);
}

TEST(BoundaryPathLqg, ConvergingLimit) {
  const auto tab = boundary_path_lqg(instances::paper_1dim(), BoundaryPath::converging, {0.1, 0.05, 0.01, 1e-3});
  for (const auto& [e, J] : tab) EXPECT_LE(std::abs(J - std::sqrt(0.5)), 2 * e * e) << e;
}

TEST(BoundaryPathLqg, DivergingGrowth) {
  const Plant P = instances::paper_1dim();
  const auto tab = boundary_path_lqg(P, BoundaryPath::diverging, {0.1, 0.05, 0.025});
  EXPECT_LT(tab[0].second, tab[1].second);
  EXPECT_LT(tab[1].second, tab[2].second);
  const auto [e, J] = tab.back();
  EXPECT_NEAR(J * J * e, 2.0, 0.2);
  // the slow pole is about -eps^5, inside the stability margin at eps = 0.01
  EXPECT_THROW(boundary_path_lqg(P, BoundaryPath::diverging, {0.01}), DomainError);
  EXPECT_THROW(boundary_path_lqg(P, BoundaryPath::converging, {1.5}), DomainError);
  EXPECT_THROW(boundary_path_lqg(instances::paper_2dim(), BoundaryPath::converging, {0.1}), DimensionError);
}

TEST(LandscapeScan, SingleCellMatchesCost) {
  const Plant P = instances::paper_1dim();
  const Policy K2 = instances::sample_k2();
  ScanSpec spec;
  spec.base = K2;
  spec.axes = {{"AK", 0, 0, K2.AK(0, 0), K2.AK(0, 0), 1}};
  const ScanResult r = landscape_scan(P, spec);
  ASSERT_EQ(r.cells.size(), 1u);
  EXPECT_EQ(r.cells[0].status, CellStatus::ok);
  EXPECT_EQ(r.cells[0].value, lqg_cost(P, K2));
}

TEST(LandscapeScan, ClosedFormScalarSurface) {
  ScanSpec spec;
  spec.base = scalar_policy(0, 1, 0, 0);
  spec.axes = {{"AK", 0, 0, -3, 0.9, 40}, {"BK", 0, 0, -3, 3, 41}};
  const ScanResult r = landscape_scan(instances::paper_1dim(), spec);
  int checked = 0;
  for (const ScanCell& c : r.cells) {
    const double a = c.coords[0], b = c.coords[1];
    const bool stab = a < 1 && -a - b > 0;
    if (!stab) continue;
    if (c.status != CellStatus::ok) continue;  // cells within the stability margin
    const double J2 = (a * a - a * (1 + b * b) - b * (1 - 3 * b + b * b)) / (2 * (a - 1) * (a + b));
    EXPECT_NEAR(c.value, std::sqrt(J2), 1e-8 * std::max(1.0, c.value)) << a << " " << b;
    ++checked;
  }
  EXPECT_GT(checked, 400);
  for (const ScanCell& c : r.cells)
    if (c.coords[0] + c.coords[1] > 1e-9) EXPECT_EQ(c.status, CellStatus::not_stabilizing);
}

TEST(LandscapeScan, StaticSweepMinimum) {
  ScanSpec spec;
  spec.base = instances::zero_static(instances::paper_1dim());
  spec.axes = {{"DK", 0, 0, -3, 0.9, 391}};
  spec.metric = ScanMetric::hinf_cost;
  const ScanResult r = landscape_scan(instances::paper_1dim(), spec);
  const auto best = std::min_element(r.cells.begin(), r.cells.end(), [](const ScanCell& a, const ScanCell& b) {
    return a.status == CellStatus::ok && (b.status != CellStatus::ok || a.value < b.value);
  });
  EXPECT_NEAR(best->coords[0], 1 - std::sqrt(3.0), 1e-2);
  EXPECT_EQ(r.cells.back().status, CellStatus::ok);
  EXPECT_EQ(r.summary.stabilizing, 391);
}

TEST(LandscapeScan, ImproperCellsForLqgMetric) {
  ScanSpec spec;
  spec.base = instances::sample_k2();
  spec.axes = {{"DK", 0, 0, -0.5, 0.5, 3}};
  const ScanResult r = landscape_scan(instances::paper_1dim(), spec);
  EXPECT_EQ(r.cells[0].status, CellStatus::improper);
  EXPECT_EQ(r.cells[1].status, CellStatus::ok);
  EXPECT_EQ(r.cells[2].status, CellStatus::improper);
}

TEST(LandscapeScan, DeterministicAcrossThreadCounts) {
  ScanSpec spec = *scan_preset("lqg-2d");
  spec.axes[0].count = spec.axes[1].count = 15;
  const ScanResult a = landscape_scan(instances::paper_1dim(), spec, "", 1);
  const ScanResult b = landscape_scan(instances::paper_1dim(), spec, "", 4);
  ASSERT_EQ(a.cells.size(), b.cells.size());
  for (size_t k = 0; k < a.cells.size(); ++k) {
    EXPECT_EQ(a.cells[k].status, b.cells[k].status);
    EXPECT_EQ(a.cells[k].low, b.cells[k].low);
    if (a.cells[k].status == CellStatus::ok) EXPECT_EQ(a.cells[k].value, b.cells[k].value);
  }
  EXPECT_EQ(a.summary.low, b.summary.low);
}

TEST(LandscapeScan, CertificateMetricOnCells) {
  const Plant P = instances::paper_1dim();
  ScanSpec spec;
  spec.base = scalar_policy(0, 1, 0, 0);
  spec.metric = ScanMetric::ln_det_p12_lqg;
  // B_K = 0 decouples the controller state, so P12 vanishes
  spec.axes = {{"AK", 0, 0, -0.5, -0.5, 1}, {"BK", 0, 0, -1, 0, 2}};
  const ScanResult r = landscape_scan(P, spec);
  EXPECT_EQ(r.cells[0].status, CellStatus::ok);
  EXPECT_FALSE(r.cells[0].low);
  EXPECT_TRUE(r.cells[1].low);
}

TEST(LandscapeScan, InvalidSpecs) {
  ScanSpec spec;
  spec.base = instances::sample_k2();
  EXPECT_THROW(landscape_scan(instances::paper_1dim(), spec), DomainError);
  spec.axes = {{"XK", 0, 0, 0, 1, 2}};
  EXPECT_THROW(landscape_scan(instances::paper_1dim(), spec), DomainError);
  spec.axes = {{"AK", 1, 0, 0, 1, 2}};
  EXPECT_THROW(landscape_scan(instances::paper_1dim(), spec), DimensionError);
  EXPECT_FALSE(scan_preset("nope").has_value());
}

}  // namespace
}  // namespace plt
