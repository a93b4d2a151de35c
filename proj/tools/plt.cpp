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
// plt: cost, certify, optimize, scan and bench commands over JSON instances.

#include "plt/io.hpp"
#include "plt/search.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iomanip>
#include <iostream>
#include <limits>

namespace {

using plt::io::json;

constexpr const char* kVersion = "plt 0.1.0";

enum Exit { kOk = 0, kParse = 2, kDomain = 3, kNumerical = 4 };

struct Common {
  std::string instance = "builtin:paper-1dim";
  std::string policy;
  std::string mode = "lqg";
  std::uint64_t seed = 0;
  std::string out;
};

struct OptimizeOpts {
  int max_iter = -1;
  double perturb = 0.5;
  std::string csv;
};

struct ScanOpts {
  std::string preset;
  std::vector<std::string> axes;
  std::string metric = "lqg_cost";
  double p_floor = 1e-5;
  double low_threshold = 1e-5;
  int band_radius = 2;
  unsigned threads = 0;
};

struct BenchOpts {
  bool skip_sampling = false;
};

/// JSON number, or null for non-finite values.
json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json record(const std::string& command, const Common& c, const std::string& instance_name) {
  return {{"schema", plt::io::kSchema}, {"version", kVersion},    {"command", command},
          {"instance", instance_name},  {"instance_ref", c.instance}, {"seed", c.seed}};
}

void emit(const json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << '\n';
    std::cout.flush();
  } else {
    plt::io::write_json_file(out, j);
  }
}

plt::BaselineMode parse_mode(const std::string& m) {
  if (m == "lqg") return plt::BaselineMode::lqg;
  if (m == "hinf") return plt::BaselineMode::hinf;
  throw plt::io::ParseError("unknown mode: " + m);
}

plt::Policy require_policy(const Common& c, const plt::io::Instance& in) {
  if (c.policy.empty()) throw plt::io::ParseError("--policy is required");
  return plt::io::load_policy(c.policy, in);
}

json peaks_json(const plt::HinfEvaluation& ev) {
  json arr = json::array();
  for (const auto& p : ev.peaks) arr.push_back({{"omega", std::isinf(p.omega) ? json("inf") : json(p.omega)}, {"sigma", p.sigma}});
  return arr;
}

int cmd_cost(const Common& c) {
  const auto in = plt::io::load_instance(c.instance);
  const plt::Policy K = require_policy(c, in);
  json r = record("cost", c, in.name);
  r["policy"] = c.policy;
  r["mode"] = c.mode;
  if (parse_mode(c.mode) == plt::BaselineMode::lqg) {
    r["cost"] = plt::lqg_cost(in.plant, K);
  } else {
    const plt::ClosedLoop cl = plt::assemble_closed_loop(in.plant, K);
    if (!(cl.abscissa < -plt::tol::stab)) throw plt::DomainError("policy is not internally stabilizing");
    const plt::HinfEvaluation ev = plt::hinf_norm(cl);
    r["cost"] = ev.gamma;
    r["gamma_upper"] = ev.gamma_upper;
    r["flat"] = ev.flat;
    r["peaks"] = peaks_json(ev);
  }
  emit(r, c.out);
  return kOk;
}

int cmd_certify(const Common& c) {
  const auto in = plt::io::load_instance(c.instance);
  const plt::Policy K = require_policy(c, in);
  json r = record("certify", c, in.name);
  r["policy"] = c.policy;
  r["mode"] = c.mode;
  if (parse_mode(c.mode) == plt::BaselineMode::lqg) {
    const plt::LqgNondegeneracy d = plt::is_nondegenerate_lqg(in.plant, K);
    r["verdict"] = d.nondegenerate ? "nondegenerate" : "degenerate";
    r["informativity"] = plt::to_string(d.informativity.verdict);
    r["sigma_min_X12"] = d.informativity.sigma_min_X12;
    r["threshold"] = d.informativity.threshold;
    r["certificate_valid"] = d.certificate_valid;
    r["cost"] = plt::lqg_cost(in.plant, K);
  } else {
    const plt::HinfNondegeneracy d = plt::is_nondegenerate_hinf(in.plant, K);
    r["verdict"] = plt::to_string(d.verdict);
    r["gamma"] = d.gamma;
    r["certificates"] = d.certificates;
    r["best_p12_sigma_min"] = d.best_p12_sigma_min;
  }
  emit(r, c.out);
  return kOk;
}

json trace_json(const plt::SearchTrace& tr) {
  json its = json::array();
  for (const auto& it : tr.iterates)
    its.push_back({{"iter", it.iter}, {"cost", num(it.cost)}, {"stationarity", num(it.stationarity)},
                   {"step", num(it.step)}});
  return {{"iterates", std::move(its)},
          {"terminal_reason", plt::to_string(tr.terminal_reason)},
          {"wall_time", tr.wall_time},
          {"final_policy", plt::io::to_json(tr.last().policy)},
          {"final_cost", num(tr.last().cost)}};
}

void write_curve(const plt::SearchTrace& tr, double baseline, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw plt::io::ParseError("cannot write " + path);
  f << std::setprecision(17) << "iter,cost,gap,stationarity,step\n";
  for (const auto& it : tr.iterates)
    f << it.iter << ',' << it.cost << ',' << it.cost - baseline << ',' << it.stationarity << ',' << it.step << '\n';
}

int cmd_optimize(const Common& c, const OptimizeOpts& o) {
  const auto in = plt::io::load_instance(c.instance);
  const plt::Plant& pl = in.plant;
  const plt::BaselineMode mode = parse_mode(c.mode);
  const plt::Baseline base = plt::riccati_baseline(pl, mode);
  plt::Policy K0;
  std::string k0_ref = c.policy;
  if (!c.policy.empty()) {
    K0 = plt::io::load_policy(c.policy, in);
  } else if (mode == plt::BaselineMode::lqg) {
    K0 = plt::perturbed_policy(pl, base.policy, o.perturb, c.seed);
    k0_ref = "perturbed riccati-optimal";
  } else {
    K0 = plt::instances::zero_dynamic(pl);
    k0_ref = "zero-dynamic";
    if (!plt::is_internally_stabilizing(pl, K0).stable) {
      K0 = plt::riccati_baseline(pl, plt::BaselineMode::lqg).policy;
      k0_ref = "riccati-optimal";
    }
  }
  plt::SearchTrace tr;
  json params;
  if (mode == plt::BaselineMode::lqg) {
    plt::GradientDescentParams prm;
    if (o.max_iter >= 0) prm.max_iter = o.max_iter;
    tr = plt::gradient_descent_lqg(pl, K0, prm);
    params = {{"method", "gradient-descent"}, {"step0", prm.step0},       {"armijo_c", prm.armijo_c},
              {"backtrack_ratio", prm.backtrack_ratio}, {"max_iter", prm.max_iter}, {"grad_tol", prm.grad_tol}};
  } else {
    plt::GradientSamplingParams prm;
    prm.seed = c.seed;
    if (o.max_iter >= 0) prm.max_iter = o.max_iter;
    tr = plt::gradient_sampling_hinf(pl, K0, prm);
    params = {{"method", "gradient-sampling"}, {"radius_shrink", prm.radius_shrink}, {"radius_floor", prm.radius_floor},
              {"max_iter", prm.max_iter},        {"stat_tol", prm.stat_tol}};
  }
  params["k0"] = k0_ref;
  if (mode == plt::BaselineMode::lqg && c.policy.empty()) params["perturb"] = o.perturb;
  json r = record("optimize", c, in.name);
  r["mode"] = c.mode;
  r["parameters"] = params;
  r["baseline_cost"] = base.cost;
  r["trace"] = trace_json(tr);
  if (!o.csv.empty()) write_curve(tr, base.cost, o.csv);
  emit(r, c.out);
  return kOk;
}

/// "BLOCK:row:col:lo:hi:count", e.g. "AK:0:0:-1:1:101".
plt::ScanAxis parse_axis(const std::string& s) {
  std::vector<std::string> f;
  std::stringstream ss(s);
  for (std::string t; std::getline(ss, t, ':');) f.push_back(t);
  if (f.size() != 6) throw plt::io::ParseError("axis must be BLOCK:row:col:lo:hi:count, got " + s);
  try {
    plt::ScanAxis a{f[0], std::stoi(f[1]), std::stoi(f[2]), std::stod(f[3]), std::stod(f[4]), std::stoi(f[5])};
    if (a.count < 1) throw plt::io::ParseError("axis count must be positive: " + s);
    return a;
  } catch (const std::logic_error&) {
    throw plt::io::ParseError("malformed axis: " + s);
  }
}

void apply_preset(const std::string& name, plt::ScanSpec& spec) {
  const auto p = plt::scan_preset(name);
  if (!p) throw plt::io::ParseError("unknown preset: " + name + " (lqg-2d, hinf-3d, hinf-3d-reduced)");
  spec = *p;
}

json summary_json(const plt::ScanResult& r) {
  const auto& s = r.summary;
  return {{"cells", s.cells},
          {"stabilizing", s.stabilizing},
          {"low", s.low},
          {"low_fraction", s.low_fraction},
          {"slices_with_low", s.slices_with_low},
          {"max_components", s.max_components},
          {"max_low_per_line", s.max_low_per_line}};
}

int cmd_scan(const Common& c, ScanOpts o, bool instance_given) {
  plt::ScanSpec spec;
  Common cc = c;
  if (!o.preset.empty()) {
    apply_preset(o.preset, spec);
    if (!instance_given) cc.instance = "builtin:paper-1dim";
  }
  const auto in = plt::io::load_instance(cc.instance);
  if (!cc.policy.empty()) spec.base = plt::io::load_policy(cc.policy, in);
  if (spec.base.DK.size() == 0 && spec.base.AK.size() == 0)
    throw plt::io::ParseError("scan needs --policy or --preset for the base policy");
  if (!o.axes.empty()) {
    spec.axes.clear();
    for (const auto& a : o.axes) spec.axes.push_back(parse_axis(a));
    spec.metric = plt::scan_metric_from_string(o.metric);
    spec.p_floor = o.p_floor;
    spec.low_threshold = o.low_threshold;
  }
  if (spec.axes.empty()) throw plt::io::ParseError("scan needs --axis or --preset");
  spec.band_radius = o.band_radius;
  const plt::ScanResult res = plt::landscape_scan(in.plant, spec, in.name, o.threads);

  std::ofstream file;
  if (!cc.out.empty()) {
    file.open(cc.out);
    if (!file) throw plt::io::ParseError("cannot write " + cc.out);
  }
  std::ostream& os = cc.out.empty() ? std::cout : file;
  os << std::setprecision(17);
  for (const auto& a : spec.axes) os << a.name() << ',';
  os << plt::to_string(spec.metric) << ",status,low\n";
  for (const auto& cell : res.cells) {
    for (double v : cell.coords) os << v << ',';
    if (std::isfinite(cell.value)) os << cell.value;
    os << ',' << plt::to_string(cell.status) << ',' << (cell.low ? 1 : 0) << '\n';
  }
  os.flush();

  json r = record("scan", cc, in.name);
  r["metric"] = plt::to_string(spec.metric);
  json axes = json::array();
  for (const auto& a : spec.axes) axes.push_back({{"name", a.name()}, {"lo", a.lo}, {"hi", a.hi}, {"count", a.count}});
  r["axes"] = axes;
  r["p_floor"] = spec.p_floor;
  r["low_threshold"] = spec.low_threshold;
  r["summary"] = summary_json(res);
  std::cerr << r.dump() << '\n';
  return kOk;
}

int cmd_bench(const Common& c, const BenchOpts& o) {
  namespace ins = plt::instances;
  json lqg = json::array(), hinf = json::array();
  const std::vector<std::pair<std::string, plt::Plant>> lq = {
      {"paper-1dim", ins::paper_1dim()}, {"paper-2dim", ins::paper_2dim()}, {"paper-3dim", ins::paper_3dim()}};
  for (const auto& [name, pl] : lq) {
    const plt::Baseline b = plt::riccati_baseline(pl, plt::BaselineMode::lqg);
    const plt::Policy K0 =
        name == "paper-1dim" ? ins::scalar_policy(0, -0.5, 0.5, -2) : plt::perturbed_policy(pl, b.policy, 0.5, c.seed + 1);
    const plt::SearchTrace tr = plt::gradient_descent_lqg(pl, K0);
    lqg.push_back({{"instance", name},
                   {"riccati", b.cost},
                   {"gradient_descent", tr.last().cost},
                   {"gd_iterations", tr.last().iter},
                   {"gd_terminal", plt::to_string(tr.terminal_reason)}});
  }
  const std::vector<std::pair<std::string, plt::Plant>> hi = {
      {"paper-1dim", ins::paper_1dim()}, {"hinf-2dim", ins::hinf_2dim()}, {"hinf-3dim", ins::hinf_3dim()}};
  for (const auto& [name, pl] : hi) {
    const plt::Baseline b = plt::riccati_baseline(pl, plt::BaselineMode::hinf);
    json row = {{"instance", name}, {"riccati_bisection", b.cost}};
    if (!o.skip_sampling) {
      plt::Policy K0 = ins::zero_dynamic(pl);
      if (!plt::is_internally_stabilizing(pl, K0).stable) K0 = plt::riccati_baseline(pl, plt::BaselineMode::lqg).policy;
      plt::GradientSamplingParams prm;
      prm.seed = name == "paper-1dim" ? c.seed + 7 : c.seed;
      const plt::SearchTrace tr = plt::gradient_sampling_hinf(pl, K0, prm);
      row["gradient_sampling"] = tr.last().cost;
      row["gs_iterations"] = tr.last().iter;
      row["gs_terminal"] = plt::to_string(tr.terminal_reason);
    }
    hinf.push_back(row);
  }
  json r = record("bench", c, "builtin");
  r.erase("instance_ref");
  r["lqg"] = lqg;
  r["hinf"] = hinf;
  emit(r, c.out);
  return kOk;
}

void add_common(CLI::App* sub, Common& c, bool needs_policy) {
  sub->add_option("--instance", c.instance, "instance JSON file or builtin:NAME")->capture_default_str();
  auto* p = sub->add_option("--policy,--k0", c.policy, "policy JSON file, instance policy name or builtin:NAME");
  if (needs_policy) p->required();
  sub->add_option("--mode", c.mode, "lqg or hinf")->check(CLI::IsMember({"lqg", "hinf"}))->capture_default_str();
  sub->add_option("--seed", c.seed, "random seed")->capture_default_str();
  sub->add_option("--out", c.out, "output file (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Policy landscape tools for LQG and H-infinity output feedback"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Common cost_c, cert_c, opt_c, scan_c, bench_c;
  OptimizeOpts opt_o;
  ScanOpts scan_o;
  BenchOpts bench_o;

  auto* cost = app.add_subcommand("cost", "evaluate J_LQG or J_inf of a policy");
  add_common(cost, cost_c, true);
  auto* cert = app.add_subcommand("certify", "non-degeneracy verdict of a full-order policy");
  add_common(cert, cert_c, true);
  auto* opt = app.add_subcommand("optimize", "local policy search (gradient descent or gradient sampling)");
  add_common(opt, opt_c, false);
  opt->add_option("--max-iter", opt_o.max_iter, "iteration cap (default: method default)");
  opt->add_option("--perturb", opt_o.perturb, "radius of the default LQG start around the optimum")->capture_default_str();
  opt->add_option("--csv", opt_o.csv, "write the convergence curve as CSV");
  auto* scan = app.add_subcommand("scan", "grid scan of a metric over policy entries (CSV)");
  add_common(scan, scan_c, false);
  scan->add_option("--preset", scan_o.preset, "lqg-2d, hinf-3d or hinf-3d-reduced");
  scan->add_option("--axis", scan_o.axes, "BLOCK:row:col:lo:hi:count, repeatable");
  scan->add_option("--metric", scan_o.metric, "lqg_cost, hinf_cost, ln_det_p12_lqg or p12_sigma_min_hinf")
      ->capture_default_str();
  scan->add_option("--p-floor", scan_o.p_floor, "minimum eigenvalue of an accepted certificate")->capture_default_str();
  scan->add_option("--low-threshold", scan_o.low_threshold, "|P12| level counted as low")->capture_default_str();
  scan->add_option("--band-radius", scan_o.band_radius, "adjacency radius for band components")->capture_default_str();
  scan->add_option("--threads", scan_o.threads, "worker count (default PLT_THREADS or all cores)");
  auto* bench = app.add_subcommand("bench", "baseline and search rows for the built-in instances");
  bench->add_option("--seed", bench_c.seed, "random seed")->capture_default_str();
  bench->add_option("--out", bench_c.out, "output file (default stdout)");
  bench->add_flag("--skip-sampling", bench_o.skip_sampling, "omit the gradient-sampling column");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  try {
    if (*cost) return cmd_cost(cost_c);
    if (*cert) return cmd_certify(cert_c);
    if (*opt) return cmd_optimize(opt_c, opt_o);
    if (*scan) return cmd_scan(scan_c, scan_o, scan->count("--instance") > 0);
    if (*bench) return cmd_bench(bench_c, bench_o);
  } catch (const plt::io::ParseError& e) {
    std::cerr << "plt: parse error: " << e.what() << '\n';
    return kParse;
  } catch (const plt::DomainError& e) {
    std::cerr << "plt: domain error: " << e.what() << '\n';
    return kDomain;
  } catch (const plt::NumericalError& e) {
    std::cerr << "plt: numerical error: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "plt: error: " << e.what() << '\n';
    return kNumerical;
  }
  return kOk;
}
