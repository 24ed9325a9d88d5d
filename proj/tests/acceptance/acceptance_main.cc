/* Copyright 2026 The HIO Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Acceptance checks for the solver suite. Prints one PASS/FAIL line per
// criterion and exits non-zero if any criterion fails. Informational lines
// start with "  info:".

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hio/baselines.h"
#include "hio/batching.h"
#include "hio/constraints.h"
#include "hio/generator.h"
#include "hio/j3o.h"
#include "hio/lp.h"
#include "hio/objective.h"
#include "hio/offload_lp.h"
#include "lp_oracle.h"
#include "test_support.h"

namespace hio {
namespace {

// Pinned tolerances.
constexpr double kC1MedianRatio = 0.97;
constexpr double kC1MinRatio = 0.90;
constexpr double kC1SuiteSeconds = 60.0;
constexpr double kC2TargetRatio = 0.15;
constexpr double kC2PassRatio = 0.25;
constexpr double kC3Tolerance = 1e-6;
constexpr double kC4Tolerance = 1e-9;
constexpr double kC4ConvergedShare = 0.99;
constexpr int kC5Triples = 10000;
constexpr double kC6Tolerance = 1e-7;
constexpr double kC8LatencyTolerance = 1e-6;
constexpr double kC8EquivalenceTolerance = 1e-9;
constexpr double kC9Tolerance = 1e-9;

constexpr int kDeskSeeds = 100;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("C%d %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

bool trace_monotone(const AoTrace& trace) {
  double previous = trace.initial_objective;
  for (const AoRecord& r : trace.records) {
    if (r.objective_after_lp < previous - kC4Tolerance) return false;
    previous = r.objective_after_lp;
  }
  return true;
}

double max_offload_gap(const Offloading& a, const Offloading& b) {
  double gap = 0;
  for (std::size_t c = 0; c < a.to_edge.size(); ++c)
    for (std::size_t t = 0; t < a.to_edge[c].size(); ++t) {
      gap = std::max(gap, std::abs(a.to_edge[c][t] - b.to_edge[c][t]));
      gap = std::max(gap, std::abs(a.to_cloud[c][t] - b.to_cloud[c][t]));
    }
  return gap;
}

// J3O and the oracle on the desk seeds; shared by criteria 1, 3 and 4.
struct DeskRun {
  AoResult j3o;
  BaselineResult oracle;
};

std::vector<DeskRun> desk_runs;

void criterion1() {
  const auto start = Clock::now();
  std::vector<double> ratios;
  for (int seed = 0; seed < kDeskSeeds; ++seed) {
    const Scenario s = testing::desk(static_cast<std::uint64_t>(seed));
    DeskRun run{j3o(s), minlp_oracle(s)};
    ratios.push_back(run.oracle.objective > 0 ? run.j3o.objective / run.oracle.objective : 1.0);
    desk_runs.push_back(std::move(run));
  }
  const double elapsed = seconds_since(start);
  const double med = median(ratios), lo = *std::min_element(ratios.begin(), ratios.end());
  report(1, med >= kC1MedianRatio && lo >= kC1MinRatio && elapsed < kC1SuiteSeconds,
         fmt("J3O/oracle over %d desk seeds: median %.4f (>= %.2f), min %.4f (>= %.2f), suite %.1f s (< %.0f s)",
             kDeskSeeds, med, kC1MedianRatio, lo, kC1MinRatio, elapsed, kC1SuiteSeconds));
}

void criterion2() {
  std::vector<double> ratios;
  long long lo = -1, hi = 0;
  bool in_range = true;
  for (int seed = 0; seed < 20; ++seed) {
    GeneratorConfig cfg;
    cfg.preset = "runtime";
    cfg.seed = static_cast<std::uint64_t>(seed);
    const Scenario s = generate_scenario(cfg);
    const auto t0 = Clock::now();
    const AoResult j = j3o(s);
    const double j_time = seconds_since(t0);
    const auto t1 = Clock::now();
    const BaselineResult o = minlp_oracle(s);
    const double o_time = seconds_since(t1);
    (void)j;
    ratios.push_back(j_time / o_time);
    const long long configs = o.configurations;
    lo = lo < 0 ? configs : std::min(lo, configs);
    hi = std::max(hi, configs);
    in_range = in_range && configs >= 1000 && configs <= 100000;
  }
  const double med = median(ratios);
  report(2, in_range && med <= kC2PassRatio,
         fmt("median J3O/oracle runtime %.4f over 20 instances (target %.2f, pass <= %.2f); oracle "
             "configurations %lld..%lld (required 1e3..1e5)",
             med, kC2TargetRatio, kC2PassRatio, lo, hi));
}

void criterion3() {
  constexpr double kFactor = 1.0 - 1.0 / 2.718281828459045;
  int violations = 0;
  double worst = 1e300, worst_gap = 0;
  for (const DeskRun& run : desk_runs) {
    const double gap = max_offload_gap(run.j3o.plan.offload, run.oracle.plan.offload);
    const double bound = kFactor * (run.oracle.objective - gap);
    const double slack = run.j3o.objective - bound;
    worst = std::min(worst, slack);
    worst_gap = std::max(worst_gap, gap);
    if (slack < -kC3Tolerance) ++violations;
  }
  report(3, violations == 0,
         fmt("F(J3O) >= (1-1/e)(F_oracle - gap) on %d/%d desk seeds; smallest slack %.4f, largest gap %.4f",
             kDeskSeeds - violations, kDeskSeeds, worst, worst_gap));
}

void criterion4() {
  int runs = 0, monotone = 0, converged = 0;
  auto tally = [&](const AoResult& r) {
    ++runs;
    monotone += trace_monotone(r.trace);
    converged += r.trace.status == AoStatus::kConverged;
  };
  for (const DeskRun& run : desk_runs) tally(run.j3o);
  for (int seed = 0; seed < kDeskSeeds; ++seed) tally(baj3o(testing::desk(static_cast<std::uint64_t>(seed), Mode::kBatching)));
  const double share = static_cast<double>(converged) / runs;
  report(4, monotone == runs && share >= kC4ConvergedShare,
         fmt("%d/%d traces non-decreasing (tol %.0e); %d/%d converged within the iteration cap (%.1f%%, need %.0f%%)",
             monotone, runs, kC4Tolerance, converged, runs, 100 * share, 100 * kC4ConvergedShare));
}

void criterion5() {
  const testing::SubmodularityTally t = testing::check_submodularity(2024, kC5Triples);
  report(5, t.triples == kC5Triples && t.diminishing_failures == 0 && t.monotone_failures == 0 && t.mismatches == 0,
         fmt("%d dyadic (S, T, m) triples: %d diminishing-returns failures, %d monotonicity failures, %d "
             "exact-reference mismatches",
             t.triples, t.diminishing_failures, t.monotone_failures, t.mismatches));
}

void criterion6() {
  std::mt19937_64 gen(606);
  int matched = 0, mismatched = 0, infeasible_agree = 0, max_vars = 0;
  double worst_primal = 0, worst_dual = 0;
  bool ok = true;
  // Draw until 50 feasible LPs have been compared; infeasible draws must
  // be reported infeasible by both solvers.
  for (int draws = 0; matched + mismatched < 50 && draws < 1000; ++draws) {
    const int clients = 1 + static_cast<int>(gen() % 2), tasks = 1 + static_cast<int>(gen() % 2);
    const Scenario s = testing::random_small(gen(), clients, 1, 3, tasks);
    Onloading on = Onloading::empty(s);
    for (NodeRef node : all_nodes(s))
      for (int m = 0; m < s.num_models(); ++m)
        if (gen() % 2) on.models(node).push_back(m);
    assign_best(s, on);
    const OffloadingLp built = build_offloading_lp(s, on);
    max_vars = std::max(max_vars, built.lp.num_vars());
    const LpSolution sol = solve_lp(built.lp);
    const testing::VertexResult ref = testing::vertex_enumeration(built.lp);
    if (!ref.feasible) {
      if (sol.status == LpStatus::kInfeasible) {
        ++infeasible_agree;
      } else {
        ok = false;
      }
      continue;
    }
    if (sol.status != LpStatus::kOptimal) {
      ok = false;
      ++mismatched;
      continue;
    }
    const double primal_gap = std::abs(sol.objective - ref.objective);
    const double dual_gap = std::abs(dual_objective(built.lp, sol.duals) - sol.objective);
    worst_primal = std::max(worst_primal, primal_gap);
    worst_dual = std::max(worst_dual, dual_gap);
    if (primal_gap <= kC6Tolerance && dual_gap <= kC6Tolerance) {
      ++matched;
    } else {
      ++mismatched;
      ok = false;
    }
  }
  report(6, ok && matched == 50,
         fmt("%d/50 feasible offloading LPs (<= %d variables) match vertex enumeration, %d infeasible draws agreed; "
             "max |primal gap| %.2e, max |duality gap| %.2e (tol %.0e)",
             matched, max_vars, infeasible_agree, worst_primal, worst_dual, kC6Tolerance));
}

bool edge_holds(const Plan& p, int model) {
  const auto& held = p.onload.edge_models[0];
  return std::find(held.begin(), held.end(), model) != held.end();
}

void criterion7() {
  enum : int { kA = 0, kB = 1, kAB = 2 };
  using Solver = std::function<Plan(const Scenario&)>;
  const std::vector<std::pair<std::string, Solver>> solvers = {
      {"oracle", [](const Scenario& s) { return minlp_oracle(s).plan; }},
      {"j3o", [](const Scenario& s) { return run_j3o(s).plan; }},
  };
  bool pass = true;
  std::string detail;
  for (const auto& [name, solve] : solvers) {
    // p_A sweep: the edge starts on B or AB and ends on A, switching to A
    // exactly once.
    std::string path;
    bool starts_b = false, ends_a = false, single_switch = true, seen_a = false;
    for (int k = 1; k <= 9; ++k) {
      MotivatingOptions o;
      o.task_a_share = 0.1 * k;
      const Plan p = solve(motivating_preset(o));
      const bool a = edge_holds(p, kA) && p.onload.edge_models[0].size() == 1;
      if (k == 1) starts_b = edge_holds(p, kB) || edge_holds(p, kAB);
      if (k == 9) ends_a = a;
      if (seen_a && !a) single_switch = false;
      seen_a = seen_a || a;
      path += a ? 'A' : (edge_holds(p, kAB) ? 'X' : (edge_holds(p, kB) ? 'B' : '-'));
    }
    // Setup-cost sweep at p_A = 0.6.
    auto holds_a_at = [&](double nu) {
      MotivatingOptions o;
      o.task_a_share = 0.6;
      o.setup_cost_a = nu;
      return edge_holds(solve(motivating_preset(o)), kA);
    };
    const bool a_cheap = holds_a_at(0.0), a_costly = holds_a_at(0.45);
    const bool ok = starts_b && ends_a && single_switch && a_cheap && !a_costly;
    pass = pass && ok;
    detail += fmt("%s edge path %s (X = AB), A held at nu_A 0: %s, at 0.45: %s; ", name.c_str(), path.c_str(),
                  a_cheap ? "yes" : "no", a_costly ? "yes" : "no");
  }
  report(7, pass, detail);
}

void criterion8() {
  int seeds = 0, meets = 0, equal = 0;
  double worst_excess = -1e300, worst_diff = 0;
  for (int seed = 0; seed < kDeskSeeds; ++seed) {
    const Scenario s = testing::desk(static_cast<std::uint64_t>(seed), Mode::kBatching);
    const AoResult r = baj3o(s);
    ++seeds;
    bool ok = validate_plan(s, r.plan).feasible();
    for (int e = 0; e < s.num_edges(); ++e) {
      const BatchLatency lat = batch_latency(s, r.plan, e);
      const double excess = (lat.total - lat.interval) / lat.interval;
      worst_excess = std::max(worst_excess, excess);
      ok = ok && excess <= kC8LatencyTolerance;
    }
    meets += ok;
  }
  const int equivalence_seeds = 20;
  for (int seed = 0; seed < equivalence_seeds; ++seed) {
    GeneratorConfig cfg;
    cfg.preset = "desk";
    cfg.seed = static_cast<std::uint64_t>(seed);
    cfg.mode = Mode::kBatching;
    cfg.setup_queries = 0;
    const Scenario batching = generate_scenario(cfg);
    Scenario plain = batching;
    plain.mode = Mode::kPlain;
    const double diff = std::abs(baj3o(batching).objective - j3o(plain).objective);
    worst_diff = std::max(worst_diff, diff);
    equal += diff <= kC8EquivalenceTolerance;
  }
  report(8, meets == seeds && equal == equivalence_seeds,
         fmt("%d/%d BAJ3O plans within the true batch interval (worst relative excess %.2e, tol %.0e); "
             "nu = 0 equals J3O on %d/%d seeds (max diff %.1e)",
             meets, seeds, worst_excess, kC8LatencyTolerance, equal, equivalence_seeds, worst_diff));
}

std::vector<double> interval_sweep(std::uint64_t seed) {
  std::vector<double> values;
  for (double tb : {0.1, 0.25, 0.5, 1.0}) {
    GeneratorConfig cfg;
    cfg.preset = "desk";
    cfg.seed = seed;
    cfg.mode = Mode::kBatching;
    cfg.batch_interval = tb;
    cfg.edge_uplink_scale = 1.0;
    values.push_back(baj3o(generate_scenario(cfg)).objective);
  }
  return values;
}

bool non_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] < v[i - 1] - kC9Tolerance) return false;
  return true;
}

void criterion9() {
  const std::vector<double> pinned = interval_sweep(0);
  report(9, non_decreasing(pinned),
         fmt("seed 0, slack uplink: F(BAJ3O) at T_b = 0.1, 0.25, 0.5, 1.0 is %.4f, %.4f, %.4f, %.4f", pinned[0],
             pinned[1], pinned[2], pinned[3]));
  int holds = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) holds += non_decreasing(interval_sweep(seed));
  std::printf("  info: non-decreasing in T_b on %d/20 seeds (heuristic; not guaranteed per seed)\n", holds);
}

}  // namespace
}  // namespace hio

int main() {
  using namespace hio;
  const auto start = Clock::now();
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  std::printf("%d of 9 criteria failed (%.1f s)\n", failures, seconds_since(start));
  return failures == 0 ? 0 : 1;
}
