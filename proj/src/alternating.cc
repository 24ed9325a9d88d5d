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

#include "hio/alternating.h"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "json.hpp"

#include "hio/constraints.h"
#include "hio/objective.h"

namespace hio {
namespace {

// Relative slack allowed on the exact latency check of a batching plan.
constexpr double kLatencyTolerance = 1e-7;

bool latency_ok(const Scenario& s, const Onloading& onload, const Offloading& offload) {
  for (int e = 0; e < s.num_edges(); ++e) {
    const BatchLatency lat = edge_batch_latency(s, onload, effective_edge_load(s, offload, e), e);
    if (lat.total > lat.interval * (1.0 + kLatencyTolerance)) return false;
  }
  return true;
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

}  // namespace

const char* ao_status_name(AoStatus status) {
  return status == AoStatus::kConverged ? "converged" : "max_iterations";
}

std::string AoTrace::to_jsonl() const {
  std::ostringstream out;
  for (const AoRecord& r : records) {
    out << nlohmann::json{{"iteration", r.iteration}, {"phase", "onload"}, {"F", r.objective_after_onload},
                          {"accepted", r.accepted}, {"runtime_ms", r.runtime_ms}}
               .dump()
        << '\n';
    out << nlohmann::json{{"iteration", r.iteration}, {"phase", "lp"}, {"F", r.objective_after_lp},
                          {"repaired", r.repaired}, {"runtime_ms", r.runtime_ms}}
               .dump()
        << '\n';
  }
  out << nlohmann::json{{"status", ao_status_name(status)}, {"iterations", iterations()}}.dump() << '\n';
  return out.str();
}

Offloading initial_offloading(const Scenario& s) {
  Offloading o = Offloading::zeros(s);
  for (int e = 0; e < s.num_edges(); ++e) {
    const std::vector<int> clients = s.topology.clients_of(e);
    double demand = 0;
    for (int c : clients) {
      for (int t = 0; t < s.num_tasks(); ++t) demand += s.rate(c, t) * s.tasks[t].input_bytes;
    }
    const double share = demand > 0 ? std::min(1.0, s.topology.edge_uplink[e] / demand) : 0.0;
    for (int c : clients) std::fill(o.to_edge[c].begin(), o.to_edge[c].end(), share);
  }
  return o;
}

std::optional<Offloading> repair_batching(const Scenario& s, const Onloading& onload, const Offloading& offload) {
  Offloading o = offload;
  for (int e = 0; e < s.num_edges(); ++e) {
    auto latency = [&](const Offloading& trial) {
      return edge_batch_latency(s, onload, effective_edge_load(s, trial, e), e).total;
    };
    const double interval = *s.batch_interval;
    if (latency(o) <= interval) continue;
    const std::vector<int> clients = s.topology.clients_of(e);
    const Offloading original = o;
    auto scaled = [&](double factor) {
      Offloading trial = original;
      for (int c : clients) {
        for (int t = 0; t < s.num_tasks(); ++t) {
          const double up = original.to_cloud[c][t];
          trial.to_edge[c][t] = up + factor * (original.to_edge[c][t] - up);
        }
      }
      return trial;
    };
    double lo = 0, hi = 1;
    for (int step = 0; step < 40; ++step) {
      const double mid = 0.5 * (lo + hi);
      if (latency(scaled(mid)) <= interval) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    o = scaled(lo);
  }
  if (!validate_plan(s, Plan{onload, o}).feasible()) return std::nullopt;
  return o;
}

std::optional<OffloadStepResult> offload_step(const Scenario& s, const Onloading& onload, bool batching,
                                              const SurrogateCoefficients* surrogate) {
  if (!batching) {
    OffloadingResult r = solve_offloading(s, onload);
    if (r.status != LpStatus::kOptimal) return std::nullopt;
    return OffloadStepResult{std::move(r.offload), false};
  }

  OffloadingLpOptions options;
  options.capacity = EdgeCapacityModel::kSurrogate;
  options.surrogate = surrogate;
  OffloadingResult relaxed = solve_offloading(s, onload, options);
  if (relaxed.status != LpStatus::kOptimal) return std::nullopt;

  std::optional<OffloadStepResult> best;
  double best_value = 0;
  auto consider = [&](Offloading o, bool repaired) {
    if (!latency_ok(s, onload, o)) return;
    const double value = objective_value(s, onload, o);
    if (!best || value > best_value) {
      best = OffloadStepResult{std::move(o), repaired};
      best_value = value;
    }
  };
  consider(relaxed.offload, false);

  // The exact constraint is linear once the launched tasks are fixed.
  std::vector<std::vector<bool>> launched(s.num_edges(), std::vector<bool>(s.num_tasks(), false));
  for (int e = 0; e < s.num_edges(); ++e) {
    const std::vector<double> load = effective_edge_load(s, relaxed.offload, e);
    for (int t = 0; t < s.num_tasks(); ++t) launched[e][t] = load[t] > kNegligibleLoadShare * s.total_rate();
  }
  options.capacity = EdgeCapacityModel::kFixedIndicator;
  options.launched = &launched;
  OffloadingResult fixed = solve_offloading(s, onload, options);
  if (fixed.status == LpStatus::kOptimal) consider(std::move(fixed.offload), !best.has_value());

  if (!best) {
    if (auto repaired = repair_batching(s, onload, relaxed.offload)) consider(std::move(*repaired), true);
  }
  return best;
}

AoResult run_alternating(const Scenario& s, const AoConfig& cfg, const OnloadStep& step, bool stop_on_stall) {
  return run_alternating(
      s, cfg, [&step](const OnloadContext& ctx) { return std::vector<Onloading>{step(ctx)}; }, stop_on_stall);
}

AoResult run_alternating(const Scenario& s, const AoConfig& cfg, const CandidateStep& step, bool stop_on_stall) {
  if (cfg.batching && !s.has_batching_parameters()) throw ValidationError("batching parameters missing");
  AoResult out;
  Plan current{Onloading::empty(s), initial_offloading(s)};
  double value = objective_value(s, current.onload, current.offload);
  out.trace.initial_objective = value;

  SurrogateCoefficients surrogate;
  const int max_iterations = std::max(1, cfg.max_iterations);
  for (int k = 1; k <= max_iterations; ++k) {
    const auto started = std::chrono::steady_clock::now();
    if (cfg.batching) surrogate = linearize_setup_indicator(s, current.offload, cfg.smoothing_scale);
    const SurrogateCoefficients* coefficients = cfg.batching ? &surrogate : nullptr;

    std::vector<Onloading> candidates = step(OnloadContext{s, current, k, coefficients});

    AoRecord record;
    record.iteration = k;
    record.objective_after_onload = value;
    double next = value;
    std::optional<Plan> chosen;
    for (Onloading& candidate : candidates) {
      const double proposed = objective_value(s, candidate, current.offload);
      if (!(proposed > value + cfg.acceptance_tolerance)) continue;
      auto offload = offload_step(s, candidate, cfg.batching, coefficients);
      if (!offload) continue;
      const double solved = objective_value(s, candidate, offload->offload);
      if (solved < value || (chosen && solved <= next)) continue;
      record.accepted = true;
      record.repaired = offload->repaired;
      record.objective_after_onload = proposed;
      chosen = Plan{std::move(candidate), std::move(offload->offload)};
      next = solved;
    }
    if (chosen) current = std::move(*chosen);
    record.objective_after_lp = next;
    record.runtime_ms = elapsed_ms(started);
    out.trace.records.push_back(record);

    const double gain = next - value;
    value = next;
    if (stop_on_stall && gain < cfg.tolerance) {
      out.trace.status = AoStatus::kConverged;
      break;
    }
  }
  out.plan = std::move(current);
  out.objective = value;
  return out;
}

}  // namespace hio
