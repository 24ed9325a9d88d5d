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

#ifndef HIO_ALTERNATING_H_
#define HIO_ALTERNATING_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hio/batching.h"
#include "hio/offload_lp.h"
#include "hio/onload.h"
#include "hio/plan.h"
#include "hio/scenario.h"

namespace hio {

struct AoConfig {
  double tolerance = 1e-4;   // stop once an outer step gains less than this
  int max_iterations = 20;
  bool batching = false;     // use the batching latency constraint at the edges
  double smoothing_scale = kDefaultSmoothingScale;
  std::uint64_t seed = 0;    // only randomized methods use it
  // A new onloading must beat the retained one by more than this.
  double acceptance_tolerance = 1e-9;
  GreedyLrOptions greedy;
};

struct AoRecord {
  int iteration = 0;
  double objective_after_onload = 0;  // F(x^k, o^{k-1})
  double objective_after_lp = 0;      // F(x^k, o^k)
  bool accepted = false;              // whether the new onloading was kept
  bool repaired = false;              // batching plan needed the exact-latency repair
  double runtime_ms = 0;
};

enum class AoStatus { kConverged, kMaxIterations };
const char* ao_status_name(AoStatus status);

struct AoTrace {
  std::vector<AoRecord> records;
  AoStatus status = AoStatus::kMaxIterations;
  double initial_objective = 0;
  int iterations() const { return static_cast<int>(records.size()); }
  // One JSON object per line: iteration, phase (onload | lp), F, runtime_ms.
  std::string to_jsonl() const;
};

struct AoResult {
  Plan plan;
  double objective = 0;
  AoTrace trace;
};

// Context handed to an onloading step.
struct OnloadContext {
  const Scenario& scenario;
  const Plan& current;
  int iteration;
  const SurrogateCoefficients* surrogate;  // set in batching runs
};
using OnloadStep = std::function<Onloading(const OnloadContext&)>;
// A step proposing several onloadings, the preferred one first.
using CandidateStep = std::function<std::vector<Onloading>(const OnloadContext&)>;

// The outer alternating loop shared by J3O, BAJ3O and the AO baselines.
// Starts from the empty onloading and initial_offloading(s). Each iteration
// proposes an onloading; it is kept only if it raises F at the current
// offloading by more than acceptance_tolerance and its offloading step is
// feasible and does not lower F. The offloading step is the LP (with the
// linearized latency in batching runs, followed by an exact-latency check
// and repair). With stop_on_stall the loop ends once an iteration gains
// less than cfg.tolerance; otherwise it runs all cfg.max_iterations.
AoResult run_alternating(const Scenario& s, const AoConfig& cfg, const OnloadStep& step,
                         bool stop_on_stall = true);
// Same loop with several proposals per iteration: every candidate that passes
// the acceptance test gets its offloading step, and the one with the highest
// solved F is kept (the earliest on ties).
AoResult run_alternating(const Scenario& s, const AoConfig& cfg, const CandidateStep& step,
                         bool stop_on_stall = true);

// o^c_t = min(1, kappa^e / demand bytes of edge e) for every client of e, so
// each client offloads the same share of each task and the edge uplink is
// exactly full when it binds; o^{c,e} = 0.
Offloading initial_offloading(const Scenario& s);

// Offloading step for a fixed onloading. Plain runs solve the compute-form
// LP. Batching runs solve the surrogate LP; if that plan breaks the exact
// latency constraint, they re-solve with the launch set fixed to the tasks
// that carry edge load, and as a last resort scale each offending edge's
// load down by bisection. Returns nullopt when no feasible plan was found.
struct OffloadStepResult {
  Offloading offload;
  bool repaired = false;
};
std::optional<OffloadStepResult> offload_step(const Scenario& s, const Onloading& onload, bool batching,
                                              const SurrogateCoefficients* surrogate);

// Bisection on one scale factor per edge applied to the edge-served share
// to_edge - to_cloud until the exact latency constraint holds (<= 40 steps).
// Returns nullopt if the scaled plan breaks another constraint.
std::optional<Offloading> repair_batching(const Scenario& s, const Onloading& onload, const Offloading& offload);

}  // namespace hio

#endif  // HIO_ALTERNATING_H_
