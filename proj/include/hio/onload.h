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

#ifndef HIO_ONLOAD_H_
#define HIO_ONLOAD_H_

#include <functional>
#include <string>
#include <vector>

#include "hio/batching.h"
#include "hio/parallel.h"
#include "hio/plan.h"
#include "hio/scenario.h"

namespace hio {

// One node's onloading subproblem at fixed offloading. The relaxed resource
// constraint is written in normalized form sum_t cost[z_t][t] <= 1: for a
// client, cost = rate (1 - o^c) w / beta^c; for an edge, rate^e w / beta^e in
// plain mode or the batch latency over T_b in batching mode.
struct NodeProblem {
  NodeRef node;
  double memory_budget = 0;
  std::vector<double> weight;                 // per task: normalized load served here
  std::vector<double> model_memory;           // per model
  std::vector<std::vector<double>> accuracy;  // [model][task]
  std::vector<std::vector<double>> cost;      // [model][task], enters the Lagrangian
  // The unrelaxed constraint, when it differs from `cost` (surrogate edges).
  std::vector<std::vector<double>> exact_cost;

  int num_models() const { return static_cast<int>(model_memory.size()); }
  int num_tasks() const { return static_cast<int>(weight.size()); }
  const std::vector<std::vector<double>>& true_cost() const { return exact_cost.empty() ? cost : exact_cost; }
};

// How an edge's capacity enters its node problem.
enum class EdgeCostModel {
  kCompute,    // FLOPs over beta^e
  kSurrogate,  // batch latency with the linearized launch indicator
  kExact,      // batch latency with the true indicator at the fixed load
};

NodeProblem make_node_problem(const Scenario& s, NodeRef node, const Offloading& offload,
                              EdgeCostModel edge_model = EdgeCostModel::kCompute,
                              const SurrogateCoefficients* surrogate = nullptr);

// Incremental state of a model set: for each task the serving model and its
// accuracy and cost. A task moves to a newly added model only when it is
// strictly more accurate, or equally accurate and strictly cheaper.
struct NodeSelection {
  std::vector<int> models;  // in insertion order
  std::vector<int> assign;  // per task, kNullModel when uncovered
  std::vector<double> best_accuracy;
  std::vector<double> assigned_cost;
  double memory_used = 0;

  static NodeSelection empty(const NodeProblem& p);
  void add(const NodeProblem& p, int model);
  double coverage(const NodeProblem& p) const;  // f(M) = sum_t weight_t * best_accuracy_t
  double load() const;                          // sum_t assigned_cost_t
  double true_load(const NodeProblem& p) const;
  bool contains(int model) const;
  std::vector<int> sorted_models() const;
};

// Change in f(M) - multiplier * load(M) from adding `model`.
double marginal_gain(const NodeProblem& p, int model, const NodeSelection& current, double multiplier);

// Builds a selection from scratch for an arbitrary model set.
NodeSelection select_models(const NodeProblem& p, const std::vector<int>& models);

// f(M) - multiplier * load(M).
double lagrangian_value(const NodeProblem& p, const NodeSelection& sel, double multiplier);

enum class GreedyStop { kBudget, kExhausted, kNoGain };
const char* greedy_stop_name(GreedyStop stop);

struct GreedyStep {
  int model = 0;
  double gain = 0;
  double ratio = 0;
};

struct GreedyTrace {
  NodeRef node;
  std::vector<GreedyStep> accepted;
  GreedyStop stop = GreedyStop::kExhausted;
  int seed = kNullModel;  // forced first model of the winning run
};

// Ratio greedy on gain / memory among models that still fit; ties go to
// the lowest model id. A run stops when nothing fits, nothing is left, or
// the best gain is <= 0. With `seeded`, the greedy is also restarted from
// every single fitting model and the run with the largest Lagrangian value
// is kept (the empty start wins ties), which covers the classic knapsack
// failure where one large model beats many small high-ratio ones.
NodeSelection greedy_node_select(const NodeProblem& p, double multiplier, GreedyTrace* trace = nullptr,
                                 bool seeded = true);

// Lagrange multipliers of the relaxed compute / latency constraints, one per
// node in all_nodes order, with subgradient bookkeeping.
struct DualState {
  std::vector<double> multipliers;
  std::vector<double> violations;  // last normalized violation load - 1
  double client_step = 1.0;
  double edge_step = 1.0;
  int iteration = 0;

  // alpha_v <- max(0, alpha_v + step_v * scale_v / sqrt(k) * viol_v), k the
  // incremented counter.
  void update(const std::vector<NodeRef>& nodes, const std::vector<double>& viol,
              const std::vector<double>& scale);
};

struct GreedyLrOptions {
  double violation_tolerance = 1e-5;
  int max_iterations = 50;
  double client_step = 1.0;
  double edge_step = 1.0;
  bool seeded = true;
  Execution execution = Execution::kSerial;
  // Receives one trace per node per subgradient iteration when set.
  std::function<void(int iteration, const GreedyTrace&)> on_trace;
};

struct GreedyLrReport {
  DualState dual;
  std::vector<double> returned_violation;  // true load - 1 of the returned selection
  std::vector<double> slack_products;      // |alpha_v * (1 - load_v)| at the returned selection
  std::vector<bool> feasible;
  // Distinct onloadings met along the subgradient path (all nodes at the same
  // iteration), in iteration order. They may break a compute constraint at
  // the fixed offloading; the LP step can still make them feasible.
  std::vector<Onloading> path;
};

// Lagrangian-relaxed greedy onloading at fixed offloading. Each subgradient
// iteration runs the per-node greedy, then updates the multipliers with the
// node's served load share as scale. It stops once every relaxed constraint
// is within the tolerance and every multiplier times its slack is too. Per
// node, the largest-coverage selection that met its true constraint is
// returned; a node that never met it keeps its least-violating selection
// and the LP step raises offloading instead.
Onloading greedy_lr(const Scenario& s, const Offloading& offload, const GreedyLrOptions& options = {},
                    EdgeCostModel edge_model = EdgeCostModel::kCompute,
                    const SurrogateCoefficients* surrogate = nullptr, GreedyLrReport* report = nullptr);

// The returned onloading followed by the distinct path onloadings, up to
// `limit` candidates in total.
std::vector<Onloading> greedy_lr_candidates(const Scenario& s, const Offloading& offload,
                                            const GreedyLrOptions& options, EdgeCostModel edge_model,
                                            const SurrogateCoefficients* surrogate = nullptr, int limit = 8);

// Writes a node selection into an Onloading (sorted model ids).
void apply_selection(Onloading& onload, NodeRef node, const NodeSelection& selection);

// Best z for a given x: each task goes to its most accurate held model,
// cheapest on ties, lowest id after that.
void assign_best(const Scenario& s, Onloading& onload);

// One structured (JSON) log line for a greedy trace.
std::string format_trace(int iteration, const GreedyTrace& trace);

}  // namespace hio

#endif  // HIO_ONLOAD_H_
