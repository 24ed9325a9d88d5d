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

#include "hio/onload.h"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "json.hpp"

#include "hio/objective.h"

namespace hio {

NodeProblem make_node_problem(const Scenario& s, NodeRef node, const Offloading& offload,
                              EdgeCostModel edge_model, const SurrogateCoefficients* surrogate) {
  const int M = s.num_models(), T = s.num_tasks();
  const double total = s.total_rate();
  NodeProblem p;
  p.node = node;
  p.weight.assign(T, 0.0);
  p.model_memory.assign(M, 0.0);
  p.accuracy.assign(M, std::vector<double>(T, 0.0));
  p.cost.assign(M, std::vector<double>(T, 0.0));

  if (node.kind == NodeKind::kClient) {
    const int c = node.index;
    const auto& budget = s.topology.clients[c];
    p.memory_budget = budget.memory_bytes;
    std::vector<double> local(T);
    for (int t = 0; t < T; ++t) {
      local[t] = s.rate(c, t) * (1.0 - offload.to_edge[c][t]);
      p.weight[t] = local[t] / total;
    }
    for (int m = 0; m < M; ++m) {
      p.model_memory[m] = s.client_memory(m);
      for (int t = 0; t < T; ++t) {
        p.accuracy[m][t] = s.client_accuracy(c, m, t);
        p.cost[m][t] = local[t] * s.compute_cost(m) / budget.compute_capacity;
      }
    }
    return p;
  }

  const int e = node.index;
  const auto& budget = s.topology.edges[e];
  p.memory_budget = budget.memory_bytes;
  const std::vector<double> load = effective_edge_load(s, offload, e);
  for (int t = 0; t < T; ++t) p.weight[t] = load[t] / total;

  if (edge_model != EdgeCostModel::kCompute && !s.batch_interval)
    throw std::invalid_argument("batching parameters missing");
  if (edge_model == EdgeCostModel::kSurrogate && surrogate == nullptr)
    throw std::invalid_argument("surrogate edge costs need coefficients");
  if (edge_model == EdgeCostModel::kSurrogate) p.exact_cost.assign(M, std::vector<double>(T, 0.0));

  for (int m = 0; m < M; ++m) {
    p.model_memory[m] = s.edge_memory(m);
    for (int t = 0; t < T; ++t) {
      p.accuracy[m][t] = s.edge_accuracy(e, m, t);
      if (edge_model == EdgeCostModel::kCompute) {
        p.cost[m][t] = load[t] * s.compute_cost(m) / budget.compute_capacity;
        continue;
      }
      // Latency over T_b = load * w / beta + setup * indicator / T_b.
      const double interval = *s.batch_interval;
      const double work = load[t] * s.compute_cost(m) / budget.compute_capacity;
      const double launched = load[t] > kNegligibleLoadShare * total ? 1.0 : 0.0;
      const double exact = work + s.setup_cost(m, e) * launched / interval;
      if (edge_model == EdgeCostModel::kExact) {
        p.cost[m][t] = exact;
      } else {
        const double indicator = std::max(0.0, surrogate->value(e, t, load[t]));
        p.cost[m][t] = work + s.setup_cost(m, e) * indicator / interval;
        p.exact_cost[m][t] = exact;
      }
    }
  }
  return p;
}

NodeSelection NodeSelection::empty(const NodeProblem& p) {
  NodeSelection sel;
  sel.assign.assign(p.num_tasks(), kNullModel);
  sel.best_accuracy.assign(p.num_tasks(), 0.0);
  sel.assigned_cost.assign(p.num_tasks(), 0.0);
  return sel;
}

namespace {

// Whether task t moves from its incumbent to `model`.
bool improves(const NodeProblem& p, const NodeSelection& sel, int model, int t) {
  const double a = p.accuracy[model][t];
  if (a > sel.best_accuracy[t]) return true;
  return a == sel.best_accuracy[t] && sel.assign[t] != kNullModel && p.cost[model][t] < sel.assigned_cost[t];
}

}  // namespace

void NodeSelection::add(const NodeProblem& p, int model) {
  models.push_back(model);
  memory_used += p.model_memory[model];
  for (int t = 0; t < p.num_tasks(); ++t) {
    if (!improves(p, *this, model, t)) continue;
    assign[t] = model;
    best_accuracy[t] = p.accuracy[model][t];
    assigned_cost[t] = p.cost[model][t];
  }
}

double NodeSelection::coverage(const NodeProblem& p) const {
  double f = 0;
  for (int t = 0; t < p.num_tasks(); ++t) f += p.weight[t] * best_accuracy[t];
  return f;
}

double NodeSelection::load() const {
  double sum = 0;
  for (double c : assigned_cost) sum += c;
  return sum;
}

double NodeSelection::true_load(const NodeProblem& p) const {
  const auto& cost = p.true_cost();
  double sum = 0;
  for (size_t t = 0; t < assign.size(); ++t) {
    if (assign[t] != kNullModel) sum += cost[assign[t]][t];
  }
  return sum;
}

bool NodeSelection::contains(int model) const {
  return std::find(models.begin(), models.end(), model) != models.end();
}

std::vector<int> NodeSelection::sorted_models() const {
  std::vector<int> out = models;
  std::sort(out.begin(), out.end());
  return out;
}

double marginal_gain(const NodeProblem& p, int model, const NodeSelection& current, double multiplier) {
  double accuracy_gain = 0, cost_change = 0;
  for (int t = 0; t < p.num_tasks(); ++t) {
    if (!improves(p, current, model, t)) continue;
    accuracy_gain += p.weight[t] * (p.accuracy[model][t] - current.best_accuracy[t]);
    cost_change += p.cost[model][t] - current.assigned_cost[t];
  }
  return accuracy_gain - multiplier * cost_change;
}

NodeSelection select_models(const NodeProblem& p, const std::vector<int>& models) {
  NodeSelection sel = NodeSelection::empty(p);
  for (int m : models) sel.add(p, m);
  return sel;
}

double lagrangian_value(const NodeProblem& p, const NodeSelection& sel, double multiplier) {
  return sel.coverage(p) - multiplier * sel.load();
}

const char* greedy_stop_name(GreedyStop stop) {
  switch (stop) {
    case GreedyStop::kBudget:
      return "budget";
    case GreedyStop::kExhausted:
      return "exhausted";
    case GreedyStop::kNoGain:
      return "no_gain";
  }
  return "?";
}

namespace {

// Completes `sel` greedily and records the accepted steps.
GreedyStop complete_greedy(const NodeProblem& p, double multiplier, NodeSelection& sel,
                           std::vector<GreedyStep>& steps) {
  const int M = p.num_models();
  while (true) {
    int best = -1;
    double best_ratio = 0, best_gain = 0;
    bool any_left = false;
    for (int m = 0; m < M; ++m) {
      if (sel.contains(m)) continue;
      any_left = true;
      if (sel.memory_used + p.model_memory[m] > p.memory_budget) continue;
      const double gain = marginal_gain(p, m, sel, multiplier);
      const double ratio = gain / p.model_memory[m];
      if (best < 0 || ratio > best_ratio) {
        best = m;
        best_ratio = ratio;
        best_gain = gain;
      }
    }
    if (!any_left) return GreedyStop::kExhausted;
    if (best < 0) return GreedyStop::kBudget;
    if (best_gain <= 0) return GreedyStop::kNoGain;
    sel.add(p, best);
    steps.push_back({best, best_gain, best_ratio});
  }
}

}  // namespace

NodeSelection greedy_node_select(const NodeProblem& p, double multiplier, GreedyTrace* trace, bool seeded) {
  NodeSelection best = NodeSelection::empty(p);
  std::vector<GreedyStep> steps;
  GreedyStop stop = complete_greedy(p, multiplier, best, steps);
  double best_value = lagrangian_value(p, best, multiplier);
  int best_seed = kNullModel;

  if (seeded) {
    for (int m = 0; m < p.num_models(); ++m) {
      if (p.model_memory[m] > p.memory_budget) continue;
      NodeSelection sel = NodeSelection::empty(p);
      const double gain = marginal_gain(p, m, sel, multiplier);
      sel.add(p, m);
      std::vector<GreedyStep> seeded_steps{{m, gain, gain / p.model_memory[m]}};
      const GreedyStop seeded_stop = complete_greedy(p, multiplier, sel, seeded_steps);
      const double value = lagrangian_value(p, sel, multiplier);
      if (value > best_value) {
        best = std::move(sel);
        best_value = value;
        best_seed = m;
        steps = std::move(seeded_steps);
        stop = seeded_stop;
      }
    }
  }

  if (trace != nullptr) {
    trace->node = p.node;
    trace->accepted = std::move(steps);
    trace->stop = stop;
    trace->seed = best_seed;
  }
  return best;
}

void DualState::update(const std::vector<NodeRef>& nodes, const std::vector<double>& viol,
                       const std::vector<double>& scale) {
  ++iteration;
  const double root = std::sqrt(static_cast<double>(iteration));
  multipliers.resize(nodes.size(), 0.0);
  for (size_t v = 0; v < nodes.size(); ++v) {
    const double step = nodes[v].kind == NodeKind::kClient ? client_step : edge_step;
    multipliers[v] = std::max(0.0, multipliers[v] + step * scale[v] / root * viol[v]);
  }
  violations = viol;
}

void apply_selection(Onloading& onload, NodeRef node, const NodeSelection& selection) {
  onload.models(node) = selection.sorted_models();
  onload.assign(node) = selection.assign;
}

void assign_best(const Scenario& s, Onloading& onload) {
  for (NodeRef node : all_nodes(s)) {
    const auto& held = onload.models(node);
    auto& assign = onload.assign(node);
    for (int t = 0; t < s.num_tasks(); ++t) {
      int pick = kNullModel;
      double best_acc = 0;
      for (int m : held) {
        const double a = node.kind == NodeKind::kClient ? s.client_accuracy(node.index, m, t)
                                                        : s.edge_accuracy(node.index, m, t);
        if (a > best_acc || (a == best_acc && pick != kNullModel && a > 0 &&
                             (s.compute_cost(m) < s.compute_cost(pick) ||
                              (s.compute_cost(m) == s.compute_cost(pick) && m < pick)))) {
          pick = m;
          best_acc = a;
        }
      }
      assign[t] = pick;
    }
  }
}

Onloading greedy_lr(const Scenario& s, const Offloading& offload, const GreedyLrOptions& options,
                    EdgeCostModel edge_model, const SurrogateCoefficients* surrogate, GreedyLrReport* report) {
  const std::vector<NodeRef> nodes = all_nodes(s);
  const int V = static_cast<int>(nodes.size());
  std::vector<NodeProblem> problems(V);
  std::vector<double> scale(V, 0.0);
  for (int v = 0; v < V; ++v) {
    problems[v] = make_node_problem(s, nodes[v], offload, edge_model, surrogate);
    for (double w : problems[v].weight) scale[v] += w;
  }

  if (report != nullptr) report->path.clear();
  DualState dual;
  dual.multipliers.assign(V, 0.0);
  dual.client_step = options.client_step;
  dual.edge_step = options.edge_step;

  std::vector<NodeSelection> kept(V);
  std::vector<bool> kept_feasible(V, false);
  std::vector<double> kept_coverage(V, -1.0), kept_violation(V, std::numeric_limits<double>::infinity());
  std::vector<double> kept_alpha(V, 0.0);

  std::vector<NodeSelection> current(V);
  std::vector<GreedyTrace> traces(V);
  std::vector<double> viol(V), true_viol(V);
  const bool parallel = options.execution == Execution::kParallel && V > 1;
  const int threads = parallel ? worker_threads() : 1;
  const int max_iterations = std::max(1, options.max_iterations);

  for (int k = 1; k <= max_iterations; ++k) {
#pragma omp parallel for schedule(static) num_threads(threads) if (parallel)
    for (int v = 0; v < V; ++v) {
      current[v] = greedy_node_select(problems[v], dual.multipliers[v], &traces[v], options.seeded);
      viol[v] = current[v].load() - 1.0;
      true_viol[v] = current[v].true_load(problems[v]) - 1.0;
    }

    if (report != nullptr) {
      Onloading step = Onloading::empty(s);
      for (int v = 0; v < V; ++v) apply_selection(step, nodes[v], current[v]);
      if (std::find(report->path.begin(), report->path.end(), step) == report->path.end())
        report->path.push_back(std::move(step));
    }

    bool converged = true;
    for (int v = 0; v < V; ++v) {
      if (options.on_trace) options.on_trace(k, traces[v]);
      const double coverage = current[v].coverage(problems[v]);
      if (true_viol[v] <= 0) {
        if (!kept_feasible[v] || coverage > kept_coverage[v]) {
          kept[v] = current[v];
          kept_feasible[v] = true;
          kept_coverage[v] = coverage;
          kept_violation[v] = true_viol[v];
          kept_alpha[v] = dual.multipliers[v];
        }
      } else if (!kept_feasible[v] && true_viol[v] < kept_violation[v]) {
        kept[v] = current[v];
        kept_coverage[v] = coverage;
        kept_violation[v] = true_viol[v];
        kept_alpha[v] = dual.multipliers[v];
      }
      // Stop only at a KKT point: relaxed constraints met and complementary
      // slackness (a positive multiplier with slack keeps the loop going).
      if (viol[v] >= options.violation_tolerance) converged = false;
      if (dual.multipliers[v] * std::abs(viol[v]) > options.violation_tolerance) converged = false;
    }
    if (converged) break;
    dual.update(nodes, viol, scale);
  }

  // The empty selection has zero load, so every node has a feasible choice.
  for (int v = 0; v < V; ++v) assert(kept_feasible[v] || kept_violation[v] > 0);

  Onloading out = Onloading::empty(s);
  for (int v = 0; v < V; ++v) apply_selection(out, nodes[v], kept[v]);

  if (report != nullptr) {
    report->dual = dual;
    report->returned_violation = kept_violation;
    report->feasible = kept_feasible;
    report->slack_products.assign(V, 0.0);
    for (int v = 0; v < V; ++v) report->slack_products[v] = std::abs(kept_alpha[v] * kept_violation[v]);
  }
  return out;
}

std::vector<Onloading> greedy_lr_candidates(const Scenario& s, const Offloading& offload,
                                            const GreedyLrOptions& options, EdgeCostModel edge_model,
                                            const SurrogateCoefficients* surrogate, int limit) {
  GreedyLrReport report;
  std::vector<Onloading> out{greedy_lr(s, offload, options, edge_model, surrogate, &report)};
  for (Onloading& o : report.path) {
    if (static_cast<int>(out.size()) >= limit) break;
    if (std::find(out.begin(), out.end(), o) == out.end()) out.push_back(std::move(o));
  }
  return out;
}

std::string format_trace(int iteration, const GreedyTrace& trace) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& step : trace.accepted) steps.push_back({{"model", step.model}, {"gain", step.gain}, {"ratio", step.ratio}});
  nlohmann::json line = {
      {"iteration", iteration},
      {"node", trace.node.kind == NodeKind::kClient ? "client" : "edge"},
      {"index", trace.node.index},
      {"accepted", steps},
      {"stop", greedy_stop_name(trace.stop)},
  };
  if (trace.seed != kNullModel) line["seed"] = trace.seed;
  return line.dump();
}

}  // namespace hio
