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

#include "hio/scenario.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hio/plan.h"

namespace hio {
namespace {

std::string describe(const char* what, int index) {
  std::ostringstream out;
  out << what << " " << index;
  return out.str();
}

[[noreturn]] void fail(const std::string& message) { throw ValidationError(message); }

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0; }

}  // namespace

const char* mode_name(Mode mode) {
  return mode == Mode::kBatching ? "batching" : "plain";
}

Mode parse_mode(const std::string& name) {
  if (name == "plain") return Mode::kPlain;
  if (name == "batching") return Mode::kBatching;
  throw ParseError("unknown mode '" + name + "'");
}

bool ModelProfile::supports(int task) const {
  return std::find(supported_tasks.begin(), supported_tasks.end(), task) !=
         supported_tasks.end();
}

std::vector<int> Topology::clients_of(int edge) const {
  std::vector<int> out;
  for (int c = 0; c < static_cast<int>(assignment.size()); ++c) {
    if (assignment[c] == edge) out.push_back(c);
  }
  return out;
}

double Workload::total() const {
  double sum = 0;
  for (const auto& row : rates) {
    for (double r : row) sum += r;
  }
  return sum;
}

double Scenario::share(int client, int task) const {
  return workload.rates[client][task] / workload.total();
}

double Scenario::edge_accuracy(int edge, int model, int task) const {
  if (model == kNullModel) return 0.0;
  return accuracy.per_edge[edge][model][task];
}

double Scenario::client_accuracy(int client, int model, int task) const {
  if (model == kNullModel) return 0.0;
  return accuracy.client_factor * accuracy.per_edge[edge_of(client)][model][task];
}

double Scenario::compute_cost(int model) const {
  return model == kNullModel ? 0.0 : models[model].compute_per_query;
}

double Scenario::client_memory(int model) const {
  return model == kNullModel ? 0.0 : models[model].client_memory_bytes;
}

double Scenario::edge_memory(int model) const {
  return model == kNullModel ? 0.0 : models[model].memory_bytes;
}

double Scenario::setup_cost(int model, int edge) const {
  if (model == kNullModel) return 0.0;
  const auto& costs = models[model].setup_cost;
  return costs.empty() ? 0.0 : costs[edge];
}

bool Scenario::has_batching_parameters() const {
  if (!batch_interval || !(*batch_interval > 0)) return false;
  return std::all_of(models.begin(), models.end(), [&](const ModelProfile& m) {
    return static_cast<int>(m.setup_cost.size()) == num_edges();
  });
}

void Scenario::validate() const {
  const int C = num_clients(), E = num_edges(), M = num_models(), T = num_tasks();
  if (C == 0) fail("scenario has no clients");
  if (E == 0) fail("scenario has no edges");
  if (T == 0) fail("scenario has no tasks");

  for (int t = 0; t < T; ++t) {
    if (tasks[t].id != t) fail(describe("task id out of sequence at position", t));
    if (!(tasks[t].input_bytes > 0) || !std::isfinite(tasks[t].input_bytes))
      fail(describe("input_bytes must be positive for task", t));
  }
  for (int m = 0; m < M; ++m) {
    const ModelProfile& model = models[m];
    if (model.id != m) fail(describe("model id out of sequence at position", m));
    if (!(model.memory_bytes > 0) || !std::isfinite(model.memory_bytes))
      fail(describe("memory_bytes must be positive for model", m));
    if (!(model.client_memory_bytes > 0) || !std::isfinite(model.client_memory_bytes))
      fail(describe("client_memory_bytes must be positive for model", m));
    if (!(model.compute_per_query > 0) || !std::isfinite(model.compute_per_query))
      fail(describe("compute_per_query must be positive for model", m));
    if (model.supported_tasks.empty())
      fail(describe("supported_tasks is empty for model", m));
    for (int t : model.supported_tasks) {
      if (t < 0 || t >= T) fail(describe("unknown supported task for model", m));
    }
    if (!model.setup_cost.empty()) {
      if (static_cast<int>(model.setup_cost.size()) != E)
        fail(describe("setup_cost needs one entry per edge for model", m));
      for (double v : model.setup_cost) {
        if (!finite_nonneg(v)) fail(describe("setup_cost must be >= 0 for model", m));
      }
    }
  }

  auto check_budget = [](const NodeBudget& b, const std::string& who) {
    if (!(b.memory_bytes > 0) || !std::isfinite(b.memory_bytes))
      fail("memory budget must be positive for " + who);
    if (!(b.compute_capacity > 0) || !std::isfinite(b.compute_capacity))
      fail("compute capacity must be positive for " + who);
  };
  for (int c = 0; c < C; ++c) check_budget(topology.clients[c], describe("client", c));
  for (int e = 0; e < E; ++e) check_budget(topology.edges[e], describe("edge", e));

  if (static_cast<int>(topology.assignment.size()) != C)
    fail("every client must map to exactly one edge");
  for (int c = 0; c < C; ++c) {
    if (topology.assignment[c] < 0 || topology.assignment[c] >= E)
      fail(describe("client maps to an unknown edge: client", c));
  }
  if (static_cast<int>(topology.edge_uplink.size()) != E) fail("edge uplink count mismatch");
  for (int e = 0; e < E; ++e) {
    if (!finite_nonneg(topology.edge_uplink[e])) fail(describe("uplink must be >= 0 for edge", e));
  }
  if (!finite_nonneg(topology.cloud_uplink)) fail("cloud uplink must be >= 0");

  if (static_cast<int>(accuracy.per_edge.size()) != E) fail("accuracy table needs one matrix per edge");
  double best_edge = 0;
  std::vector<double> best_per_task(T, 0.0);
  for (int e = 0; e < E; ++e) {
    if (static_cast<int>(accuracy.per_edge[e].size()) != M)
      fail(describe("accuracy matrix needs one row per model at edge", e));
    for (int m = 0; m < M; ++m) {
      if (static_cast<int>(accuracy.per_edge[e][m].size()) != T)
        fail(describe("accuracy row needs one entry per task for model", m));
      for (int t = 0; t < T; ++t) {
        double a = accuracy.per_edge[e][m][t];
        if (!(a >= 0 && a <= 1)) fail("accuracy out of [0,1]");
        if (a != 0 && !models[m].supports(t))
          fail(describe("nonzero accuracy on an unsupported task for model", m));
        best_per_task[t] = std::max(best_per_task[t], a);
        best_edge = std::max(best_edge, a);
      }
    }
  }
  if (static_cast<int>(accuracy.cloud.size()) != T) fail("cloud accuracy needs one entry per task");
  for (int t = 0; t < T; ++t) {
    double a = accuracy.cloud[t];
    if (!(a >= 0 && a <= 1)) fail("accuracy out of [0,1]");
    if (a < best_per_task[t]) fail(describe("cloud accuracy below an edge model on task", t));
  }
  if (!(accuracy.client_factor > 0 && accuracy.client_factor <= 1))
    fail("client accuracy factor must lie in (0,1]");

  if (static_cast<int>(workload.rates.size()) != C) fail("workload needs one rate row per client");
  for (int c = 0; c < C; ++c) {
    if (static_cast<int>(workload.rates[c].size()) != T)
      fail(describe("workload row needs one rate per task for client", c));
    for (double r : workload.rates[c]) {
      if (!finite_nonneg(r)) fail(describe("rates must be >= 0 for client", c));
    }
  }
  if (!(workload.total() > 0)) fail("total arrival rate must be positive");

  if (batch_interval && !(*batch_interval > 0)) fail("batch interval must be positive");
  if (mode == Mode::kBatching && !has_batching_parameters())
    fail("batching parameters missing");
}

Onloading Onloading::empty(const Scenario& s) {
  Onloading out;
  out.client_models.assign(s.num_clients(), {});
  out.edge_models.assign(s.num_edges(), {});
  out.client_assign.assign(s.num_clients(), std::vector<int>(s.num_tasks(), kNullModel));
  out.edge_assign.assign(s.num_edges(), std::vector<int>(s.num_tasks(), kNullModel));
  return out;
}

const std::vector<int>& Onloading::models(NodeRef node) const {
  return node.kind == NodeKind::kClient ? client_models[node.index] : edge_models[node.index];
}
const std::vector<int>& Onloading::assign(NodeRef node) const {
  return node.kind == NodeKind::kClient ? client_assign[node.index] : edge_assign[node.index];
}
std::vector<int>& Onloading::models(NodeRef node) {
  return node.kind == NodeKind::kClient ? client_models[node.index] : edge_models[node.index];
}
std::vector<int>& Onloading::assign(NodeRef node) {
  return node.kind == NodeKind::kClient ? client_assign[node.index] : edge_assign[node.index];
}

Offloading Offloading::zeros(const Scenario& s) {
  Offloading out;
  out.to_edge.assign(s.num_clients(), std::vector<double>(s.num_tasks(), 0.0));
  out.to_cloud = out.to_edge;
  return out;
}

std::vector<NodeRef> all_nodes(const Scenario& s) {
  std::vector<NodeRef> nodes;
  for (int c = 0; c < s.num_clients(); ++c) nodes.push_back({NodeKind::kClient, c});
  for (int e = 0; e < s.num_edges(); ++e) nodes.push_back({NodeKind::kEdge, e});
  return nodes;
}

}  // namespace hio
