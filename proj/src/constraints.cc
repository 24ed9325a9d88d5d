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

#include "hio/constraints.h"

#include <algorithm>
#include <cmath>

#include "hio/batching.h"
#include "hio/objective.h"

namespace hio {
namespace {

void check_ids(const Scenario& s, const std::vector<std::vector<int>>& models,
               const std::vector<std::vector<int>>& assign, size_t nodes, const char* what) {
  if (models.size() != nodes || assign.size() != nodes)
    throw ValidationError(std::string("plan has wrong number of ") + what + " entries");
  for (size_t v = 0; v < nodes; ++v) {
    for (int m : models[v]) {
      if (m < 0 || m >= s.num_models())
        throw ValidationError(std::string("unresolved model id in ") + what + " onloading");
    }
    if (static_cast<int>(assign[v].size()) != s.num_tasks())
      throw ValidationError(std::string("assignment width mismatch for ") + what);
    for (int m : assign[v]) {
      if (m != kNullModel && (m < 0 || m >= s.num_models()))
        throw ValidationError(std::string("unresolved model id in ") + what + " assignment");
    }
  }
}

bool holds(const std::vector<int>& models, int m) {
  return m == kNullModel || std::find(models.begin(), models.end(), m) != models.end();
}

}  // namespace

bool ConstraintReport::feasible(double tol) const {
  return assignment_violations == 0 && max_violation_ <= tol;
}

void check_plan_shape(const Scenario& s, const Plan& p) {
  check_ids(s, p.onload.client_models, p.onload.client_assign, s.num_clients(), "client");
  check_ids(s, p.onload.edge_models, p.onload.edge_assign, s.num_edges(), "edge");
  const auto& o = p.offload;
  if (static_cast<int>(o.to_edge.size()) != s.num_clients() ||
      static_cast<int>(o.to_cloud.size()) != s.num_clients())
    throw ValidationError("plan offloading has wrong number of clients");
  for (int c = 0; c < s.num_clients(); ++c) {
    if (static_cast<int>(o.to_edge[c].size()) != s.num_tasks() ||
        static_cast<int>(o.to_cloud[c].size()) != s.num_tasks())
      throw ValidationError("plan offloading has wrong number of tasks");
  }
}

ConstraintReport validate_plan(const Scenario& s, const Plan& p) {
  check_plan_shape(s, p);
  const int C = s.num_clients(), E = s.num_edges(), T = s.num_tasks();
  const auto& on = p.onload;
  const auto& o = p.offload;
  ConstraintReport r;
  double worst = 0;
  auto note = [&](double slack, double budget) {
    worst = std::max(worst, -slack / std::max(budget, 1.0));
  };

  for (int c = 0; c < C; ++c) {
    const auto& budget = s.topology.clients[c];
    double used = 0, load = 0;
    for (int m : on.client_models[c]) used += s.client_memory(m);
    for (int t = 0; t < T; ++t) {
      load += s.rate(c, t) * (1.0 - o.to_edge[c][t]) * s.compute_cost(on.client_assign[c][t]);
      if (!holds(on.client_models[c], on.client_assign[c][t])) ++r.assignment_violations;
    }
    r.client_memory.push_back(budget.memory_bytes - used);
    r.client_compute.push_back(budget.compute_capacity - load);
    note(r.client_memory.back(), budget.memory_bytes);
    note(r.client_compute.back(), budget.compute_capacity);
  }

  for (int e = 0; e < E; ++e) {
    const auto& budget = s.topology.edges[e];
    double used = 0;
    for (int m : on.edge_models[e]) used += s.edge_memory(m);
    r.edge_memory.push_back(budget.memory_bytes - used);
    note(r.edge_memory.back(), budget.memory_bytes);
    for (int t = 0; t < T; ++t) {
      if (!holds(on.edge_models[e], on.edge_assign[e][t])) ++r.assignment_violations;
    }

    const std::vector<double> load = effective_edge_load(s, o, e);
    if (s.mode == Mode::kBatching) {
      const BatchLatency latency = edge_batch_latency(s, on, load, e);
      r.edge_compute.push_back(latency.interval - latency.total);
      note(r.edge_compute.back(), latency.interval);
    } else {
      double flops = 0;
      for (int t = 0; t < T; ++t) flops += load[t] * s.compute_cost(on.edge_assign[e][t]);
      r.edge_compute.push_back(budget.compute_capacity - flops);
      note(r.edge_compute.back(), budget.compute_capacity);
    }
  }

  std::vector<double> uplink(E, 0.0);
  double cloud = 0;
  double consistency = 1.0;
  for (int c = 0; c < C; ++c) {
    for (int t = 0; t < T; ++t) {
      const double bytes = s.rate(c, t) * s.tasks[t].input_bytes;
      uplink[s.edge_of(c)] += bytes * o.to_edge[c][t];
      cloud += bytes * o.to_cloud[c][t];
      consistency = std::min({consistency, o.to_cloud[c][t], o.to_edge[c][t] - o.to_cloud[c][t],
                              1.0 - o.to_edge[c][t]});
    }
  }
  for (int e = 0; e < E; ++e) {
    r.edge_uplink.push_back(s.topology.edge_uplink[e] - uplink[e]);
    note(r.edge_uplink.back(), s.topology.edge_uplink[e]);
  }
  r.cloud_uplink = s.topology.cloud_uplink - cloud;
  note(r.cloud_uplink, s.topology.cloud_uplink);
  r.offloading_consistency = consistency;
  worst = std::max(worst, -consistency);
  if (std::isnan(worst)) worst = INFINITY;
  r.max_violation_ = worst;
  return r;
}

}  // namespace hio
