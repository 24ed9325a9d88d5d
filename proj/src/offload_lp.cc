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

#include "hio/offload_lp.h"

#include <algorithm>
#include <stdexcept>

namespace hio {
namespace {

std::string tag(const char* what, int a, int b) {
  return std::string(what) + "[" + std::to_string(a) + "," + std::to_string(b) + "]";
}

}  // namespace

OffloadingLp build_offloading_lp(const Scenario& s, const Onloading& onload,
                                 const OffloadingLpOptions& options) {
  const int C = s.num_clients(), E = s.num_edges(), T = s.num_tasks();
  const double total_rate = s.total_rate();
  if (options.capacity == EdgeCapacityModel::kSurrogate && options.surrogate == nullptr)
    throw std::invalid_argument("surrogate capacity model needs coefficients");
  if (options.capacity == EdgeCapacityModel::kFixedIndicator && options.launched == nullptr)
    throw std::invalid_argument("fixed-indicator capacity model needs a launch set");
  if (options.capacity != EdgeCapacityModel::kCompute && !s.batch_interval)
    throw std::invalid_argument("batching parameters missing");

  OffloadingLp out;
  LinearProgram& lp = out.lp;
  out.to_edge_var.assign(C, std::vector<int>(T, -1));
  out.to_cloud_var.assign(C, std::vector<int>(T, -1));

  double constant = 0;
  for (int c = 0; c < C; ++c) {
    const int e = s.edge_of(c);
    for (int t = 0; t < T; ++t) {
      const double share = s.rate(c, t) / total_rate;
      const double acc_client = s.client_accuracy(c, onload.client_assign[c][t], t);
      const double acc_edge = s.edge_accuracy(e, onload.edge_assign[e][t], t);
      constant += share * acc_client;
      out.to_edge_var[c][t] = lp.add_variable(tag("to_edge", c, t), share * (acc_edge - acc_client), 0, 1);
    }
  }
  for (int c = 0; c < C; ++c) {
    const int e = s.edge_of(c);
    for (int t = 0; t < T; ++t) {
      const double share = s.rate(c, t) / total_rate;
      const double acc_edge = s.edge_accuracy(e, onload.edge_assign[e][t], t);
      out.to_cloud_var[c][t] =
          lp.add_variable(tag("to_cloud", c, t), share * (s.accuracy.cloud[t] - acc_edge), 0, 1);
    }
  }
  lp.objective_constant = constant;

  auto add = [&](std::string name, const std::vector<std::pair<int, double>>& terms, double bound) {
    if (bound < 0) out.overloaded_rows.push_back(name);
    lp.add_row(std::move(name), terms, bound);
  };

  // Client compute: sum_t rate (1 - o^c) w <= beta^c, rearranged.
  for (int c = 0; c < C; ++c) {
    std::vector<std::pair<int, double>> terms;
    double fixed = 0;
    for (int t = 0; t < T; ++t) {
      const double load = s.rate(c, t) * s.compute_cost(onload.client_assign[c][t]);
      if (load == 0) continue;
      fixed += load;
      terms.emplace_back(out.to_edge_var[c][t], -load);
    }
    add("client_compute[" + std::to_string(c) + "]", terms, s.topology.clients[c].compute_capacity - fixed);
  }

  // Edge capacity on the edge-served load rate * (o^c - o^{c,e}).
  for (int e = 0; e < E; ++e) {
    const double beta = s.topology.edges[e].compute_capacity;
    std::vector<std::pair<int, double>> terms;
    double bound = beta;
    if (options.capacity != EdgeCapacityModel::kCompute) bound = *s.batch_interval;
    for (int t = 0; t < T; ++t) {
      const int m = onload.edge_assign[e][t];
      if (m == kNullModel) continue;
      double per_job = 0;
      switch (options.capacity) {
        case EdgeCapacityModel::kCompute:
          per_job = s.compute_cost(m);
          break;
        case EdgeCapacityModel::kSurrogate:
          per_job = s.setup_cost(m, e) * options.surrogate->slope[e][t] +
                    s.compute_cost(m) / beta * *s.batch_interval;
          bound -= s.setup_cost(m, e) * options.surrogate->intercept[e][t];
          break;
        case EdgeCapacityModel::kFixedIndicator:
          per_job = s.compute_cost(m) / beta * *s.batch_interval;
          if ((*options.launched)[e][t]) bound -= s.setup_cost(m, e);
          break;
      }
      if (per_job == 0) continue;
      for (int c : s.topology.clients_of(e)) {
        const double r = s.rate(c, t);
        if (r == 0) continue;
        terms.emplace_back(out.to_edge_var[c][t], r * per_job);
        terms.emplace_back(out.to_cloud_var[c][t], -r * per_job);
      }
    }
    add((options.capacity == EdgeCapacityModel::kCompute ? "edge_compute[" : "edge_latency[") +
            std::to_string(e) + "]",
        terms, bound);
  }

  // Tasks outside the launch set carry no edge-served load.
  if (options.capacity == EdgeCapacityModel::kFixedIndicator) {
    for (int c = 0; c < C; ++c) {
      const int e = s.edge_of(c);
      for (int t = 0; t < T; ++t) {
        if ((*options.launched)[e][t] || onload.edge_assign[e][t] == kNullModel) continue;
        add(tag("unlaunched", c, t), {{out.to_edge_var[c][t], 1.0}, {out.to_cloud_var[c][t], -1.0}}, 0.0);
      }
    }
  }

  for (int e = 0; e < E; ++e) {
    std::vector<std::pair<int, double>> terms;
    for (int c : s.topology.clients_of(e)) {
      for (int t = 0; t < T; ++t) {
        const double bytes = s.rate(c, t) * s.tasks[t].input_bytes;
        if (bytes != 0) terms.emplace_back(out.to_edge_var[c][t], bytes);
      }
    }
    add("edge_uplink[" + std::to_string(e) + "]", terms, s.topology.edge_uplink[e]);
  }

  {
    std::vector<std::pair<int, double>> terms;
    for (int c = 0; c < C; ++c) {
      for (int t = 0; t < T; ++t) {
        const double bytes = s.rate(c, t) * s.tasks[t].input_bytes;
        if (bytes != 0) terms.emplace_back(out.to_cloud_var[c][t], bytes);
      }
    }
    add("cloud_uplink", terms, s.topology.cloud_uplink);
  }

  for (int c = 0; c < C; ++c) {
    for (int t = 0; t < T; ++t) {
      add(tag("hierarchy", c, t), {{out.to_cloud_var[c][t], 1.0}, {out.to_edge_var[c][t], -1.0}}, 0.0);
    }
  }
  return out;
}

Offloading extract_offloading(const Scenario& s, const OffloadingLp& built, const LpSolution& sol) {
  if (sol.status != LpStatus::kOptimal) throw std::logic_error("offloading LP has no optimal solution");
  Offloading o = Offloading::zeros(s);
  for (int c = 0; c < s.num_clients(); ++c) {
    for (int t = 0; t < s.num_tasks(); ++t) {
      const double oc = std::clamp(sol.primal[built.to_edge_var[c][t]], 0.0, 1.0);
      const double oce = std::clamp(sol.primal[built.to_cloud_var[c][t]], 0.0, oc);
      o.to_edge[c][t] = oc - oce < 1e-12 ? oce : oc;
      o.to_cloud[c][t] = oce;
    }
  }
  return o;
}

OffloadingResult solve_offloading(const Scenario& s, const Onloading& onload,
                                  const OffloadingLpOptions& options) {
  const OffloadingLp built = build_offloading_lp(s, onload, options);
  const LpSolution sol = solve_lp(built.lp);
  OffloadingResult out;
  out.status = sol.status;
  out.iterations = sol.iterations;
  if (sol.status == LpStatus::kOptimal) {
    out.offload = extract_offloading(s, built, sol);
    out.objective = sol.objective;
  }
  return out;
}

}  // namespace hio
