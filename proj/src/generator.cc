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

#include "hio/generator.h"

#include <algorithm>
#include <stdexcept>

#include "hio/rng.h"

namespace hio {
namespace {

constexpr double kMB = 1e6;
constexpr double kGB = 1e9;
constexpr double kGFLOP = 1e9;
constexpr double kTFLOP = 1e12;

// Independent streams so that, e.g., a different workload seed layout never
// shifts the accuracy tables.
enum Stream : std::uint64_t { kWorkloadStream = 1, kAccuracyStream = 2, kModelStream = 3 };

std::vector<NodeBudget> budgets(std::initializer_list<double> memory, std::initializer_list<double> compute) {
  std::vector<NodeBudget> out;
  auto m = memory.begin();
  for (double c : compute) out.push_back({*m++, c});
  return out;
}

DeviceProfile shared_backbone(std::string name, int tasks, double memory, double compute, double input) {
  DeviceProfile p;
  p.name = std::move(name);
  p.num_tasks = tasks;
  p.num_models = 8;
  p.client_budgets = budgets({24 * kMB, 24 * kMB, 48 * kMB, 48 * kMB, 96 * kMB},
                             {0.5e3 * kGFLOP, 1.0e3 * kGFLOP, 1.0e3 * kGFLOP, 2.0e3 * kGFLOP, 2.0e3 * kGFLOP});
  p.edge_budgets = budgets({512 * kMB, 512 * kMB, 1024 * kMB}, {10.0e3 * kGFLOP, 12.0e3 * kGFLOP, 15.0e3 * kGFLOP});
  // INT8 client copies at a quarter of the memory.
  p.model_memory = {memory};
  p.model_client_memory = {0.25 * memory};
  p.model_compute = {compute};
  p.input_bytes = input;
  return p;
}

template <typename T>
const T& cycled(const std::vector<T>& v, size_t i) {
  return v[i % v.size()];
}

}  // namespace

std::vector<std::string> device_preset_names() { return {"taskonomy", "domainnet", "cityscape", "desk", "runtime"}; }

DeviceProfile device_preset(const std::string& name) {
  if (name == "taskonomy") {
    DeviceProfile p = shared_backbone(name, 5, 73.66 * kMB, 9.17 * kGFLOP, 0.79 * kMB);
    p.objective = ObjectiveKind::kLoss;
    return p;
  }
  if (name == "domainnet") return shared_backbone(name, 6, 83.15 * kMB, 3.68 * kGFLOP, 0.60 * kMB);
  if (name == "cityscape") {
    DeviceProfile p;
    p.name = name;
    p.num_tasks = 3;
    p.num_models = 7;
    p.client_budgets = budgets({1.0 * kGB, 2.0 * kGB, 2.0 * kGB, 3.0 * kGB, 4.0 * kGB},
                               {10 * kTFLOP, 10 * kTFLOP, 15 * kTFLOP, 15 * kTFLOP, 20 * kTFLOP});
    p.edge_budgets = budgets({5.0 * kGB, 6.0 * kGB, 6.0 * kGB}, {30 * kTFLOP, 40 * kTFLOP, 50 * kTFLOP});
    p.model_memory = {1.10 * kGB, 1.10 * kGB, 1.14 * kGB, 1.18 * kGB, 1.22 * kGB, 1.22 * kGB, 1.30 * kGB};
    p.model_client_memory = {0.80 * kGB, 0.80 * kGB, 0.84 * kGB, 0.88 * kGB, 0.91 * kGB, 0.91 * kGB, 0.99 * kGB};
    p.model_compute = {1.13 * kTFLOP, 1.13 * kTFLOP, 0.73 * kTFLOP, 1.84 * kTFLOP,
                       1.44 * kTFLOP, 1.44 * kTFLOP, 2.16 * kTFLOP};
    p.model_tasks = {{0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}, {0, 1, 2}};
    p.input_bytes = 25.17 * kMB;
    p.objective = ObjectiveKind::kLoss;
    p.default_rate = 100;
    return p;
  }
  if (name == "desk" || name == "runtime") {
    // Three clients on one edge with a small random library: small enough for
    // the exhaustive oracle. "runtime" grows the library to seven models, which
    // puts the oracle at roughly 10^3 to 10^5 onloading combinations.
    DeviceProfile p;
    p.name = name;
    p.num_tasks = 3;
    p.num_models = name == "desk" ? 5 : 7;
    p.clients_per_edge = 3;
    p.num_edges = 1;
    p.client_budgets = budgets({24 * kMB, 36 * kMB, 48 * kMB},
                               {0.4e3 * kGFLOP, 0.8e3 * kGFLOP, 1.2e3 * kGFLOP});
    p.edge_budgets = budgets({200 * kMB}, {2.0e3 * kGFLOP});
    p.memory_lo = 40 * kMB;
    p.memory_hi = 120 * kMB;
    p.compute_lo = 2 * kGFLOP;
    p.compute_hi = 10 * kGFLOP;
    p.input_bytes = 0.5 * kMB;
    p.default_rate = 300;
    return p;
  }
  throw std::invalid_argument("unknown preset: " + name);
}

Scenario generate_scenario(const GeneratorConfig& cfg) {
  DeviceProfile profile = cfg.preset == "custom" ? (cfg.custom ? *cfg.custom : throw std::invalid_argument(
                                                                                    "custom preset needs a profile"))
                                                 : device_preset(cfg.preset);
  if (cfg.num_models > 0) profile.num_models = cfg.num_models;
  if (cfg.clients_per_edge > 0) profile.clients_per_edge = cfg.clients_per_edge;
  if (cfg.num_edges > 0) profile.num_edges = cfg.num_edges;
  if (!(cfg.client_concentration > 0) || !(cfg.task_concentration > 0))
    throw std::invalid_argument("Dirichlet concentrations must be positive");
  if (cfg.edge_uplink_scale < 0 || cfg.cloud_uplink_scale < 0 || cfg.compute_scale < 0)
    throw std::invalid_argument("scalers must be non-negative");
  if (!profile.model_tasks.empty() && static_cast<int>(profile.model_tasks.size()) != profile.num_models)
    throw std::invalid_argument("fixed supported-task sets need one entry per model");

  const int E = profile.num_edges, C = E * profile.clients_per_edge, T = profile.num_tasks, M = profile.num_models;
  const double total_rate = cfg.total_rate.value_or(profile.default_rate);

  Scenario s;
  s.name = profile.name + "-seed" + std::to_string(cfg.seed);
  s.mode = cfg.mode;
  s.accuracy.client_factor = cfg.client_factor;

  for (int c = 0; c < C; ++c) {
    NodeBudget b = cycled(profile.client_budgets, c % profile.clients_per_edge);
    b.compute_capacity *= cfg.compute_scale;
    s.topology.clients.push_back(b);
    s.topology.assignment.push_back(c / profile.clients_per_edge);
  }
  for (int e = 0; e < E; ++e) s.topology.edges.push_back(cycled(profile.edge_budgets, e));
  for (int t = 0; t < T; ++t) s.tasks.push_back({t, profile.input_bytes});

  CounterRng model_rng(cfg.seed, kModelStream);
  CounterRng accuracy_rng(cfg.seed, kAccuracyStream);
  for (int m = 0; m < M; ++m) {
    ModelProfile model;
    model.id = m;
    if (!profile.model_memory.empty()) {
      model.memory_bytes = cycled(profile.model_memory, m);
      model.client_memory_bytes = cycled(profile.model_client_memory, m);
      model.compute_per_query = cycled(profile.model_compute, m);
    } else {
      model.memory_bytes = model_rng.uniform(profile.memory_lo, profile.memory_hi);
      model.client_memory_bytes = profile.client_memory_ratio * model.memory_bytes;
      model.compute_per_query = model_rng.uniform(profile.compute_lo, profile.compute_hi);
    }
    if (!profile.model_tasks.empty()) {
      model.supported_tasks = profile.model_tasks[m];
    } else {
      const int k = 1 + static_cast<int>(accuracy_rng.below(std::min(3, T)));
      std::vector<int> order = accuracy_rng.permutation(T);
      model.supported_tasks.assign(order.begin(), order.begin() + k);
      std::sort(model.supported_tasks.begin(), model.supported_tasks.end());
    }
    s.models.push_back(std::move(model));
  }

  // Base accuracy per (model, task), then per-edge jitter.
  std::vector<std::vector<double>> base(M, std::vector<double>(T, 0.0));
  for (int m = 0; m < M; ++m) {
    const double penalty = 0.1 * (static_cast<double>(s.models[m].supported_tasks.size()) - 1);
    for (int t : s.models[m].supported_tasks) base[m][t] = accuracy_rng.uniform(0.6, 0.95) - penalty;
  }
  s.accuracy.per_edge.assign(E, std::vector<std::vector<double>>(M, std::vector<double>(T, 0.0)));
  for (int e = 0; e < E; ++e) {
    for (int m = 0; m < M; ++m) {
      for (int t : s.models[m].supported_tasks) {
        s.accuracy.per_edge[e][m][t] = std::clamp(base[m][t] + accuracy_rng.uniform(-0.03, 0.03), 0.0, 1.0);
      }
    }
  }
  s.accuracy.cloud.assign(T, 1.0);

  CounterRng workload_rng(cfg.seed, kWorkloadStream);
  const std::vector<double> client_share = workload_rng.dirichlet(cfg.client_concentration, C);
  s.workload.rates.assign(C, std::vector<double>(T, 0.0));
  for (int c = 0; c < C; ++c) {
    const std::vector<double> task_share = workload_rng.dirichlet(cfg.task_concentration, T);
    for (int t = 0; t < T; ++t) s.workload.rates[c][t] = total_rate * client_share[c] * task_share[t];
  }

  s.topology.edge_uplink.assign(E, 0.0);
  double all_bytes = 0;
  for (int c = 0; c < C; ++c) {
    for (int t = 0; t < T; ++t) {
      const double bytes = s.workload.rates[c][t] * s.tasks[t].input_bytes;
      s.topology.edge_uplink[s.edge_of(c)] += bytes;
      all_bytes += bytes;
    }
  }
  for (double& k : s.topology.edge_uplink) k *= cfg.edge_uplink_scale;
  s.topology.cloud_uplink = cfg.cloud_uplink_scale * all_bytes;

  if (cfg.mode == Mode::kBatching) {
    s.batch_interval = cfg.batch_interval;
    for (auto& model : s.models) {
      for (int e = 0; e < E; ++e)
        model.setup_cost.push_back(cfg.setup_queries * model.compute_per_query / s.topology.edges[e].compute_capacity);
    }
  }
  s.validate();
  return s;
}

Scenario motivating_preset(const MotivatingOptions& o) {
  if (!(o.task_a_share > 0 && o.task_a_share < 1)) throw std::invalid_argument("p_A must lie in (0, 1)");
  constexpr int kClients = 5;
  constexpr double kModelMemory = 100 * kMB;
  constexpr double kCompute = 1 * kGFLOP;
  constexpr double kInput = 1 * kMB;

  Scenario s;
  s.name = "motivating";
  s.mode = o.batching ? Mode::kBatching : Mode::kPlain;
  s.accuracy.client_factor = 0.9;
  s.tasks = {{0, kInput}, {1, kInput}};
  const double rows[3][2] = {{0.9, 0.1}, {0.1, 0.9}, {0.6, 0.6}};
  for (int m = 0; m < 3; ++m) {
    ModelProfile model;
    model.id = m;
    model.memory_bytes = kModelMemory;
    model.client_memory_bytes = 0.25 * kModelMemory;
    model.compute_per_query = kCompute;
    model.supported_tasks = {0, 1};
    if (o.batching) model.setup_cost = {m == 0 ? o.setup_cost_a : o.setup_cost};
    s.models.push_back(std::move(model));
  }
  s.accuracy.per_edge = {{{rows[0][0], rows[0][1]}, {rows[1][0], rows[1][1]}, {rows[2][0], rows[2][1]}}};
  s.accuracy.cloud = {1.0, 1.0};

  s.workload.rates.assign(kClients, {o.client_rate * o.task_a_share, o.client_rate * (1 - o.task_a_share)});
  if (o.hot_client) s.workload.rates[0] = {0.3 * o.client_rate, 0.7 * o.client_rate};

  double demand = 0;
  for (int c = 0; c < kClients; ++c) {
    const double load = s.workload.rates[c][0] + s.workload.rates[c][1];
    demand += load * kInput;
    // Each node holds at most one model.
    s.topology.clients.push_back({0.25 * kModelMemory * 1.5, o.client_compute_scale * load * kCompute});
    s.topology.assignment.push_back(0);
  }
  s.topology.edges.push_back({kModelMemory * 1.5, o.edge_compute_scale * kClients * o.client_rate * kCompute});
  s.topology.edge_uplink = {o.uplink_scale * demand};
  s.topology.cloud_uplink = 0;
  if (o.batching) s.batch_interval = o.batch_interval;
  s.validate();
  return s;
}

}  // namespace hio
