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

#ifndef HIO_GENERATOR_H_
#define HIO_GENERATOR_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hio/objective.h"
#include "hio/scenario.h"

namespace hio {

// Hardware and model statistics for a family of generated scenarios.
struct DeviceProfile {
  std::string name;
  int num_tasks = 0;
  int num_models = 0;
  int clients_per_edge = 10;
  int num_edges = 3;
  // Budgets are cycled over clients (in index order) and edges.
  std::vector<NodeBudget> client_budgets;
  std::vector<NodeBudget> edge_budgets;
  // Per model; a list shorter than num_models is cycled. Empty ranges below
  // switch to random draws instead.
  std::vector<double> model_memory;         // bytes at an edge
  std::vector<double> model_client_memory;  // bytes on a client
  std::vector<double> model_compute;        // FLOPs per query
  std::vector<std::vector<int>> model_tasks;  // fixed supported sets; empty = random
  // Random model statistics, used when model_memory is empty: uniform in
  // [lo, hi]; client memory = client_memory_ratio * edge memory.
  double memory_lo = 0, memory_hi = 0;
  double compute_lo = 0, compute_hi = 0;
  double client_memory_ratio = 0.25;
  double input_bytes = 0;  // per query, all tasks
  ObjectiveKind objective = ObjectiveKind::kAccuracy;
  double default_rate = 2000;
};

// taskonomy, domainnet, cityscape, desk, runtime. Throws
// std::invalid_argument naming the preset otherwise.
DeviceProfile device_preset(const std::string& name);
std::vector<std::string> device_preset_names();

struct GeneratorConfig {
  std::string preset = "taskonomy";
  std::optional<DeviceProfile> custom;  // used when preset == "custom"
  std::optional<double> total_rate;     // default: the profile's
  double client_concentration = 0.5;
  double task_concentration = 0.5;
  double edge_uplink_scale = 0.5;   // chi_kappa^e
  double cloud_uplink_scale = 0.25; // chi_kappa^s
  double compute_scale = 1.0;       // chi_beta, applied to client compute
  double client_factor = 0.9;
  std::uint64_t seed = 0;
  // Overrides of the profile's counts when > 0.
  int num_models = 0;
  int clients_per_edge = 0;
  int num_edges = 0;
  // Batching; setup cost of model m on edge e = setup_queries * w_m / beta^e.
  Mode mode = Mode::kPlain;
  double batch_interval = 0.5;
  double setup_queries = 10;
};

// Workload: client totals ~ total_rate * Dirichlet(p_client), each client's
// task split ~ Dirichlet(p_task). Uplinks: kappa^e = chi^e * bytes demanded
// at e; kappa^s = chi^s * bytes demanded system-wide (the full-offload
// reference point). Accuracies are synthetic: each model supports 1-3
// random tasks at Uniform[0.6, 0.95] - 0.1 per extra supported task, with
// +-0.03 uniform jitter per edge; the cloud scores 1.0. Validated.
Scenario generate_scenario(const GeneratorConfig& cfg);

// The two-task, three-model toy system with one edge and five clients.
struct MotivatingOptions {
  double task_a_share = 0.5;  // p_A
  bool hot_client = false;    // client 0 sends 70% of its queries as task B
  double setup_cost_a = 0.0;  // nu of m(A) at the edge, seconds
  double setup_cost = 0.0;    // nu of m(B) and m(AB)
  double client_rate = 10;    // jobs/s per client
  double uplink_scale = 0.5;  // kappa^e as a share of demanded bytes
  double client_compute_scale = 0.2;  // beta^c over the client's full load
  double edge_compute_scale = 1.0;    // beta^e over the system's full load
  bool batching = true;
  double batch_interval = 0.5;
};

// m(A) = (0.9, 0.1), m(B) = (0.1, 0.9), m(AB) = (0.6, 0.6) at the edge;
// clients run compressed copies at 90% accuracy; every node fits exactly
// one model; two-tier (no cloud uplink).
Scenario motivating_preset(const MotivatingOptions& options);

}  // namespace hio

#endif  // HIO_GENERATOR_H_
