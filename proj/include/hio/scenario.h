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

#ifndef HIO_SCENARIO_H_
#define HIO_SCENARIO_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hio {

// Raised when a scenario or plan file cannot be parsed.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a structurally valid input violates a model invariant.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Placeholder assignment for a task with no usable onloaded model. It has
// zero memory, zero compute and zero accuracy on every task.
inline constexpr int kNullModel = -1;

enum class Mode { kPlain, kBatching };

const char* mode_name(Mode mode);
Mode parse_mode(const std::string& name);

struct ModelProfile {
  int id = 0;
  double memory_bytes = 0;         // footprint at an edge server
  double client_memory_bytes = 0;  // footprint when cached on a client
  double compute_per_query = 0;    // FLOPs per query
  std::vector<double> setup_cost;  // per-edge batch launch cost (s); may be empty
  std::vector<int> supported_tasks;

  bool supports(int task) const;
  bool operator==(const ModelProfile&) const = default;
};

struct TaskProfile {
  int id = 0;
  double input_bytes = 0;
  bool operator==(const TaskProfile&) const = default;
};

struct NodeBudget {
  double memory_bytes = 0;
  double compute_capacity = 0;  // FLOPs per second
  bool operator==(const NodeBudget&) const = default;
};

struct Topology {
  std::vector<NodeBudget> clients;
  std::vector<NodeBudget> edges;
  std::vector<int> assignment;     // client -> edge
  std::vector<double> edge_uplink; // bytes per second, client->edge, per edge
  double cloud_uplink = 0;         // bytes per second, shared edge->cloud

  std::vector<int> clients_of(int edge) const;
  bool operator==(const Topology&) const = default;
};

struct AccuracyTable {
  // per_edge[e][m][t]: accuracy of model m on task t under edge e's data.
  std::vector<std::vector<std::vector<double>>> per_edge;
  std::vector<double> cloud;   // per task
  double client_factor = 0.9;  // degradation of client-side execution

  bool operator==(const AccuracyTable&) const = default;
};

struct Workload {
  std::vector<std::vector<double>> rates;  // [client][task], jobs per second

  double total() const;
  bool operator==(const Workload&) const = default;
};

// A fully validated, immutable problem instance.
struct Scenario {
  std::string name;
  Mode mode = Mode::kPlain;
  Topology topology;
  std::vector<ModelProfile> models;
  std::vector<TaskProfile> tasks;
  AccuracyTable accuracy;
  Workload workload;
  std::optional<double> batch_interval;  // seconds

  int num_clients() const { return static_cast<int>(topology.clients.size()); }
  int num_edges() const { return static_cast<int>(topology.edges.size()); }
  int num_models() const { return static_cast<int>(models.size()); }
  int num_tasks() const { return static_cast<int>(tasks.size()); }

  int edge_of(int client) const { return topology.assignment[client]; }
  double total_rate() const { return workload.total(); }
  double rate(int client, int task) const { return workload.rates[client][task]; }
  // Normalized demand rate(c, t) / total_rate().
  double share(int client, int task) const;

  // Accuracy lookups; the null model yields 0.
  double edge_accuracy(int edge, int model, int task) const;
  double client_accuracy(int client, int model, int task) const;

  double compute_cost(int model) const;
  double client_memory(int model) const;
  double edge_memory(int model) const;
  double setup_cost(int model, int edge) const;
  bool has_batching_parameters() const;

  // Throws ValidationError naming the first violated invariant.
  void validate() const;

  bool operator==(const Scenario&) const = default;
};

}  // namespace hio

#endif  // HIO_SCENARIO_H_
