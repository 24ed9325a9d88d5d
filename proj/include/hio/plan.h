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

#ifndef HIO_PLAN_H_
#define HIO_PLAN_H_

#include <vector>

#include "hio/scenario.h"

namespace hio {

enum class NodeKind { kClient, kEdge };

struct NodeRef {
  NodeKind kind = NodeKind::kClient;
  int index = 0;
  bool operator==(const NodeRef&) const = default;
};

// Which models each node holds (x) and which model serves each task (z).
struct Onloading {
  std::vector<std::vector<int>> client_models;  // sorted model ids
  std::vector<std::vector<int>> edge_models;
  std::vector<std::vector<int>> client_assign;  // [client][task] -> model or kNullModel
  std::vector<std::vector<int>> edge_assign;    // [edge][task]

  static Onloading empty(const Scenario& s);

  const std::vector<int>& models(NodeRef node) const;
  const std::vector<int>& assign(NodeRef node) const;
  std::vector<int>& models(NodeRef node);
  std::vector<int>& assign(NodeRef node);

  bool operator==(const Onloading&) const = default;
};

// Offloading fractions. to_edge[c][t] is the share of client c's task-t
// queries sent to its edge; to_cloud[c][t] the share forwarded on to the
// cloud, so 0 <= to_cloud <= to_edge <= 1.
struct Offloading {
  std::vector<std::vector<double>> to_edge;
  std::vector<std::vector<double>> to_cloud;

  static Offloading zeros(const Scenario& s);
  bool operator==(const Offloading&) const = default;
};

struct Plan {
  Onloading onload;
  Offloading offload;
  bool operator==(const Plan&) const = default;
};

// All clients then all edges, in index order.
std::vector<NodeRef> all_nodes(const Scenario& s);

}  // namespace hio

#endif  // HIO_PLAN_H_
