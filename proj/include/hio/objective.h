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

#ifndef HIO_OBJECTIVE_H_
#define HIO_OBJECTIVE_H_

#include <span>
#include <vector>

#include "hio/plan.h"
#include "hio/scenario.h"

namespace hio {

enum class ObjectiveKind { kAccuracy, kLoss };

const char* objective_kind_name(ObjectiveKind kind);

// Load-weighted accuracy (or loss) split by the tier that serves each client's
// queries. Edge and cloud terms are indexed by client (the edge is the
// client's assigned one).
struct ObjectiveBreakdown {
  ObjectiveKind kind = ObjectiveKind::kAccuracy;
  double total = 0;
  std::vector<double> client_terms;
  std::vector<double> edge_terms;
  std::vector<double> cloud_terms;
  std::vector<std::vector<double>> edge_load;             // [edge][task], jobs/s
  std::vector<std::vector<double>> edge_load_normalized;  // divided by total rate
};

// Pairwise (cascade) summation.
double pairwise_sum(std::span<const double> values);

ObjectiveBreakdown eval_objective(const Scenario& s, const Plan& p);
// Same decomposition with every accuracy a replaced by 1 - a; total = 1 - F.
ObjectiveBreakdown eval_loss_objective(const Scenario& s, const Plan& p);

// Scalar shortcut for eval_objective(s, {onload, offload}).total.
double objective_value(const Scenario& s, const Onloading& onload, const Offloading& offload);

// lambda_t^e = sum over clients c of edge e of rate(c,t) * (to_edge - to_cloud).
std::vector<double> effective_edge_load(const Scenario& s, const Offloading& o, int edge);
std::vector<double> effective_edge_load(const Scenario& s, const Plan& p, int edge);

}  // namespace hio

#endif  // HIO_OBJECTIVE_H_
