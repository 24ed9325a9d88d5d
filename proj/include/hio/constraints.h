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

#ifndef HIO_CONSTRAINTS_H_
#define HIO_CONSTRAINTS_H_

#include <string>
#include <vector>

#include "hio/plan.h"
#include "hio/scenario.h"

namespace hio {

// Real-valued constraints are feasible when slack >= -kFeasibilityTolerance
// times max(budget, 1).
inline constexpr double kFeasibilityTolerance = 1e-6;

// Signed slack (budget - usage) of every constraint; negative means violated.
struct ConstraintReport {
  std::vector<double> client_memory;
  std::vector<double> edge_memory;
  std::vector<double> client_compute;
  // Edge compute (FLOPs/s) in plain mode, batching latency (s) otherwise.
  std::vector<double> edge_compute;
  std::vector<double> edge_uplink;
  double cloud_uplink = 0;
  // Count of task assignments that point at a model the node does not hold.
  int assignment_violations = 0;
  // min over (c,t) of the consistency margins 0 <= to_cloud <= to_edge <= 1.
  double offloading_consistency = 0;

  // Largest violation, each real constraint divided by max(budget, 1).
  double max_violation() const { return max_violation_; }
  bool feasible(double tol = kFeasibilityTolerance) const;

  double max_violation_ = 0;
};

// Checks every resource (memory, compute or batching latency, uplinks) and
// structural constraint. Throws ValidationError when ids do not resolve.
ConstraintReport validate_plan(const Scenario& s, const Plan& p);

// Throws ValidationError unless plan dimensions and model ids match s.
void check_plan_shape(const Scenario& s, const Plan& p);

}  // namespace hio

#endif  // HIO_CONSTRAINTS_H_
