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

#ifndef HIO_OFFLOAD_LP_H_
#define HIO_OFFLOAD_LP_H_

#include <optional>
#include <string>
#include <vector>

#include "hio/batching.h"
#include "hio/lp.h"
#include "hio/plan.h"
#include "hio/scenario.h"

namespace hio {

// How the edge-side capacity row is written.
enum class EdgeCapacityModel {
  kCompute,         // FLOPs of the edge-served load <= beta^e
  kSurrogate,       // batching latency with the launch indicator linearized
  kFixedIndicator,  // batching latency with a fixed set of launched tasks
};

struct OffloadingLpOptions {
  EdgeCapacityModel capacity = EdgeCapacityModel::kCompute;
  const SurrogateCoefficients* surrogate = nullptr;             // kSurrogate
  const std::vector<std::vector<bool>>* launched = nullptr;     // kFixedIndicator, [edge][task]
};

// The offloading subproblem for a fixed onloading, in solve_lp form.
struct OffloadingLp {
  LinearProgram lp;
  std::vector<std::vector<int>> to_edge_var;   // [client][task] -> variable
  std::vector<std::vector<int>> to_cloud_var;  // [client][task] -> variable
  // Rows whose right-hand side is negative: the fixed (o = 0) usage alone
  // exceeds the budget, so offloading must rise to restore feasibility.
  std::vector<std::string> overloaded_rows;
};

OffloadingLp build_offloading_lp(const Scenario& s, const Onloading& onload,
                                 const OffloadingLpOptions& options = {});

// Reads the offloading fractions from an optimal solution, clipping rounding
// noise so that 0 <= to_cloud <= to_edge <= 1 holds exactly.
Offloading extract_offloading(const Scenario& s, const OffloadingLp& built, const LpSolution& sol);

struct OffloadingResult {
  LpStatus status = LpStatus::kInfeasible;
  Offloading offload;
  double objective = 0;  // LP optimum including the constant term
  int iterations = 0;
};

OffloadingResult solve_offloading(const Scenario& s, const Onloading& onload,
                                  const OffloadingLpOptions& options = {});

}  // namespace hio

#endif  // HIO_OFFLOAD_LP_H_
