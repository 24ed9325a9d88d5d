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

#ifndef HIO_BATCHING_H_
#define HIO_BATCHING_H_

#include <vector>

#include "hio/plan.h"
#include "hio/scenario.h"

namespace hio {

// Affine stand-in slope * lambda + intercept for the launch indicator
// 1{lambda > 0}, per edge and task. It is the tangent at the current load of
// g(lambda) = lambda / (lambda + smoothing).
struct SurrogateCoefficients {
  std::vector<std::vector<double>> slope;      // [edge][task], >= 0
  std::vector<std::vector<double>> intercept;  // [edge][task]
  double smoothing = 0;

  double value(int edge, int task, double load) const {
    return slope[edge][task] * load + intercept[edge][task];
  }
};

inline constexpr double kDefaultSmoothingScale = 1e-3;

// Edge loads at or below this share of the total rate count as no traffic
// for the launch indicator (absorbs rounding in to_edge - to_cloud).
inline constexpr double kNegligibleLoadShare = 1e-12;

// Linearizes at the effective edge loads implied by `offload`. The smoothing
// parameter is scale * median positive load (scale * mean demand per
// edge-task pair when no load is positive).
SurrogateCoefficients linearize_setup_indicator(const Scenario& s, const Offloading& offload,
                                                double smoothing_scale = kDefaultSmoothingScale);

struct BatchLatency {
  std::vector<double> per_task;  // seconds
  double total = 0;
  double interval = 0;
};

// Per-task batch processing time nu*1{lambda>0} + (w/beta)*lambda*T_b on the
// task's assigned edge model. Throws std::logic_error on plain scenarios.
BatchLatency batch_latency(const Scenario& s, const Plan& p, int edge);

// Same computation without the mode check; the interval must be present.
BatchLatency edge_batch_latency(const Scenario& s, const Onloading& onload,
                                const std::vector<double>& edge_load, int edge);

}  // namespace hio

#endif  // HIO_BATCHING_H_
