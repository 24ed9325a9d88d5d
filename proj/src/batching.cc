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

#include "hio/batching.h"

#include <algorithm>
#include <stdexcept>

#include "hio/objective.h"

namespace hio {

SurrogateCoefficients linearize_setup_indicator(const Scenario& s, const Offloading& offload,
                                                double smoothing_scale) {
  const int E = s.num_edges(), T = s.num_tasks();
  std::vector<std::vector<double>> loads;
  std::vector<double> positive;
  for (int e = 0; e < E; ++e) {
    loads.push_back(effective_edge_load(s, offload, e));
    for (double v : loads.back()) {
      if (v > 0) positive.push_back(v);
    }
  }
  double reference;
  if (positive.empty()) {
    reference = s.total_rate() / (E * T);
  } else {
    const size_t n = positive.size();
    std::sort(positive.begin(), positive.end());
    reference = n % 2 ? positive[n / 2] : 0.5 * (positive[n / 2 - 1] + positive[n / 2]);
  }

  SurrogateCoefficients out;
  out.smoothing = smoothing_scale * reference;
  out.slope.assign(E, std::vector<double>(T, 0.0));
  out.intercept.assign(E, std::vector<double>(T, 0.0));
  const double eps = out.smoothing;
  for (int e = 0; e < E; ++e) {
    for (int t = 0; t < T; ++t) {
      const double x0 = std::max(0.0, loads[e][t]);
      const double g = x0 / (x0 + eps);
      const double slope = eps / ((x0 + eps) * (x0 + eps));
      out.slope[e][t] = slope;
      out.intercept[e][t] = g - slope * x0;
    }
  }
  return out;
}

BatchLatency edge_batch_latency(const Scenario& s, const Onloading& onload,
                                const std::vector<double>& edge_load, int edge) {
  if (!s.batch_interval) throw std::logic_error("batching parameters missing");
  BatchLatency out;
  out.interval = *s.batch_interval;
  out.per_task.assign(s.num_tasks(), 0.0);
  const double beta = s.topology.edges[edge].compute_capacity;
  for (int t = 0; t < s.num_tasks(); ++t) {
    const int m = onload.edge_assign[edge][t];
    if (m == kNullModel) continue;
    const double load = edge_load[t];
    const double launch = load > kNegligibleLoadShare * s.total_rate() ? s.setup_cost(m, edge) : 0.0;
    out.per_task[t] = launch + s.compute_cost(m) / beta * load * out.interval;
    out.total += out.per_task[t];
  }
  return out;
}

BatchLatency batch_latency(const Scenario& s, const Plan& p, int edge) {
  if (s.mode != Mode::kBatching) throw std::logic_error("batch_latency needs a batching scenario");
  return edge_batch_latency(s, p.onload, effective_edge_load(s, p.offload, edge), edge);
}

}  // namespace hio
