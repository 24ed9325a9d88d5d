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

#include "hio/objective.h"

#include <stdexcept>

#include "hio/constraints.h"

namespace hio {
namespace {

constexpr size_t kPairwiseBlock = 8;

ObjectiveBreakdown evaluate(const Scenario& s, const Plan& p, ObjectiveKind kind) {
  check_plan_shape(s, p);
  const int C = s.num_clients(), T = s.num_tasks();
  const double total_rate = s.total_rate();
  auto value = [&](double accuracy) {
    return kind == ObjectiveKind::kAccuracy ? accuracy : 1.0 - accuracy;
  };

  ObjectiveBreakdown out;
  out.kind = kind;
  out.client_terms.assign(C, 0.0);
  out.edge_terms.assign(C, 0.0);
  out.cloud_terms.assign(C, 0.0);

  std::vector<double> client_parts, edge_parts, cloud_parts;
  for (int c = 0; c < C; ++c) {
    const int e = s.edge_of(c);
    client_parts.clear();
    edge_parts.clear();
    cloud_parts.clear();
    for (int t = 0; t < T; ++t) {
      if (s.rate(c, t) == 0) continue;
      const double share = s.rate(c, t) / total_rate;
      const double oc = p.offload.to_edge[c][t];
      const double oce = p.offload.to_cloud[c][t];
      const double acc_client = s.client_accuracy(c, p.onload.client_assign[c][t], t);
      const double acc_edge = s.edge_accuracy(e, p.onload.edge_assign[e][t], t);
      client_parts.push_back(share * (1.0 - oc) * value(acc_client));
      edge_parts.push_back(share * (oc - oce) * value(acc_edge));
      cloud_parts.push_back(share * oce * value(s.accuracy.cloud[t]));
    }
    out.client_terms[c] = pairwise_sum(client_parts);
    out.edge_terms[c] = pairwise_sum(edge_parts);
    out.cloud_terms[c] = pairwise_sum(cloud_parts);
  }

  std::vector<double> all;
  all.reserve(3 * C);
  all.insert(all.end(), out.client_terms.begin(), out.client_terms.end());
  all.insert(all.end(), out.edge_terms.begin(), out.edge_terms.end());
  all.insert(all.end(), out.cloud_terms.begin(), out.cloud_terms.end());
  out.total = pairwise_sum(all);

  for (int e = 0; e < s.num_edges(); ++e) {
    out.edge_load.push_back(effective_edge_load(s, p.offload, e));
    std::vector<double> normalized = out.edge_load.back();
    for (double& v : normalized) v /= total_rate;
    out.edge_load_normalized.push_back(std::move(normalized));
  }
  return out;
}

}  // namespace

const char* objective_kind_name(ObjectiveKind kind) {
  return kind == ObjectiveKind::kLoss ? "loss" : "acc";
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= kPairwiseBlock) {
    double sum = 0;
    for (double v : values) sum += v;
    return sum;
  }
  const size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

ObjectiveBreakdown eval_objective(const Scenario& s, const Plan& p) {
  return evaluate(s, p, ObjectiveKind::kAccuracy);
}

ObjectiveBreakdown eval_loss_objective(const Scenario& s, const Plan& p) {
  return evaluate(s, p, ObjectiveKind::kLoss);
}

double objective_value(const Scenario& s, const Onloading& onload, const Offloading& offload) {
  const int C = s.num_clients(), T = s.num_tasks();
  const double total_rate = s.total_rate();
  std::vector<double> terms(C, 0.0);
  std::vector<double> parts;
  for (int c = 0; c < C; ++c) {
    const int e = s.edge_of(c);
    parts.clear();
    for (int t = 0; t < T; ++t) {
      if (s.rate(c, t) == 0) continue;
      const double oc = offload.to_edge[c][t], oce = offload.to_cloud[c][t];
      parts.push_back(s.rate(c, t) / total_rate *
                      ((1.0 - oc) * s.client_accuracy(c, onload.client_assign[c][t], t) +
                       (oc - oce) * s.edge_accuracy(e, onload.edge_assign[e][t], t) +
                       oce * s.accuracy.cloud[t]));
    }
    terms[c] = pairwise_sum(parts);
  }
  return pairwise_sum(terms);
}

std::vector<double> effective_edge_load(const Scenario& s, const Offloading& o, int edge) {
  if (edge < 0 || edge >= s.num_edges()) throw std::out_of_range("unknown edge id " + std::to_string(edge));
  std::vector<double> load(s.num_tasks(), 0.0);
  for (int c = 0; c < s.num_clients(); ++c) {
    if (s.edge_of(c) != edge) continue;
    for (int t = 0; t < s.num_tasks(); ++t) {
      load[t] += s.rate(c, t) * (o.to_edge[c][t] - o.to_cloud[c][t]);
    }
  }
  return load;
}

std::vector<double> effective_edge_load(const Scenario& s, const Plan& p, int edge) {
  return effective_edge_load(s, p.offload, edge);
}

}  // namespace hio
