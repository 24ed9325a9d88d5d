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

#ifndef HIO_TESTS_TEST_SUPPORT_H_
#define HIO_TESTS_TEST_SUPPORT_H_

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "hio/generator.h"
#include "hio/onload.h"
#include "hio/plan.h"
#include "hio/scenario.h"

namespace hio::testing {

inline constexpr double kMB = 1e6;
inline constexpr double kGFLOP = 1e9;

// A hand-built plain scenario: every model supports every task it has a
// nonzero accuracy for. Budgets default to "generous".
struct TinySpec {
  int clients = 1;
  int edges = 1;
  std::vector<std::vector<double>> accuracy;  // [model][task], same at every edge
  std::vector<double> model_memory;           // edge bytes; clients use the same
  std::vector<double> model_compute;          // FLOPs per query
  std::vector<std::vector<double>> rates;     // [client][task]
  double client_memory = 1e12;
  double edge_memory = 1e12;
  double client_compute = 1e18;
  double edge_compute = 1e18;
  double edge_uplink = 1e18;
  double cloud_uplink = 1e18;
  double input_bytes = 1.0;
  double client_factor = 1.0;
};

inline Scenario make_tiny(const TinySpec& spec) {
  Scenario s;
  s.name = "tiny";
  const int M = static_cast<int>(spec.accuracy.size());
  const int T = static_cast<int>(spec.rates.front().size());
  for (int t = 0; t < T; ++t) s.tasks.push_back({t, spec.input_bytes});
  for (int m = 0; m < M; ++m) {
    ModelProfile p;
    p.id = m;
    p.memory_bytes = spec.model_memory.empty() ? 1.0 : spec.model_memory[m];
    p.client_memory_bytes = p.memory_bytes;
    p.compute_per_query = spec.model_compute.empty() ? 1.0 : spec.model_compute[m];
    for (int t = 0; t < T; ++t) {
      if (spec.accuracy[m][t] > 0) p.supported_tasks.push_back(t);
    }
    if (p.supported_tasks.empty()) p.supported_tasks.push_back(0);
    s.models.push_back(p);
  }
  for (int c = 0; c < spec.clients; ++c) {
    s.topology.clients.push_back({spec.client_memory, spec.client_compute});
    s.topology.assignment.push_back(c % spec.edges);
  }
  for (int e = 0; e < spec.edges; ++e) {
    s.topology.edges.push_back({spec.edge_memory, spec.edge_compute});
    s.topology.edge_uplink.push_back(spec.edge_uplink);
    s.accuracy.per_edge.push_back(spec.accuracy);
  }
  s.topology.cloud_uplink = spec.cloud_uplink;
  s.accuracy.cloud.assign(T, 1.0);
  s.accuracy.client_factor = spec.client_factor;
  s.workload.rates = spec.rates;
  s.validate();
  return s;
}

// Small random instance (dense accuracies, mixed budgets) driven by a
// standard-library engine, independent of the repo's own generator.
inline Scenario random_small(std::uint64_t seed, int clients = 2, int edges = 1, int models = 3, int tasks = 2) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  TinySpec spec;
  spec.clients = clients;
  spec.edges = edges;
  spec.accuracy.assign(models, std::vector<double>(tasks, 0.0));
  for (auto& row : spec.accuracy) {
    for (auto& a : row) a = u(gen) < 0.25 ? 0.0 : 0.3 + 0.65 * u(gen);
    bool any = false;
    for (double a : row) any |= a > 0;
    if (!any) row[0] = 0.5;
  }
  for (int m = 0; m < models; ++m) {
    spec.model_memory.push_back((20 + 60 * u(gen)) * kMB);
    spec.model_compute.push_back((1 + 9 * u(gen)) * kGFLOP);
  }
  spec.rates.assign(clients, std::vector<double>(tasks, 0.0));
  double demand = 0;
  for (auto& row : spec.rates) {
    for (auto& r : row) {
      r = 1 + 20 * u(gen);
      demand += r;
    }
  }
  spec.input_bytes = 0.5 * kMB;
  spec.client_memory = (30 + 80 * u(gen)) * kMB;
  spec.edge_memory = (80 + 120 * u(gen)) * kMB;
  spec.client_compute = (20 + 60 * u(gen)) * kGFLOP;
  spec.edge_compute = (100 + 300 * u(gen)) * kGFLOP;
  spec.edge_uplink = (0.2 + 0.6 * u(gen)) * demand * spec.input_bytes / edges;
  spec.cloud_uplink = 0.25 * demand * spec.input_bytes;
  spec.client_factor = 0.9;
  return make_tiny(spec);
}

// A node problem whose weights are k/64 and accuracies j/1024, so every
// coverage value is an exact double; the integer numerators ride along for
// an int64 reference evaluation.
struct DyadicProblem {
  NodeProblem problem;
  std::vector<std::int64_t> weight_num;               // over 64
  std::vector<std::vector<std::int64_t>> accuracy_num;  // over 1024
};

inline DyadicProblem random_dyadic(std::mt19937_64& gen, int models, int tasks) {
  DyadicProblem d;
  NodeProblem& p = d.problem;
  p.node = {NodeKind::kEdge, 0};
  p.memory_budget = 1e18;
  for (int t = 0; t < tasks; ++t) {
    d.weight_num.push_back(static_cast<std::int64_t>(gen() % 65));
    p.weight.push_back(static_cast<double>(d.weight_num.back()) / 64.0);
  }
  d.accuracy_num.assign(models, std::vector<std::int64_t>(tasks, 0));
  p.accuracy.assign(models, std::vector<double>(tasks, 0.0));
  p.cost.assign(models, std::vector<double>(tasks, 0.0));
  for (int m = 0; m < models; ++m) {
    p.model_memory.push_back(1.0);
    for (int t = 0; t < tasks; ++t) {
      // A third of the entries are unsupported (zero accuracy).
      if (gen() % 3 == 0) continue;
      d.accuracy_num[m][t] = static_cast<std::int64_t>(gen() % 1025);
      p.accuracy[m][t] = static_cast<double>(d.accuracy_num[m][t]) / 1024.0;
      p.cost[m][t] = static_cast<double>(gen() % 16) / 16.0;
    }
  }
  return d;
}

// sum_t weight_t * max_{m in set} accuracy_{m,t}, as a numerator over 65536.
inline std::int64_t exact_coverage(const DyadicProblem& d, const std::vector<int>& set) {
  std::int64_t total = 0;
  for (std::size_t t = 0; t < d.weight_num.size(); ++t) {
    std::int64_t best = 0;
    for (int m : set) best = std::max(best, d.accuracy_num[m][t]);
    total += d.weight_num[t] * best;
  }
  return total;
}

struct SubmodularityTally {
  long long triples = 0;
  long long diminishing_failures = 0;
  long long monotone_failures = 0;
  long long mismatches = 0;  // library coverage != int64 reference
};

// Draws (S, T, m) with S subset of T and m outside T, and checks
//   f(S + m) - f(S) >= f(T + m) - f(T)   and   f(S) <= f(T) <= f(T + m)
// exactly, with f evaluated by the library and by the int64 reference.
inline SubmodularityTally check_submodularity(std::uint64_t seed, long long triples) {
  std::mt19937_64 gen(seed);
  SubmodularityTally tally;
  for (long long i = 0; i < triples; ++i) {
    const int models = 2 + static_cast<int>(gen() % 7), tasks = 1 + static_cast<int>(gen() % 6);
    const DyadicProblem d = random_dyadic(gen, models, tasks);
    std::vector<int> order(models);
    for (int m = 0; m < models; ++m) order[m] = m;
    std::shuffle(order.begin(), order.end(), gen);
    const int extra = order.back();
    order.pop_back();
    std::vector<int> big, small;
    for (int m : order) {
      if (gen() % 2) continue;
      big.push_back(m);
      if (gen() % 2) small.push_back(m);
    }
    auto with = [&](std::vector<int> v) {
      v.push_back(extra);
      return v;
    };
    auto lib = [&](const std::vector<int>& set) { return select_models(d.problem, set).coverage(d.problem); };
    auto scaled = [](std::int64_t num) { return static_cast<double>(num) / 65536.0; };
    const std::vector<std::vector<int>> sets = {small, with(small), big, with(big)};
    std::vector<double> f;
    for (const auto& set : sets) {
      f.push_back(lib(set));
      if (f.back() != scaled(exact_coverage(d, set))) ++tally.mismatches;
    }
    ++tally.triples;
    if (!(f[1] - f[0] >= f[3] - f[2])) ++tally.diminishing_failures;
    if (!(f[0] <= f[2] && f[2] <= f[3] && f[0] <= f[1])) ++tally.monotone_failures;
  }
  return tally;
}

inline Scenario desk(std::uint64_t seed, Mode mode = Mode::kPlain) {
  GeneratorConfig cfg;
  cfg.preset = "desk";
  cfg.seed = seed;
  cfg.mode = mode;
  return generate_scenario(cfg);
}

}  // namespace hio::testing

#endif  // HIO_TESTS_TEST_SUPPORT_H_
