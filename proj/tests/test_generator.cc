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

#include <gtest/gtest.h>

#include <algorithm>

#include "hio/generator.h"
#include "hio/scenario_io.h"
#include "test_support.h"

namespace hio {
namespace {

double demanded_bytes(const Scenario& s, int edge) {
  double sum = 0;
  for (int c = 0; c < s.num_clients(); ++c) {
    if (edge >= 0 && s.edge_of(c) != edge) continue;
    for (int t = 0; t < s.num_tasks(); ++t) sum += s.rate(c, t) * s.tasks[t].input_bytes;
  }
  return sum;
}

TEST(Generator, DefaultWorkloadAndUplinks) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    GeneratorConfig cfg;
    cfg.seed = seed;
    const Scenario s = generate_scenario(cfg);
    EXPECT_NEAR(s.total_rate(), 2000.0, 1e-9);
    EXPECT_NEAR(s.topology.cloud_uplink, 0.25 * demanded_bytes(s, -1), 1e-6);
    for (int e = 0; e < s.num_edges(); ++e)
      EXPECT_NEAR(s.topology.edge_uplink[e], 0.5 * demanded_bytes(s, e), 1e-6);
  }
  GeneratorConfig cfg;
  cfg.total_rate = 750;
  EXPECT_NEAR(generate_scenario(cfg).total_rate(), 750.0, 1e-9);
}

TEST(Generator, TaskonomyBudgetsAndModels) {
  GeneratorConfig cfg;
  const Scenario s = generate_scenario(cfg);
  ASSERT_EQ(s.num_tasks(), 5);
  const double client_mb[] = {24, 24, 48, 48, 96};
  const double client_tflops[] = {0.5, 1, 1, 2, 2};
  for (int c = 0; c < s.num_clients(); ++c) {
    EXPECT_DOUBLE_EQ(s.topology.clients[c].memory_bytes, client_mb[c % 10 % 5] * testing::kMB) << c;
    EXPECT_DOUBLE_EQ(s.topology.clients[c].compute_capacity, client_tflops[c % 10 % 5] * 1e12) << c;
  }
  const double edge_mb[] = {512, 512, 1024};
  for (int e = 0; e < 3; ++e) EXPECT_DOUBLE_EQ(s.topology.edges[e].memory_bytes, edge_mb[e] * testing::kMB);
  for (const ModelProfile& m : s.models) {
    EXPECT_DOUBLE_EQ(m.memory_bytes, 73.66 * testing::kMB);
    EXPECT_DOUBLE_EQ(m.compute_per_query, 9.17e9);
  }
  EXPECT_EQ(device_preset("taskonomy").objective, ObjectiveKind::kLoss);
  EXPECT_EQ(device_preset("domainnet").num_tasks, 6);
  EXPECT_THROW(device_preset("imagenet"), std::invalid_argument);
}

TEST(Generator, SyntheticAccuracyRanges) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GeneratorConfig cfg;
    cfg.preset = "desk";
    cfg.seed = seed;
    const Scenario s = generate_scenario(cfg);
    for (const ModelProfile& m : s.models) {
      const int k = static_cast<int>(m.supported_tasks.size());
      EXPECT_GE(k, 1);
      EXPECT_LE(k, 3);
      for (int t = 0; t < s.num_tasks(); ++t) {
        const double a = s.accuracy.per_edge[0][m.id][t];
        if (!m.supports(t)) {
          EXPECT_EQ(a, 0.0);
          continue;
        }
        const double penalty = 0.1 * (k - 1);
        EXPECT_GE(a, 0.6 - penalty - 0.03 - 1e-12);
        EXPECT_LE(a, 0.95 - penalty + 0.03 + 1e-12);
      }
    }
    for (double a : s.accuracy.cloud) EXPECT_EQ(a, 1.0);
  }
}

TEST(Generator, SeedDeterminesTheScenario) {
  GeneratorConfig a, b;
  a.seed = b.seed = 42;
  EXPECT_EQ(canonical_hash(generate_scenario(a)), canonical_hash(generate_scenario(b)));
  b.seed = 43;
  EXPECT_NE(canonical_hash(generate_scenario(a)), canonical_hash(generate_scenario(b)));
}

TEST(Generator, ComputeScalerTouchesClientsOnly) {
  GeneratorConfig base, scaled;
  scaled.compute_scale = 2.5;
  const Scenario s0 = generate_scenario(base), s1 = generate_scenario(scaled);
  for (int c = 0; c < s0.num_clients(); ++c)
    EXPECT_DOUBLE_EQ(s1.topology.clients[c].compute_capacity, 2.5 * s0.topology.clients[c].compute_capacity);
  EXPECT_EQ(s1.topology.edges, s0.topology.edges);
  EXPECT_EQ(s1.workload, s0.workload);
}

TEST(Generator, BatchingSetupCostIsTenQueries) {
  const Scenario s = testing::desk(1, Mode::kBatching);
  ASSERT_TRUE(s.batch_interval.has_value());
  EXPECT_EQ(*s.batch_interval, 0.5);
  for (const ModelProfile& m : s.models)
    EXPECT_NEAR(m.setup_cost[0], 10 * m.compute_per_query / s.topology.edges[0].compute_capacity, 1e-15);
}

TEST(Generator, RejectsBadConfigurations) {
  GeneratorConfig cfg;
  cfg.client_concentration = 0;
  EXPECT_THROW(generate_scenario(cfg), std::invalid_argument);
  cfg = {};
  cfg.edge_uplink_scale = -1;
  EXPECT_THROW(generate_scenario(cfg), std::invalid_argument);
  cfg = {};
  cfg.preset = "custom";
  EXPECT_THROW(generate_scenario(cfg), std::invalid_argument);
}

TEST(Motivating, SharesHotClientAndSetupCosts) {
  MotivatingOptions o;
  o.task_a_share = 0.3;
  o.setup_cost_a = 0.2;
  o.setup_cost = 0.01;
  const Scenario s = motivating_preset(o);
  ASSERT_EQ(s.num_clients(), 5);
  ASSERT_EQ(s.num_edges(), 1);
  for (int c = 0; c < 5; ++c) {
    EXPECT_DOUBLE_EQ(s.rate(c, 0), 3.0);
    EXPECT_DOUBLE_EQ(s.rate(c, 1), 7.0);
  }
  EXPECT_EQ(s.models[0].setup_cost, std::vector<double>({0.2}));
  EXPECT_EQ(s.models[1].setup_cost, std::vector<double>({0.01}));
  EXPECT_EQ(s.topology.cloud_uplink, 0.0);
  // Exactly one model fits on every node.
  EXPECT_LT(s.topology.edges[0].memory_bytes, 2 * s.models[0].memory_bytes);
  EXPECT_GE(s.topology.edges[0].memory_bytes, s.models[0].memory_bytes);
  EXPECT_LT(s.topology.clients[0].memory_bytes, 2 * s.models[0].client_memory_bytes);
  EXPECT_DOUBLE_EQ(s.edge_accuracy(0, 2, 0), 0.6);
  EXPECT_DOUBLE_EQ(s.client_accuracy(0, 0, 0), 0.81);

  o.hot_client = true;
  const Scenario hot = motivating_preset(o);
  EXPECT_DOUBLE_EQ(hot.rate(0, 0), 3.0);
  EXPECT_DOUBLE_EQ(hot.rate(0, 1), 7.0);
  o.task_a_share = 0.9;
  const Scenario hot9 = motivating_preset(o);
  EXPECT_DOUBLE_EQ(hot9.rate(0, 1), 7.0);
  EXPECT_DOUBLE_EQ(hot9.rate(1, 0), 9.0);

  o.task_a_share = 1.0;
  EXPECT_THROW(motivating_preset(o), std::invalid_argument);
}

}  // namespace
}  // namespace hio
