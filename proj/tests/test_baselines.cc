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

#include <cstdlib>
#include <random>

#include "hio/baselines.h"
#include "hio/constraints.h"
#include "hio/generator.h"
#include "hio/j3o.h"
#include "hio/objective.h"
#include "test_support.h"

namespace hio {
namespace {

TEST(MemoryFeasibleSubsets, SingleModelNodeHasTwoChoices) {
  testing::TinySpec spec;
  spec.accuracy = {{0.7}};
  spec.model_memory = {10};
  spec.rates = {{1}};
  spec.client_memory = 10;
  spec.edge_memory = 15;
  const Scenario s = testing::make_tiny(spec);
  for (NodeRef node : all_nodes(s)) {
    const auto subsets = memory_feasible_subsets(s, node, kDefaultOracleLimit);
    ASSERT_EQ(subsets.size(), 2u);
    EXPECT_TRUE(subsets[0].empty());
    EXPECT_EQ(subsets[1], std::vector<int>({0}));
  }
  const BaselineResult r = minlp_oracle(s);
  EXPECT_LE(r.configurations, 4);
  EXPECT_EQ(r.memory_feasible, 4);
}

TEST(MemoryFeasibleSubsets, ClientBudgetsCapTheModelCount) {
  GeneratorConfig cfg;
  cfg.preset = "taskonomy";
  const Scenario s = generate_scenario(cfg);
  auto largest = [&](int client) {
    std::size_t best = 0;
    for (const auto& set : memory_feasible_subsets(s, {NodeKind::kClient, client}, kDefaultOracleLimit))
      best = std::max(best, set.size());
    return best;
  };
  // 24, 24, 48, 48, 96 MB against 18.415 MB per client copy.
  EXPECT_EQ(largest(0), 1u);
  EXPECT_EQ(largest(2), 2u);
  EXPECT_EQ(largest(4), 5u);
}

TEST(Oracle, MotivatingSystemStaysWithinOneModelPerNode) {
  const Scenario s = motivating_preset({});
  const BaselineResult r = minlp_oracle(s);
  EXPECT_LE(r.configurations, 4096);
  EXPECT_EQ(r.memory_feasible, 4096);  // six nodes, {} or one of three models
  EXPECT_TRUE(validate_plan(s, r.plan).feasible());
}

TEST(Oracle, UpperBoundsEveryMethod) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    for (Mode mode : {Mode::kPlain, Mode::kBatching}) {
      const Scenario s = testing::desk(seed, mode);
      const BaselineResult oracle = minlp_oracle(s);
      EXPECT_TRUE(validate_plan(s, oracle.plan).feasible()) << seed;
      EXPECT_NEAR(eval_objective(s, oracle.plan).total, oracle.objective, 1e-12);
      for (const std::string& method : method_names()) {
        if (method == "oracle") continue;
        const BaselineResult r = run_method(method, s);
        EXPECT_TRUE(validate_plan(s, r.plan).feasible()) << method << " seed " << seed;
        EXPECT_LE(r.objective, oracle.objective + 1e-9) << method << " seed " << seed;
      }
    }
  }
}

TEST(Oracle, PruningDoesNotChangeTheOptimum) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const Scenario s = testing::desk(seed);
    OracleOptions pruned, full;
    full.prune = false;
    const BaselineResult a = minlp_oracle(s, pruned), b = minlp_oracle(s, full);
    EXPECT_NEAR(a.objective, b.objective, 1e-12) << seed;
    EXPECT_LE(a.configurations, b.configurations);
  }
}

TEST(Oracle, SerialAndParallelReturnTheSamePlan) {
  setenv("HIO_THREADS", "4", 1);
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Scenario s = testing::desk(seed);
    OracleOptions serial, parallel;
    serial.execution = Execution::kSerial;
    parallel.execution = Execution::kParallel;
    const BaselineResult a = minlp_oracle(s, serial), b = minlp_oracle(s, parallel);
    EXPECT_EQ(a.plan, b.plan) << seed;
    EXPECT_EQ(a.objective, b.objective) << seed;
    EXPECT_EQ(a.configurations, b.configurations);
  }
  unsetenv("HIO_THREADS");
}

TEST(Oracle, GuardNamesTheProblem) {
  const Scenario s = testing::desk(0);
  OracleOptions options;
  options.limit = 10;
  try {
    minlp_oracle(s, options);
    FAIL() << "expected the guard to trip";
  } catch (const OracleTooLarge& e) {
    EXPECT_STREQ(e.what(), "instance too large for oracle");
  }
}

TEST(GreedyAo, IsTheAlternatingLoopWithZeroMultipliers) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Scenario s = testing::desk(seed);
    const AoResult reference = run_alternating(s, AoConfig{}, [](const OnloadContext& ctx) {
      Onloading on = Onloading::empty(ctx.scenario);
      for (NodeRef node : all_nodes(ctx.scenario)) {
        const NodeProblem p = make_node_problem(ctx.scenario, node, ctx.current.offload);
        apply_selection(on, node, greedy_node_select(p, 0.0));
      }
      return on;
    });
    const BaselineResult g = greedy_ao(s);
    EXPECT_EQ(g.plan, reference.plan) << seed;
    EXPECT_EQ(g.objective, reference.objective);
  }
}

// The exhaustive onloading step never covers less than the greedy step.
TEST(OptAo, StepCoverageDominatesGreedy) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Scenario s = testing::desk(seed);
    for (NodeRef node : all_nodes(s)) {
      const NodeProblem p = make_node_problem(s, node, initial_offloading(s));
      double best = 0;
      for (const auto& set : memory_feasible_subsets(s, node, kDefaultOracleLimit))
        best = std::max(best, select_models(p, set).coverage(p));
      EXPECT_GE(best, greedy_node_select(p, 0.0).coverage(p) - 1e-15);
    }
  }
}

// With the client unable to hold anything and every query forced to the
// edge, only the edge decides; opt_ao's first step is then the optimum.
TEST(OptAo, SingleDecidingNodeMatchesTheOracle) {
  std::mt19937_64 gen(6);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 10; ++trial) {
    testing::TinySpec spec;
    spec.accuracy = {{0.4 + 0.5 * u(gen), 0.4 + 0.5 * u(gen), 0},
                     {0, 0.4 + 0.5 * u(gen), 0.4 + 0.5 * u(gen)},
                     {0.5, 0.5, 0.5}};
    spec.model_memory = {40, 50, 60};
    spec.rates = {{1 + 9 * u(gen), 1 + 9 * u(gen), 1 + 9 * u(gen)}};
    spec.client_memory = 1;
    spec.edge_memory = 100;
    spec.cloud_uplink = 0;
    const Scenario s = testing::make_tiny(spec);
    EXPECT_NEAR(opt_ao(s).objective, minlp_oracle(s).objective, 1e-12) << trial;
  }
}

TEST(RandAo, SingleOptionPerNodeMatchesTheOracle) {
  testing::TinySpec spec;
  spec.clients = 2;
  spec.accuracy = {{0.8, 0.6}};
  spec.model_memory = {5};
  spec.rates = {{3, 1}, {2, 2}};
  spec.edge_uplink = 2;
  spec.cloud_uplink = 1;
  spec.client_factor = 0.9;
  const Scenario s = testing::make_tiny(spec);
  const BaselineResult oracle = minlp_oracle(s);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    AoConfig cfg;
    cfg.seed = seed;
    EXPECT_NEAR(rand_ao(s, cfg).objective, oracle.objective, 1e-12);
  }
}

TEST(RandAo, SeedDrivenAndReproducible) {
  const Scenario s = testing::desk(3);
  AoConfig cfg;
  cfg.seed = 11;
  const BaselineResult a = rand_ao(s, cfg), b = rand_ao(s, cfg);
  EXPECT_EQ(a.plan, b.plan);
  EXPECT_EQ(a.objective, b.objective);
  EXPECT_EQ(a.outer_iterations, cfg.max_iterations);
}

TEST(FullLocal, ClosedFormOnOneClient) {
  testing::TinySpec spec;
  spec.accuracy = {{0.8, 0}, {0, 0.6}, {0.5, 0.5}};
  spec.model_memory = {10, 10, 10};
  spec.rates = {{3, 1}};
  spec.client_memory = 10;  // one model
  spec.client_factor = 0.9;
  const Scenario s = testing::make_tiny(spec);
  const BaselineResult r = full_local(s);
  // Best single model: m0 gives 0.75 * 0.8 = 0.6 > m2's 0.5.
  EXPECT_NEAR(r.objective, 0.9 * 0.75 * 0.8, 1e-12);
  EXPECT_EQ(r.plan.onload.client_models[0], std::vector<int>({0}));
  for (double v : r.plan.offload.to_edge[0]) EXPECT_EQ(v, 0.0);

  testing::TinySpec none = spec;
  none.client_memory = 5;  // nothing fits
  EXPECT_EQ(full_local(testing::make_tiny(none)).objective, 0.0);
}

TEST(FullLocal, RespectsClientCompute) {
  testing::TinySpec spec;
  spec.accuracy = {{0.9}, {0.6}};
  spec.model_memory = {10, 10};
  spec.model_compute = {10, 1};
  spec.rates = {{2}};
  spec.client_memory = 10;
  spec.client_compute = 5;  // model 0 needs 20 FLOP/s
  const Scenario s = testing::make_tiny(spec);
  const BaselineResult r = full_local(s);
  EXPECT_EQ(r.plan.onload.client_models[0], std::vector<int>({1}));
  EXPECT_TRUE(validate_plan(s, r.plan).feasible());
}

TEST(RunMethod, UnknownTagIsRejected) {
  EXPECT_THROW(run_method("simplex", testing::desk(0)), std::invalid_argument);
  EXPECT_TRUE(is_known_method("rand_ao"));
  EXPECT_EQ(run_method("j3o", testing::desk(0, Mode::kBatching)).method, "baj3o");
}

}  // namespace
}  // namespace hio
