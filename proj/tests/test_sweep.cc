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

#include <filesystem>
#include <sstream>

#include "hio/scenario_io.h"
#include "hio/sweep.h"

namespace hio {
namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

TEST(SweepSpec, ParsesEveryField) {
  const SweepSpec spec = parse_sweep_spec(R"({
    "parameter": "chi_kappa_e", "values": [0.1, 0.5], "seeds": 3,
    "methods": ["j3o", "oracle"],
    "scenario": {"kind": "generator", "preset": "desk", "p_client": 0.7, "mode": "batching"},
    "ao": {"tolerance": 1e-3, "max_iterations": 7, "greedy": {"max_iterations": 9}},
    "oracle_limit": 5000, "objective_kind": "loss"})");
  EXPECT_EQ(spec.parameter, "chi_kappa_e");
  EXPECT_EQ(spec.values, std::vector<double>({0.1, 0.5}));
  EXPECT_EQ(spec.seeds, std::vector<std::uint64_t>({0, 1, 2}));
  EXPECT_EQ(spec.generator.preset, "desk");
  EXPECT_EQ(spec.generator.client_concentration, 0.7);
  EXPECT_EQ(spec.generator.mode, Mode::kBatching);
  EXPECT_EQ(spec.ao.max_iterations, 7);
  EXPECT_EQ(spec.ao.greedy.max_iterations, 9);
  EXPECT_EQ(spec.oracle_limit, 5000);
  EXPECT_EQ(spec.objective_kind, ObjectiveKind::kLoss);

  const SweepSpec listed = parse_sweep_spec(
      R"({"parameter": "p_A", "values": [0.2], "seeds": [4, 9], "methods": ["oracle"],
          "scenario": {"kind": "motivating", "nu_A": 0.1}})");
  EXPECT_TRUE(listed.motivating);
  EXPECT_EQ(listed.seeds, std::vector<std::uint64_t>({4, 9}));
  EXPECT_EQ(listed.motivating_options.setup_cost_a, 0.1);
}

TEST(SweepSpec, RejectsBadSpecs) {
  EXPECT_THROW(parse_sweep_spec(R"({"parameter": "chi_beta", "values": [1], "seeds": 1, "methods": ["j3o"],
                                    "colour": 1})"),
               std::invalid_argument);
  EXPECT_THROW(parse_sweep_spec(R"({"parameter": "gamma", "values": [1], "seeds": 1, "methods": ["j3o"]})"),
               std::invalid_argument);
  EXPECT_THROW(parse_sweep_spec(R"({"parameter": "chi_beta", "values": [], "seeds": 1, "methods": ["j3o"]})"),
               std::invalid_argument);
  EXPECT_THROW(parse_sweep_spec(R"({"parameter": "chi_beta", "values": [1], "seeds": 1, "methods": ["magic"]})"),
               std::invalid_argument);
  EXPECT_THROW(parse_sweep_spec(R"({"parameter": "p_A", "values": [0.5], "seeds": 1, "methods": ["j3o"]})"),
               std::invalid_argument);
  EXPECT_THROW(parse_sweep_spec("{"), ParseError);
}

SweepSpec desk_spec(const std::string& parameter, std::vector<double> values, std::vector<std::string> methods,
                    int seeds) {
  SweepSpec spec;
  spec.parameter = parameter;
  spec.values = std::move(values);
  for (int i = 0; i < seeds; ++i) spec.seeds.push_back(static_cast<std::uint64_t>(i));
  spec.methods = std::move(methods);
  spec.generator.preset = "desk";
  return spec;
}

TEST(RunSweep, RowsComeOutInGridOrder) {
  const SweepSpec spec = desk_spec("chi_kappa_s", {0.1, 0.4, 0.9}, {"j3o", "full_local"}, 2);
  std::ostringstream out;
  const auto rows = run_sweep(spec, out);
  ASSERT_EQ(rows.size(), 12u);
  const auto lines = lines_of(out.str());
  ASSERT_EQ(lines.size(), 13u);
  EXPECT_EQ(lines[0], csv_header());
  EXPECT_EQ(lines[0].rfind("scenario_digest,method,seed,sweep_param,sweep_value,objective,objective_kind,", 0), 0u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].sweep_value, spec.values[i / 4]);
    EXPECT_EQ(rows[i].seed, spec.seeds[(i / 2) % 2]);
    EXPECT_EQ(rows[i].method, spec.methods[i % 2]);
    EXPECT_EQ(rows[i].status, "ok");
    EXPECT_EQ(lines[i + 1], csv_row(rows[i]));
  }
}

TEST(RunSweep, RepeatedRunsAgree) {
  const SweepSpec spec = desk_spec("lambda_tot", {200, 400}, {"j3o", "rand_ao"}, 2);
  std::ostringstream a, b;
  const auto first = run_sweep(spec, a), second = run_sweep(spec, b);
  ASSERT_EQ(first.size(), second.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    EXPECT_EQ(first[i].scenario_digest, second[i].scenario_digest);
    EXPECT_EQ(first[i].objective, second[i].objective);
    EXPECT_EQ(first[i].plan, second[i].plan);
  }
}

TEST(RunSweep, FailuresBecomeErrorRows) {
  SweepSpec spec = desk_spec("chi_beta", {1.0}, {"oracle", "j3o"}, 1);
  spec.oracle_limit = 5;
  std::ostringstream out;
  const auto rows = run_sweep(spec, out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].status, "error: instance too large for oracle");
  EXPECT_EQ(rows[1].status, "ok");
}

TEST(RunSweep, WritesScenarioAndPlanArtifacts) {
  const auto dir = std::filesystem::temp_directory_path() / "hio_sweep_artifacts";
  std::filesystem::remove_all(dir);
  const SweepSpec spec = desk_spec("chi_kappa_e", {0.2, 0.6}, {"greedy_ao"}, 1);
  SweepOptions options;
  options.artifacts_dir = dir.string();
  std::ostringstream out;
  const auto rows = run_sweep(spec, out, options);
  for (int p = 0; p < 2; ++p) {
    const auto scenario = dir / ("point" + std::to_string(p) + "_seed0.json");
    ASSERT_TRUE(std::filesystem::exists(scenario));
    EXPECT_EQ(canonical_hash(load_scenario(scenario.string())), rows[p].scenario_digest);
    const auto plan = dir / ("row" + std::to_string(p) + ".plan");
    ASSERT_TRUE(std::filesystem::exists(plan));
    EXPECT_EQ(load_plan(plan.string()), *rows[p].plan);
  }
}

TEST(RunSweep, OracleImprovesWithEdgeUplink) {
  const SweepSpec spec = desk_spec("chi_kappa_e", {0.05, 0.2, 0.5, 1.0}, {"oracle"}, 3);
  std::ostringstream out;
  const auto rows = run_sweep(spec, out);
  for (std::size_t seed = 0; seed < 3; ++seed) {
    for (std::size_t p = 1; p < 4; ++p)
      EXPECT_GE(rows[p * 3 + seed].objective, rows[(p - 1) * 3 + seed].objective - 1e-9) << seed;
  }
}

TEST(RunSweep, FullLocalImprovesWithClientCompute) {
  const SweepSpec spec = desk_spec("chi_beta", {0.01, 0.05, 0.2, 1.0}, {"full_local"}, 4);
  std::ostringstream out;
  const auto rows = run_sweep(spec, out);
  for (std::size_t seed = 0; seed < 4; ++seed) {
    for (std::size_t p = 1; p < 4; ++p)
      EXPECT_GE(rows[p * 4 + seed].objective, rows[(p - 1) * 4 + seed].objective - 1e-12) << seed;
  }
  EXPECT_LT(rows[0].objective, rows[12].objective);
}

TEST(RunSweep, LossPresetsReportLoss) {
  SweepSpec spec = desk_spec("chi_beta", {1.0}, {"full_local"}, 1);
  spec.objective_kind = ObjectiveKind::kLoss;
  std::ostringstream out;
  const auto rows = run_sweep(spec, out);
  SweepSpec acc = spec;
  acc.objective_kind = ObjectiveKind::kAccuracy;
  std::ostringstream out2;
  const auto acc_rows = run_sweep(acc, out2);
  EXPECT_NEAR(rows[0].objective + acc_rows[0].objective, 1.0, 1e-12);
  EXPECT_NE(out.str().find(",loss,"), std::string::npos);
}

}  // namespace
}  // namespace hio
