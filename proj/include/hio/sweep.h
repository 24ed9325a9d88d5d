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

#ifndef HIO_SWEEP_H_
#define HIO_SWEEP_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hio/alternating.h"
#include "hio/baselines.h"
#include "hio/generator.h"
#include "hio/objective.h"

namespace hio {

// Sweepable parameters. Generator-based sweeps accept chi_kappa_e,
// chi_kappa_s, chi_beta, lambda_tot, T_b; motivating-preset sweeps accept
// p_A, nu_A, T_b, chi_kappa_e.
const std::vector<std::string>& sweep_parameter_names();

struct SweepSpec {
  std::string parameter;
  std::vector<double> values;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> methods;
  // Base scenario: generated (the default) or the motivating preset.
  bool motivating = false;
  GeneratorConfig generator;
  MotivatingOptions motivating_options;
  AoConfig ao;
  long long oracle_limit = kDefaultOracleLimit;
  std::optional<ObjectiveKind> objective_kind;  // default: the preset's

  // Throws std::invalid_argument on an empty grid, no seeds or methods, an
  // unknown parameter or method tag.
  void check() const;
};

// JSON form: {"parameter", "values", "seeds" (list or count), "methods",
// "scenario": {"kind": "generator" | "motivating", ...fields}, "ao": {...},
// "oracle_limit", "objective_kind"}. See docs/scenario_format.md.
SweepSpec parse_sweep_spec(const std::string& text);
SweepSpec load_sweep_spec(const std::string& path);

// The scenario at one grid point and seed.
Scenario sweep_scenario(const SweepSpec& spec, double value, std::uint64_t seed);

struct ExperimentResult {
  std::string scenario_digest;
  std::string method;
  std::uint64_t seed = 0;
  std::string sweep_param;
  double sweep_value = 0;
  double objective = 0;
  ObjectiveKind objective_kind = ObjectiveKind::kAccuracy;
  double runtime_ms = 0;
  double max_violation = 0;
  int outer_iters = 0;
  std::string status = "ok";  // "ok" or "error: <message>"
  std::optional<Plan> plan;
};

std::string csv_header();
std::string csv_row(const ExperimentResult& r);

struct SweepOptions {
  // When set, scenario files and one plan file per row are written here.
  std::optional<std::string> artifacts_dir;
  Execution execution = Execution::kParallel;
};

// Runs every (value, seed, method) and streams rows to `out` in that order
// (values outermost) as soon as each row and all rows before it are done.
// A failing run yields an error row and the sweep continues.
std::vector<ExperimentResult> run_sweep(const SweepSpec& spec, std::ostream& out, const SweepOptions& options = {});
std::vector<ExperimentResult> run_sweep(const SweepSpec& spec, const std::string& csv_path,
                                        const SweepOptions& options = {});

// One method on one scenario as a result row (errors become error rows).
ExperimentResult run_experiment(const Scenario& s, const std::string& method, const AoConfig& cfg,
                                ObjectiveKind kind, long long oracle_limit);

}  // namespace hio

#endif  // HIO_SWEEP_H_
