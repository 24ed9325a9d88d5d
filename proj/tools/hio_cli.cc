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

// Command-line front end: solve, sweep, oracle, validate, gen.
//
// Exit codes: 0 success, 1 validation failure (bad scenario or plan file,
// infeasible plan, oracle guard), 2 usage error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "hio/baselines.h"
#include "hio/constraints.h"
#include "hio/generator.h"
#include "hio/scenario_io.h"
#include "hio/sweep.h"

namespace {

constexpr int kOk = 0;
constexpr int kValidationFailure = 1;
constexpr int kUsage = 2;

struct Common {
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "csv";
  std::string mode;
};

nlohmann::json to_json(const hio::ExperimentResult& r) {
  return {{"scenario_digest", r.scenario_digest},
          {"method", r.method},
          {"seed", r.seed},
          {"sweep_param", r.sweep_param},
          {"sweep_value", r.sweep_value},
          {"objective", r.objective},
          {"objective_kind", hio::objective_kind_name(r.objective_kind)},
          {"runtime_ms", r.runtime_ms},
          {"max_violation", r.max_violation},
          {"outer_iters", r.outer_iters},
          {"status", r.status}};
}

void emit(const hio::ExperimentResult& r, const std::string& format) {
  if (format == "json") {
    std::cout << to_json(r).dump(2) << '\n';
  } else {
    std::cout << hio::csv_header() << '\n' << hio::csv_row(r) << '\n';
  }
}

hio::Scenario load_with_mode(const std::string& path, const std::string& mode) {
  hio::Scenario s = hio::load_scenario(path);
  if (!mode.empty()) {
    s.mode = hio::parse_mode(mode);
    s.validate();
  }
  return s;
}

void write_plan_file(const hio::Plan& plan, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  hio::write_plan(plan, out);
}

std::string default_plan_path(const std::string& scenario, const std::string& method) {
  return std::filesystem::path(scenario).stem().string() + "." + method + ".plan";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint model onloading and query offloading for client/edge/cloud inference"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", common.seed, "Seed for randomized methods and generators");
    cmd->add_option("--out", common.out, "Output file");
    cmd->add_option("--format", common.format, "Result format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--mode", common.mode, "Override the scenario mode")->check(CLI::IsMember({"plain", "batching"}));
  };

  std::string scenario_path, method = "j3o", trace_path;
  long long limit = hio::kDefaultOracleLimit;
  int max_iterations = 20;
  double tolerance = 1e-4;
  CLI::App* solve = app.add_subcommand("solve", "Run one method on one scenario");
  solve->add_option("--scenario", scenario_path, "Scenario file")->required();
  solve->add_option("--method", method, "Method tag")->check(CLI::IsMember(hio::method_names()));
  solve->add_option("--trace", trace_path, "Write the AO trace (JSON lines) here");
  solve->add_option("--limit", limit, "Subset guard for exhaustive steps");
  solve->add_option("--max-iterations", max_iterations, "Outer AO iterations");
  solve->add_option("--tolerance", tolerance, "AO improvement tolerance");
  add_common(solve);

  std::string spec_path, artifacts;
  CLI::App* sweep = app.add_subcommand("sweep", "Run a sweep spec and write CSV rows");
  sweep->add_option("--spec", spec_path, "Sweep spec file")->required();
  sweep->add_option("--artifacts", artifacts, "Directory for scenario and plan files");
  add_common(sweep);

  CLI::App* oracle = app.add_subcommand("oracle", "Exhaustive search (guarded)");
  oracle->add_option("--scenario", scenario_path, "Scenario file")->required();
  oracle->add_option("--limit", limit, "Largest number of memory-feasible combinations");
  add_common(oracle);

  std::string plan_path;
  CLI::App* validate = app.add_subcommand("validate", "Check a plan against a scenario");
  validate->add_option("--scenario", scenario_path, "Scenario file")->required();
  validate->add_option("--plan", plan_path, "Plan file")->required();
  add_common(validate);

  hio::GeneratorConfig gen_cfg;
  hio::MotivatingOptions motivating;
  bool use_motivating = false;
  double rate = 0;
  CLI::App* gen = app.add_subcommand("gen", "Emit a generated scenario file");
  gen->add_option("--preset", gen_cfg.preset, "Device preset")->check(CLI::IsMember(hio::device_preset_names()));
  gen->add_option("--rate", rate, "Total arrival rate (jobs/s); default per preset");
  gen->add_option("--chi-kappa-e", gen_cfg.edge_uplink_scale, "Edge uplink scaler");
  gen->add_option("--chi-kappa-s", gen_cfg.cloud_uplink_scale, "Cloud uplink scaler");
  gen->add_option("--chi-beta", gen_cfg.compute_scale, "Client compute scaler");
  gen->add_option("--p-client", gen_cfg.client_concentration, "Client Dirichlet concentration");
  gen->add_option("--p-task", gen_cfg.task_concentration, "Task Dirichlet concentration");
  gen->add_option("--models", gen_cfg.num_models, "Library size override");
  gen->add_option("--batch-interval", gen_cfg.batch_interval, "T_b in seconds (batching mode)");
  gen->add_flag("--motivating", use_motivating, "Emit the two-task toy system instead");
  gen->add_option("--p-a", motivating.task_a_share, "Task A share (motivating)");
  gen->add_option("--nu-a", motivating.setup_cost_a, "Setup cost of m(A) (motivating)");
  gen->add_flag("--hot-client", motivating.hot_client, "Hot client variant (motivating)");
  add_common(gen);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*solve) {
      const hio::Scenario s = load_with_mode(scenario_path, common.mode);
      hio::AoConfig cfg;
      cfg.seed = common.seed;
      cfg.max_iterations = max_iterations;
      cfg.tolerance = tolerance;
      hio::BaselineResult b = hio::run_method(method, s, cfg, limit);
      hio::ExperimentResult r;
      r.scenario_digest = hio::canonical_hash(s);
      r.method = b.method;
      r.seed = common.seed;
      r.objective = b.objective;
      r.runtime_ms = b.runtime_ms;
      r.outer_iters = b.outer_iterations;
      const hio::ConstraintReport report = hio::validate_plan(s, b.plan);
      r.max_violation = report.max_violation();
      if (!report.feasible()) r.status = "infeasible";
      write_plan_file(b.plan, common.out.empty() ? default_plan_path(scenario_path, method) : common.out);
      if (!trace_path.empty()) {
        std::ofstream trace(trace_path);
        trace << b.trace.to_jsonl();
      }
      emit(r, common.format);
      return report.feasible() ? kOk : kValidationFailure;
    }

    if (*sweep) {
      const hio::SweepSpec spec = hio::load_sweep_spec(spec_path);
      hio::SweepOptions options;
      if (!artifacts.empty()) options.artifacts_dir = artifacts;
      std::vector<hio::ExperimentResult> rows;
      if (common.format == "json") {
        std::ostringstream discard;
        rows = hio::run_sweep(spec, discard, options);
        nlohmann::json all = nlohmann::json::array();
        for (const auto& r : rows) all.push_back(to_json(r));
        if (common.out.empty()) {
          std::cout << all.dump(2) << '\n';
        } else {
          std::ofstream(common.out) << all.dump(2) << '\n';
        }
      } else if (common.out.empty()) {
        rows = hio::run_sweep(spec, std::cout, options);
      } else {
        rows = hio::run_sweep(spec, common.out, options);
      }
      std::cerr << rows.size() << " rows\n";
      return kOk;
    }

    if (*oracle) {
      const hio::Scenario s = load_with_mode(scenario_path, common.mode);
      hio::OracleOptions options;
      options.limit = limit;
      hio::BaselineResult b;
      try {
        b = hio::minlp_oracle(s, options);
      } catch (const hio::OracleTooLarge& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidationFailure;
      }
      hio::ExperimentResult r;
      r.scenario_digest = hio::canonical_hash(s);
      r.method = b.method;
      r.objective = b.objective;
      r.runtime_ms = b.runtime_ms;
      r.max_violation = hio::validate_plan(s, b.plan).max_violation();
      write_plan_file(b.plan, common.out.empty() ? default_plan_path(scenario_path, "oracle") : common.out);
      emit(r, common.format);
      std::cerr << b.configurations << " configurations\n";
      return kOk;
    }

    if (*validate) {
      const hio::Scenario s = load_with_mode(scenario_path, common.mode);
      const hio::Plan p = hio::load_plan(plan_path);
      const hio::ConstraintReport r = hio::validate_plan(s, p);
      nlohmann::json out = {{"feasible", r.feasible()},
                            {"max_violation", r.max_violation()},
                            {"client_memory", r.client_memory},
                            {"edge_memory", r.edge_memory},
                            {"client_compute", r.client_compute},
                            {"edge_compute", r.edge_compute},
                            {"edge_uplink", r.edge_uplink},
                            {"cloud_uplink", r.cloud_uplink},
                            {"assignment_violations", r.assignment_violations},
                            {"offloading_consistency", r.offloading_consistency}};
      std::cout << out.dump(2) << '\n';
      return r.feasible() ? kOk : kValidationFailure;
    }

    if (*gen) {
      hio::Scenario s;
      if (use_motivating) {
        if (common.mode == "plain") motivating.batching = false;
        s = hio::motivating_preset(motivating);
      } else {
        gen_cfg.seed = common.seed;
        if (rate > 0) gen_cfg.total_rate = rate;
        if (!common.mode.empty()) gen_cfg.mode = hio::parse_mode(common.mode);
        s = hio::generate_scenario(gen_cfg);
      }
      if (common.out.empty()) {
        std::cout << hio::serialize_scenario(s) << '\n';
      } else {
        hio::save_scenario(s, common.out);
      }
      return kOk;
    }
  } catch (const hio::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const hio::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const hio::OracleTooLarge& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidationFailure;
  }
  return kUsage;
}
