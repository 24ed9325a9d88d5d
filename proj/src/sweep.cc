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

#include "hio/sweep.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "hio/constraints.h"
#include "hio/scenario_io.h"

namespace hio {
namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known.count(it.key())) throw std::invalid_argument("unknown key '" + it.key() + "' in " + where);
  }
}

template <typename T>
void read(const json& j, const char* key, T& into) {
  if (j.contains(key)) into = j.at(key).get<T>();
}

GeneratorConfig parse_generator(const json& j) {
  reject_unknown(j,
                 {"kind", "preset", "total_rate", "p_client", "p_task", "chi_kappa_e", "chi_kappa_s", "chi_beta",
                  "client_factor", "num_models", "clients_per_edge", "num_edges", "mode", "batch_interval",
                  "setup_queries"},
                 "generator scenario");
  GeneratorConfig g;
  read(j, "preset", g.preset);
  if (j.contains("total_rate")) g.total_rate = j.at("total_rate").get<double>();
  read(j, "p_client", g.client_concentration);
  read(j, "p_task", g.task_concentration);
  read(j, "chi_kappa_e", g.edge_uplink_scale);
  read(j, "chi_kappa_s", g.cloud_uplink_scale);
  read(j, "chi_beta", g.compute_scale);
  read(j, "client_factor", g.client_factor);
  read(j, "num_models", g.num_models);
  read(j, "clients_per_edge", g.clients_per_edge);
  read(j, "num_edges", g.num_edges);
  if (j.contains("mode")) g.mode = parse_mode(j.at("mode").get<std::string>());
  read(j, "batch_interval", g.batch_interval);
  read(j, "setup_queries", g.setup_queries);
  return g;
}

MotivatingOptions parse_motivating(const json& j) {
  reject_unknown(j,
                 {"kind", "p_A", "hot_client", "nu_A", "nu", "client_rate", "uplink_scale", "client_compute_scale",
                  "edge_compute_scale", "batching", "batch_interval"},
                 "motivating scenario");
  MotivatingOptions m;
  read(j, "p_A", m.task_a_share);
  read(j, "hot_client", m.hot_client);
  read(j, "nu_A", m.setup_cost_a);
  read(j, "nu", m.setup_cost);
  read(j, "client_rate", m.client_rate);
  read(j, "uplink_scale", m.uplink_scale);
  read(j, "client_compute_scale", m.client_compute_scale);
  read(j, "edge_compute_scale", m.edge_compute_scale);
  read(j, "batching", m.batching);
  read(j, "batch_interval", m.batch_interval);
  return m;
}

AoConfig parse_ao(const json& j) {
  reject_unknown(j, {"tolerance", "max_iterations", "smoothing_scale", "greedy"}, "ao");
  AoConfig c;
  read(j, "tolerance", c.tolerance);
  read(j, "max_iterations", c.max_iterations);
  read(j, "smoothing_scale", c.smoothing_scale);
  if (j.contains("greedy")) {
    const json& g = j.at("greedy");
    reject_unknown(g, {"violation_tolerance", "max_iterations", "client_step", "edge_step", "seeded"}, "ao.greedy");
    read(g, "violation_tolerance", c.greedy.violation_tolerance);
    read(g, "max_iterations", c.greedy.max_iterations);
    read(g, "client_step", c.greedy.client_step);
    read(g, "edge_step", c.greedy.edge_step);
    read(g, "seeded", c.greedy.seeded);
  }
  return c;
}

std::string format_double(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

const std::vector<std::string>& sweep_parameter_names() {
  static const std::vector<std::string> names = {"chi_kappa_e", "chi_kappa_s", "chi_beta", "lambda_tot",
                                                 "T_b",         "p_A",         "nu_A"};
  return names;
}

void SweepSpec::check() const {
  const auto& params = sweep_parameter_names();
  if (std::find(params.begin(), params.end(), parameter) == params.end())
    throw std::invalid_argument("unknown sweep parameter: " + parameter);
  const bool motivating_only = parameter == "p_A" || parameter == "nu_A";
  const bool generator_only = parameter == "chi_kappa_s" || parameter == "chi_beta" || parameter == "lambda_tot";
  if (motivating_only && !motivating) throw std::invalid_argument(parameter + " needs the motivating scenario");
  if (generator_only && motivating) throw std::invalid_argument(parameter + " needs a generated scenario");
  if (values.empty()) throw std::invalid_argument("sweep grid is empty");
  if (seeds.empty()) throw std::invalid_argument("sweep needs at least one seed");
  if (methods.empty()) throw std::invalid_argument("sweep needs at least one method");
  for (const auto& m : methods) {
    if (!is_known_method(m)) throw std::invalid_argument("unknown method: " + m);
  }
}

SweepSpec parse_sweep_spec(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("sweep spec: ") + e.what());
  }
  try {
    reject_unknown(j, {"parameter", "values", "seeds", "methods", "scenario", "ao", "oracle_limit", "objective_kind"},
                   "sweep spec");
    SweepSpec spec;
    spec.parameter = j.at("parameter").get<std::string>();
    spec.values = j.at("values").get<std::vector<double>>();
    const json& seeds = j.at("seeds");
    if (seeds.is_number_unsigned() || seeds.is_number_integer()) {
      const long long n = seeds.get<long long>();
      for (long long i = 0; i < n; ++i) spec.seeds.push_back(static_cast<std::uint64_t>(i));
    } else {
      spec.seeds = seeds.get<std::vector<std::uint64_t>>();
    }
    spec.methods = j.at("methods").get<std::vector<std::string>>();
    if (j.contains("scenario")) {
      const json& sc = j.at("scenario");
      const std::string kind = sc.value("kind", "generator");
      if (kind == "motivating") {
        spec.motivating = true;
        spec.motivating_options = parse_motivating(sc);
      } else if (kind == "generator") {
        spec.generator = parse_generator(sc);
      } else {
        throw std::invalid_argument("unknown scenario kind: " + kind);
      }
    }
    if (j.contains("ao")) spec.ao = parse_ao(j.at("ao"));
    read(j, "oracle_limit", spec.oracle_limit);
    if (j.contains("objective_kind")) {
      const std::string k = j.at("objective_kind").get<std::string>();
      if (k == "acc") {
        spec.objective_kind = ObjectiveKind::kAccuracy;
      } else if (k == "loss") {
        spec.objective_kind = ObjectiveKind::kLoss;
      } else {
        throw std::invalid_argument("objective_kind must be acc or loss");
      }
    }
    spec.check();
    return spec;
  } catch (const json::exception& e) {
    throw ParseError(std::string("sweep spec: ") + e.what());
  }
}

SweepSpec load_sweep_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_sweep_spec(buf.str());
}

Scenario sweep_scenario(const SweepSpec& spec, double value, std::uint64_t seed) {
  const std::string& p = spec.parameter;
  if (spec.motivating) {
    MotivatingOptions m = spec.motivating_options;
    if (p == "p_A") m.task_a_share = value;
    if (p == "nu_A") m.setup_cost_a = value;
    if (p == "T_b") m.batch_interval = value;
    if (p == "chi_kappa_e") m.uplink_scale = value;
    return motivating_preset(m);
  }
  GeneratorConfig g = spec.generator;
  g.seed = seed;
  if (p == "chi_kappa_e") g.edge_uplink_scale = value;
  if (p == "chi_kappa_s") g.cloud_uplink_scale = value;
  if (p == "chi_beta") g.compute_scale = value;
  if (p == "lambda_tot") g.total_rate = value;
  if (p == "T_b") g.batch_interval = value;
  return generate_scenario(g);
}

std::string csv_header() {
  return "scenario_digest,method,seed,sweep_param,sweep_value,objective,objective_kind,runtime_ms,max_violation,"
         "outer_iters,status";
}

std::string csv_row(const ExperimentResult& r) {
  std::ostringstream out;
  out << r.scenario_digest << ',' << r.method << ',' << r.seed << ',' << r.sweep_param << ','
      << format_double(r.sweep_value, 17) << ',' << format_double(r.objective, 17) << ','
      << objective_kind_name(r.objective_kind) << ',' << format_double(r.runtime_ms, 6) << ','
      << format_double(r.max_violation, 6) << ',' << r.outer_iters << ',' << csv_field(r.status);
  return out.str();
}

ExperimentResult run_experiment(const Scenario& s, const std::string& method, const AoConfig& cfg,
                                ObjectiveKind kind, long long oracle_limit) {
  ExperimentResult r;
  r.scenario_digest = canonical_hash(s);
  r.method = method;
  r.seed = cfg.seed;
  r.objective_kind = kind;
  try {
    BaselineResult b = run_method(method, s, cfg, oracle_limit);
    r.method = b.method;
    r.runtime_ms = b.runtime_ms;
    r.outer_iters = b.outer_iterations;
    r.objective = kind == ObjectiveKind::kLoss ? eval_loss_objective(s, b.plan).total : b.objective;
    r.max_violation = validate_plan(s, b.plan).max_violation();
    r.plan = std::move(b.plan);
  } catch (const std::exception& e) {
    r.status = std::string("error: ") + e.what();
  }
  return r;
}

std::vector<ExperimentResult> run_sweep(const SweepSpec& spec, std::ostream& out, const SweepOptions& options) {
  spec.check();
  const long long P = static_cast<long long>(spec.values.size());
  const long long S = static_cast<long long>(spec.seeds.size());
  const long long K = static_cast<long long>(spec.methods.size());
  const long long total = P * S * K;
  const ObjectiveKind kind = spec.objective_kind.value_or(
      spec.motivating ? ObjectiveKind::kAccuracy
                      : (spec.generator.preset == "custom" && spec.generator.custom ? spec.generator.custom->objective
                                                                                   : device_preset(spec.generator.preset).objective));
  if (options.artifacts_dir) std::filesystem::create_directories(*options.artifacts_dir);

  std::vector<ExperimentResult> results(total);
  out << csv_header() << '\n';
  const bool parallel = options.execution == Execution::kParallel && total > 1;
  const int threads = parallel ? worker_threads() : 1;

#pragma omp parallel for ordered schedule(dynamic, 1) num_threads(threads) if (parallel)
  for (long long i = 0; i < total; ++i) {
    const long long p = i / (S * K), k = i % K;
    const std::uint64_t seed = spec.seeds[(i / K) % S];
    ExperimentResult r;
    try {
      const Scenario s = sweep_scenario(spec, spec.values[p], seed);
      AoConfig cfg = spec.ao;
      cfg.seed = seed;
      r = run_experiment(s, spec.methods[k], cfg, kind, spec.oracle_limit);
      if (options.artifacts_dir) {
        const std::string stem = *options.artifacts_dir + "/row" + std::to_string(i);
        if (k == 0) save_scenario(s, *options.artifacts_dir + "/point" + std::to_string(p) + "_seed" +
                                         std::to_string(seed) + ".json");
        if (r.plan) {
          std::ofstream plan_out(stem + ".plan");
          write_plan(*r.plan, plan_out);
        }
      }
    } catch (const std::exception& e) {
      r.method = spec.methods[k];
      r.seed = seed;
      r.objective_kind = kind;
      r.status = std::string("error: ") + e.what();
    }
    r.sweep_param = spec.parameter;
    r.sweep_value = spec.values[p];
    results[i] = std::move(r);
#pragma omp ordered
    {
      out << csv_row(results[i]) << '\n';
      out.flush();
    }
  }
  return results;
}

std::vector<ExperimentResult> run_sweep(const SweepSpec& spec, const std::string& csv_path,
                                        const SweepOptions& options) {
  std::ofstream out(csv_path);
  if (!out) throw std::runtime_error("cannot write " + csv_path);
  return run_sweep(spec, out, options);
}

}  // namespace hio
