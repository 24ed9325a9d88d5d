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

#include "hio/baselines.h"

#include <algorithm>
#include <chrono>
#include <limits>

#include "hio/j3o.h"
#include "hio/objective.h"
#include "hio/offload_lp.h"
#include "hio/rng.h"

namespace hio {
namespace {

using Clock = std::chrono::steady_clock;

double since_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

double node_memory(const Scenario& s, NodeRef node, int m) {
  return node.kind == NodeKind::kClient ? s.client_memory(m) : s.edge_memory(m);
}

double node_budget(const Scenario& s, NodeRef node) {
  return node.kind == NodeKind::kClient ? s.topology.clients[node.index].memory_bytes
                                        : s.topology.edges[node.index].memory_bytes;
}

// Accuracy-best assignment of one node for a given model set.
std::vector<int> best_assignment(const Scenario& s, NodeRef node, const std::vector<int>& models) {
  Onloading tmp = Onloading::empty(s);
  tmp.models(node) = models;
  assign_best(s, tmp);
  return tmp.assign(node);
}

struct Profile {
  std::vector<double> accuracy, compute, setup;
};

Profile profile_of(const Scenario& s, NodeRef node, const std::vector<int>& models) {
  const std::vector<int> assign = best_assignment(s, node, models);
  Profile p;
  for (int t = 0; t < s.num_tasks(); ++t) {
    const int m = assign[t];
    p.accuracy.push_back(node.kind == NodeKind::kClient ? s.client_accuracy(node.index, m, t)
                                                        : s.edge_accuracy(node.index, m, t));
    p.compute.push_back(s.compute_cost(m));
    p.setup.push_back(node.kind == NodeKind::kEdge ? s.setup_cost(m, node.index) : 0.0);
  }
  return p;
}

// a weakly dominates b.
bool dominates(const Profile& a, const Profile& b) {
  for (size_t t = 0; t < a.accuracy.size(); ++t) {
    if (a.accuracy[t] < b.accuracy[t] || a.compute[t] > b.compute[t] || a.setup[t] > b.setup[t]) return false;
  }
  return true;
}

// Per-node exhaustive choice at fixed offloading: the largest coverage whose
// true load fits, among `subsets` (which must start with the empty set).
NodeSelection best_feasible_subset(const NodeProblem& p, const std::vector<std::vector<int>>& subsets,
                                   bool check_load = true) {
  NodeSelection best = NodeSelection::empty(p);
  double best_coverage = 0;
  for (const auto& subset : subsets) {
    NodeSelection sel = select_models(p, subset);
    if (check_load && sel.true_load(p) > 1.0) continue;
    const double coverage = sel.coverage(p);
    if (coverage > best_coverage) {
      best = std::move(sel);
      best_coverage = coverage;
    }
  }
  return best;
}

BaselineResult from_ao(std::string method, AoResult ao, Clock::time_point start) {
  BaselineResult r;
  r.method = std::move(method);
  r.plan = std::move(ao.plan);
  r.objective = ao.objective;
  r.outer_iterations = ao.trace.iterations();
  r.trace = std::move(ao.trace);
  r.runtime_ms = since_ms(start);
  return r;
}

AoConfig mode_config(const Scenario& s, const AoConfig& cfg) {
  AoConfig out = cfg;
  out.batching = s.mode == Mode::kBatching;
  return out;
}

}  // namespace

std::vector<std::vector<int>> memory_feasible_subsets(const Scenario& s, NodeRef node, long long limit) {
  const int M = s.num_models();
  const double budget = node_budget(s, node);
  std::vector<std::vector<int>> out;
  // Depth-first over models in index order; the result is then sorted by
  // bitmask so the order is canonical.
  std::vector<std::pair<unsigned long long, std::vector<int>>> found;
  std::vector<int> current;
  auto visit = [&](auto&& self, int next, double used, unsigned long long mask) -> void {
    found.emplace_back(mask, current);
    if (static_cast<long long>(found.size()) > limit) throw OracleTooLarge("instance too large for oracle");
    for (int m = next; m < M; ++m) {
      const double need = used + node_memory(s, node, m);
      if (need > budget) continue;
      current.push_back(m);
      self(self, m + 1, need, mask | (1ull << m));
      current.pop_back();
    }
  };
  if (M > 63) throw OracleTooLarge("instance too large for oracle");
  visit(visit, 0, 0.0, 0ull);
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  out.reserve(found.size());
  for (auto& f : found) out.push_back(std::move(f.second));
  return out;
}

std::vector<std::vector<int>> prune_dominated(const Scenario& s, NodeRef node,
                                              const std::vector<std::vector<int>>& subsets) {
  const size_t K = subsets.size();
  std::vector<Profile> profiles;
  profiles.reserve(K);
  for (const auto& subset : subsets) profiles.push_back(profile_of(s, node, subset));
  std::vector<std::vector<int>> out;
  for (size_t i = 0; i < K; ++i) {
    bool dropped = false;
    for (size_t j = 0; j < K && !dropped; ++j) {
      if (i == j || !dominates(profiles[j], profiles[i])) continue;
      // Mutual dominance means identical profiles: keep the earlier subset.
      dropped = !dominates(profiles[i], profiles[j]) || j < i;
    }
    if (!dropped) out.push_back(subsets[i]);
  }
  return out;
}

bool exact_offloading(const Scenario& s, const Onloading& onload, Offloading& out, double& objective) {
  if (s.mode != Mode::kBatching) {
    OffloadingResult r = solve_offloading(s, onload);
    if (r.status != LpStatus::kOptimal) return false;
    out = std::move(r.offload);
    objective = objective_value(s, onload, out);
    return true;
  }

  // Enumerate which edge tasks launch a batch.
  std::vector<std::pair<int, int>> slots;
  for (int e = 0; e < s.num_edges(); ++e) {
    for (int t = 0; t < s.num_tasks(); ++t) {
      if (onload.edge_assign[e][t] != kNullModel) slots.emplace_back(e, t);
    }
  }
  if (slots.size() > 20) throw OracleTooLarge("instance too large for oracle");
  std::vector<std::vector<bool>> launched(s.num_edges(), std::vector<bool>(s.num_tasks(), false));
  OffloadingLpOptions options;
  options.capacity = EdgeCapacityModel::kFixedIndicator;
  options.launched = &launched;
  bool found = false;
  for (unsigned long long mask = 0; mask < (1ull << slots.size()); ++mask) {
    for (size_t i = 0; i < slots.size(); ++i) launched[slots[i].first][slots[i].second] = (mask >> i) & 1u;
    OffloadingResult r = solve_offloading(s, onload, options);
    if (r.status != LpStatus::kOptimal) continue;
    const double value = objective_value(s, onload, r.offload);
    if (!found || value > objective) {
      out = std::move(r.offload);
      objective = value;
      found = true;
    }
  }
  return found;
}

BaselineResult minlp_oracle(const Scenario& s, const OracleOptions& options) {
  const auto start = Clock::now();
  const std::vector<NodeRef> nodes = all_nodes(s);
  const int V = static_cast<int>(nodes.size());

  std::vector<std::vector<std::vector<int>>> choices(V);
  std::vector<std::vector<std::vector<int>>> assigns(V);
  double memory_feasible = 1;
  for (int v = 0; v < V; ++v) {
    choices[v] = memory_feasible_subsets(s, nodes[v], options.limit);
    memory_feasible *= static_cast<double>(choices[v].size());
    if (memory_feasible > static_cast<double>(options.limit)) throw OracleTooLarge("instance too large for oracle");
  }
  long long total = 1;
  for (int v = 0; v < V; ++v) {
    if (options.prune) choices[v] = prune_dominated(s, nodes[v], choices[v]);
    for (const auto& subset : choices[v]) assigns[v].push_back(best_assignment(s, nodes[v], subset));
    total *= static_cast<long long>(choices[v].size());
  }

  auto decode = [&](long long index) {
    Onloading on = Onloading::empty(s);
    for (int v = V - 1; v >= 0; --v) {
      const long long radix = static_cast<long long>(choices[v].size());
      const long long pick = index % radix;
      index /= radix;
      on.models(nodes[v]) = choices[v][pick];
      on.assign(nodes[v]) = assigns[v][pick];
    }
    return on;
  };

  struct Best {
    long long index = -1;
    double value = -std::numeric_limits<double>::infinity();
    Offloading offload;
  };
  auto better = [](double value, long long index, const Best& b) {
    return value > b.value || (value == b.value && b.index >= 0 && index < b.index);
  };

  Best best;
  const bool parallel = options.execution == Execution::kParallel && total > 1;
  const int threads = parallel ? worker_threads() : 1;
#pragma omp parallel num_threads(threads) if (parallel)
  {
    Best local;
#pragma omp for schedule(dynamic, 16)
    for (long long i = 0; i < total; ++i) {
      const Onloading on = decode(i);
      Offloading o;
      double value = 0;
      if (!exact_offloading(s, on, o, value)) continue;
      if (local.index < 0 || better(value, i, local)) local = Best{i, value, std::move(o)};
    }
#pragma omp critical(hio_oracle_reduce)
    {
      if (local.index >= 0 && (best.index < 0 || better(local.value, local.index, best))) best = std::move(local);
    }
  }

  BaselineResult r;
  r.method = "oracle";
  r.configurations = total;
  r.memory_feasible = static_cast<long long>(memory_feasible);
  if (best.index >= 0) {
    r.plan = Plan{decode(best.index), std::move(best.offload)};
    r.objective = best.value;
  } else {
    r.plan = Plan{Onloading::empty(s), Offloading::zeros(s)};
    r.objective = 0;
  }
  r.runtime_ms = since_ms(start);
  return r;
}

BaselineResult greedy_ao(const Scenario& s, const AoConfig& cfg) {
  const auto start = Clock::now();
  const AoConfig c = mode_config(s, cfg);
  const bool seeded = cfg.greedy.seeded;
  AoResult ao = run_alternating(s, c, [seeded](const OnloadContext& ctx) {
    Onloading on = Onloading::empty(ctx.scenario);
    for (NodeRef node : all_nodes(ctx.scenario)) {
      const NodeProblem p = make_node_problem(ctx.scenario, node, ctx.current.offload);
      apply_selection(on, node, greedy_node_select(p, 0.0, nullptr, seeded));
    }
    return on;
  });
  return from_ao("greedy_ao", std::move(ao), start);
}

BaselineResult opt_ao(const Scenario& s, const AoConfig& cfg, long long limit) {
  const auto start = Clock::now();
  const AoConfig c = mode_config(s, cfg);
  const std::vector<NodeRef> nodes = all_nodes(s);
  std::vector<std::vector<std::vector<int>>> subsets;
  for (NodeRef node : nodes) subsets.push_back(prune_dominated(s, node, memory_feasible_subsets(s, node, limit)));
  // The exact counterpart of greedy_ao's step: per node, the memory-feasible
  // subset of largest coverage at the current offloading; the LP then
  // enforces compute.
  AoResult ao = run_alternating(s, c, [&](const OnloadContext& ctx) {
    Onloading on = Onloading::empty(ctx.scenario);
    for (size_t v = 0; v < nodes.size(); ++v) {
      const NodeProblem p = make_node_problem(ctx.scenario, nodes[v], ctx.current.offload);
      apply_selection(on, nodes[v], best_feasible_subset(p, subsets[v], /*check_load=*/false));
    }
    return on;
  });
  return from_ao("opt_ao", std::move(ao), start);
}

BaselineResult rand_ao(const Scenario& s, const AoConfig& cfg) {
  const auto start = Clock::now();
  const AoConfig c = mode_config(s, cfg);
  AoResult ao = run_alternating(
      s, c,
      [&cfg](const OnloadContext& ctx) {
        const Scenario& sc = ctx.scenario;
        CounterRng rng(cfg.seed, static_cast<std::uint64_t>(ctx.iteration));
        Onloading on = Onloading::empty(sc);
        for (NodeRef node : all_nodes(sc)) {
          const double budget = node_budget(sc, node);
          double used = 0;
          std::vector<int> chosen;
          for (int m : rng.permutation(sc.num_models())) {
            used += node_memory(sc, node, m);
            if (used > budget) break;
            chosen.push_back(m);
          }
          std::sort(chosen.begin(), chosen.end());
          on.models(node) = std::move(chosen);
        }
        assign_best(sc, on);
        return on;
      },
      /*stop_on_stall=*/false);
  return from_ao("rand_ao", std::move(ao), start);
}

BaselineResult full_local(const Scenario& s, long long limit) {
  const auto start = Clock::now();
  const Offloading none = Offloading::zeros(s);
  Onloading on = Onloading::empty(s);
  for (int c = 0; c < s.num_clients(); ++c) {
    const NodeRef node{NodeKind::kClient, c};
    const NodeProblem p = make_node_problem(s, node, none);
    const auto subsets = prune_dominated(s, node, memory_feasible_subsets(s, node, limit));
    apply_selection(on, node, best_feasible_subset(p, subsets));
  }
  BaselineResult r;
  r.method = "full_local";
  r.objective = objective_value(s, on, none);
  r.plan = Plan{std::move(on), none};
  r.runtime_ms = since_ms(start);
  return r;
}

BaselineResult run_j3o(const Scenario& s, const AoConfig& cfg) {
  const auto start = Clock::now();
  if (s.mode == Mode::kBatching) return from_ao("baj3o", baj3o(s, cfg), start);
  return from_ao("j3o", j3o(s, cfg), start);
}

const std::vector<std::string>& method_names() {
  static const std::vector<std::string> names = {"j3o",     "baj3o",   "greedy_ao", "opt_ao",
                                                 "rand_ao", "full_local", "oracle"};
  return names;
}

bool is_known_method(const std::string& method) {
  const auto& names = method_names();
  return std::find(names.begin(), names.end(), method) != names.end();
}

BaselineResult run_method(const std::string& method, const Scenario& s, const AoConfig& cfg,
                          long long oracle_limit) {
  if (method == "j3o" || method == "baj3o") return run_j3o(s, cfg);
  if (method == "greedy_ao") return greedy_ao(s, cfg);
  if (method == "opt_ao") return opt_ao(s, cfg, oracle_limit);
  if (method == "rand_ao") return rand_ao(s, cfg);
  if (method == "full_local") return full_local(s, oracle_limit);
  if (method == "oracle") {
    OracleOptions options;
    options.limit = oracle_limit;
    return minlp_oracle(s, options);
  }
  throw std::invalid_argument("unknown method: " + method);
}

}  // namespace hio
