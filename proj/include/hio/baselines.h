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

#ifndef HIO_BASELINES_H_
#define HIO_BASELINES_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hio/alternating.h"
#include "hio/onload.h"
#include "hio/parallel.h"
#include "hio/plan.h"
#include "hio/scenario.h"

namespace hio {

struct BaselineResult {
  std::string method;
  Plan plan;
  double objective = 0;
  double runtime_ms = 0;
  int outer_iterations = 0;       // AO methods
  AoTrace trace;                  // AO methods
  long long configurations = 0;   // oracle: onloading combinations solved
  long long memory_feasible = 0;  // oracle: product of per-node memory-feasible subset counts
};

class OracleTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr long long kDefaultOracleLimit = 1'000'000;

// Every subset of the model library that fits the node's memory, in
// increasing bitmask order (the empty set first). Throws OracleTooLarge past
// `limit` subsets.
std::vector<std::vector<int>> memory_feasible_subsets(const Scenario& s, NodeRef node, long long limit);

// Drops subsets whose induced best assignment is weakly dominated task by
// task (accuracy >=, compute <=, setup cost <=) by another subset's; among
// identical profiles the first subset is kept.
std::vector<std::vector<int>> prune_dominated(const Scenario& s, NodeRef node,
                                              const std::vector<std::vector<int>>& subsets);

struct OracleOptions {
  long long limit = kDefaultOracleLimit;
  bool prune = true;
  Execution execution = Execution::kParallel;
};

// Exhaustive search: every combination of (pruned) memory-feasible node
// subsets with the accuracy-best assignment, each solved by the offloading
// LP; batching scenarios solve one exact LP per launch set of the edge tasks.
// Ties keep the first combination in enumeration order, so serial and
// parallel runs return the same plan. Throws OracleTooLarge("instance too
// large for oracle") when the product of memory-feasible subset counts
// exceeds the limit.
BaselineResult minlp_oracle(const Scenario& s, const OracleOptions& options = {});

// Best exact offloading for a fixed onloading (the oracle's inner step).
// Returns false when no feasible offloading exists.
bool exact_offloading(const Scenario& s, const Onloading& onload, Offloading& out, double& objective);

// AO with plain ratio-greedy onloading (memory only, no multipliers).
BaselineResult greedy_ao(const Scenario& s, const AoConfig& cfg = {});
// AO with per-node exhaustive onloading at fixed offloading: the largest
// coverage subset under memory (the exact version of greedy_ao's step); the
// LP step enforces compute.
BaselineResult opt_ao(const Scenario& s, const AoConfig& cfg = {}, long long limit = kDefaultOracleLimit);
// AO with random memory-feasible onloading (random permutation, longest
// fitting prefix), cfg.seed driven; runs all cfg.max_iterations.
BaselineResult rand_ao(const Scenario& s, const AoConfig& cfg = {});
// No offloading; each client picks its best subset under memory and compute.
BaselineResult full_local(const Scenario& s, long long limit = kDefaultOracleLimit);

// Wrapped J3O / BAJ3O (chosen by scenario mode).
BaselineResult run_j3o(const Scenario& s, const AoConfig& cfg = {});

// Method tags: j3o, baj3o, greedy_ao, opt_ao, rand_ao, full_local, oracle.
// AO methods run in batching mode on batching scenarios ("j3o" then means
// BAJ3O). Throws std::invalid_argument on an unknown tag.
BaselineResult run_method(const std::string& method, const Scenario& s, const AoConfig& cfg = {},
                          long long oracle_limit = kDefaultOracleLimit);
const std::vector<std::string>& method_names();
bool is_known_method(const std::string& method);

}  // namespace hio

#endif  // HIO_BASELINES_H_
