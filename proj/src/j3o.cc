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

#include "hio/j3o.h"

#include <stdexcept>

#include "hio/objective.h"

namespace hio {

AoResult j3o(const Scenario& s, const AoConfig& cfg) {
  if (s.mode != Mode::kPlain) throw std::invalid_argument("j3o needs a plain-mode scenario; use baj3o");
  AoConfig plain = cfg;
  plain.batching = false;
  const GreedyLrOptions greedy = cfg.greedy;
  const CandidateStep step = [&greedy](const OnloadContext& ctx) {
    return greedy_lr_candidates(ctx.scenario, ctx.current.offload, greedy, EdgeCostModel::kCompute);
  };
  return run_alternating(s, plain, step);
}

AoResult baj3o(const Scenario& s, const AoConfig& cfg) {
  if (!s.has_batching_parameters()) throw ValidationError("batching parameters missing");
  AoConfig batching = cfg;
  batching.batching = true;
  const GreedyLrOptions greedy = cfg.greedy;
  const CandidateStep step = [&greedy](const OnloadContext& ctx) {
    return greedy_lr_candidates(ctx.scenario, ctx.current.offload, greedy, EdgeCostModel::kSurrogate,
                                ctx.surrogate);
  };
  AoResult result = run_alternating(s, batching, step);

  // Every accepted plan was checked against the exact latency constraint;
  // this guards the initial plan as well.
  if (auto repaired = repair_batching(s, result.plan.onload, result.plan.offload)) {
    if (!(*repaired == result.plan.offload)) {
      result.plan.offload = std::move(*repaired);
      result.objective = objective_value(s, result.plan.onload, result.plan.offload);
    }
  }
  return result;
}

}  // namespace hio
