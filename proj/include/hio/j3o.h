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

#ifndef HIO_J3O_H_
#define HIO_J3O_H_

#include "hio/alternating.h"
#include "hio/scenario.h"

namespace hio {

// Alternates Greedy-LR onloading with the offloading LP on a plain-mode
// scenario (edge compute as FLOPs). Each outer iteration proposes the
// Greedy-LR onloading plus the distinct onloadings met along its subgradient
// path; the LP decides among those that pass the acceptance test. Throws
// std::invalid_argument on a batching scenario.
AoResult j3o(const Scenario& s, const AoConfig& cfg = {});

// Batching-aware variant: each outer iteration relinearizes the launch
// indicator at the current edge loads, runs Greedy-LR and the LP with the
// linearized latency constraint, and keeps only plans that satisfy the exact
// latency constraint. Throws ValidationError("batching parameters missing")
// when T_b or the setup costs are absent.
AoResult baj3o(const Scenario& s, const AoConfig& cfg = {});

}  // namespace hio

#endif  // HIO_J3O_H_
