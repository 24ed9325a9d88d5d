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

#ifndef HIO_PARALLEL_H_
#define HIO_PARALLEL_H_

namespace hio {

// Kernels that have an OpenMP path keep a plain serial one next to it; tests
// check they agree exactly.
enum class Execution { kSerial, kParallel };

// Worker cap: HIO_THREADS when set to a positive integer, else the OpenMP
// default (available cores).
int worker_threads();

}  // namespace hio

#endif  // HIO_PARALLEL_H_
