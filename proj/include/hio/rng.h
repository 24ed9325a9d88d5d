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

#ifndef HIO_RNG_H_
#define HIO_RNG_H_

#include <array>
#include <cstdint>
#include <vector>

namespace hio {

// Philox4x32-10 counter-based generator. The 64-bit seed is the key, the stream id fills the upper half
// of the 128-bit counter, and the lower half counts blocks. Each block yields
// four 32-bit words; 64-bit draws take two consecutive words, low word first.
// The stream is fully specified by (seed, stream), so any implementation of
// the same algorithm reproduces it.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint32_t next_u32();
  std::uint64_t next_u64();
  // 53-bit uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform integer in [0, n) by rejection (unbiased). n must be > 0.
  std::uint64_t below(std::uint64_t n);
  // Standard normal by the polar Box-Muller method (the spare is cached).
  double normal();
  // Gamma(shape, 1): Marsaglia-Tsang, with the shape < 1 boost
  // Gamma(a) = Gamma(a + 1) * U^(1/a).
  double gamma(double shape);
  // Normalized Gamma draws. All concentrations must be > 0.
  std::vector<double> dirichlet(const std::vector<double>& alpha);
  std::vector<double> dirichlet(double alpha, int n) { return dirichlet(std::vector<double>(n, alpha)); }
  // Fisher-Yates permutation of 0..n-1.
  std::vector<int> permutation(int n);

  // The raw block function, exposed for known-answer tests.
  static std::array<std::uint32_t, 4> philox(std::array<std::uint32_t, 4> counter,
                                             std::array<std::uint32_t, 2> key);

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> counter_;
  std::array<std::uint32_t, 4> block_{};
  int used_ = 4;
  bool has_spare_ = false;
  double spare_ = 0;
};

}  // namespace hio

#endif  // HIO_RNG_H_
