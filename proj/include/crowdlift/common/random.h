/*
 * Copyright 2026 The Crowdlift Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CROWDLIFT_COMMON_RANDOM_H_
#define CROWDLIFT_COMMON_RANDOM_H_

#include <cstdint>
#include <random>
#include <vector>

namespace crowdlift {

// std::mt19937_64 is fully specified by the standard, the distributions are
// not. These helpers keep every draw identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t NextU64() { return engine_(); }
  // Uniform in [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // Uniform integer in [0, n), unbiased by rejection.
  std::uint64_t Below(std::uint64_t n);
  bool Bernoulli(double p) { return Uniform() < p; }
  // Standard normal via Box-Muller (no cached second value).
  double Normal();

  // First `k` entries of a seeded Fisher-Yates shuffle of [0, n).
  std::vector<std::size_t> SampleWithoutReplacement(std::size_t n, std::size_t k);

 private:
  std::mt19937_64 engine_;
};

// Derives an independent stream seed from a base seed and a stream label.
std::uint64_t DeriveSeed(std::uint64_t base, std::uint64_t stream);

}  // namespace crowdlift

#endif  // CROWDLIFT_COMMON_RANDOM_H_
