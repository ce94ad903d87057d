// Copyright 2026 The Disfix Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

namespace disfix {

/// Reproducible random source used for corpus generation and seeded prompt
/// selection.
///
/// Engine: std::mt19937_64 (its output sequence is fixed by the C++
/// standard). Per-stream seeds are derived with the SplitMix64 finalizer.
/// Bounded integers use rejection sampling on the raw 64-bit output
/// (`below`), never std::uniform_int_distribution, whose algorithm varies
/// between standard libraries. Any implementation following these three
/// rules reproduces the same corpora.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Seed for sub-stream `stream` of a run seeded with `seed`.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). `bound` must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform integer in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
    return lo + below(hi - lo + 1);
  }

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 output function.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace disfix
