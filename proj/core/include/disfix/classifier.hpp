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

#include <array>
#include <cstddef>
#include <span>

#include "disfix/types.hpp"

namespace disfix {

/// Removed-word counts per disfluent class.
struct TypeHistogram {
  std::array<std::size_t, 4> counts{};

  std::size_t& operator[](DisfluencyType t) {
    return counts[static_cast<std::size_t>(t)];
  }
  std::size_t operator[](DisfluencyType t) const {
    return counts[static_cast<std::size_t>(t)];
  }
  std::size_t total() const;
  TypeHistogram& operator+=(const TypeHistogram& other);
  bool operator==(const TypeHistogram&) const = default;
};

/// Sums span lengths per type. Throws ContractViolation when spans overlap
/// or a span is typed Fluent.
TypeHistogram classify_spans(std::span<const DisfluencySpan> spans);

/// Fluent when nothing was removed; otherwise the class with the most removed
/// words. Ties go to the more severe class:
/// Correction > FalseStart > Repetition > Filler.
DisfluencyType classify_utterance(const TypeHistogram& hist);

/// Tie-break rank, higher wins.
int severity(DisfluencyType type);

}  // namespace disfix
