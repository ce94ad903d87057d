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
#include <string>
#include <string_view>

namespace disfix {

/// The four disfluency classes plus Fluent. The numeric values of the four
/// disfluent classes index TypeHistogram.
enum class DisfluencyType {
  kFiller = 0,
  kRepetition = 1,
  kCorrection = 2,
  kFalseStart = 3,
  kFluent = 4,
};

inline constexpr std::array<DisfluencyType, 4> kDisfluentTypes = {
    DisfluencyType::kFiller, DisfluencyType::kRepetition,
    DisfluencyType::kCorrection, DisfluencyType::kFalseStart};

inline constexpr std::array<DisfluencyType, 5> kAllTypes = {
    DisfluencyType::kFiller, DisfluencyType::kRepetition,
    DisfluencyType::kCorrection, DisfluencyType::kFalseStart,
    DisfluencyType::kFluent};

/// "Filler", "Repetition", "Correction", "FalseStart", "Fluent".
std::string_view type_name(DisfluencyType type);

/// Inverse of type_name. Throws ParseError on unknown names.
DisfluencyType parse_type(std::string_view name);

enum class Verdict { kFluent, kDisfluent };

std::string_view verdict_name(Verdict v);

struct TokenLabel {
  std::size_t token_index = 0;
  Verdict verdict = Verdict::kFluent;
  /// Fluent iff verdict is kFluent.
  DisfluencyType type = DisfluencyType::kFluent;

  bool disfluent() const { return verdict == Verdict::kDisfluent; }
  bool operator==(const TokenLabel&) const = default;
};

/// Half-open run [start, end) of token indices. Spans produced by the engine
/// never contain punctuation, so end - start is the word count.
struct DisfluencySpan {
  std::size_t start = 0;
  std::size_t end = 0;
  DisfluencyType type = DisfluencyType::kFiller;
  std::string detector;

  std::size_t length() const { return end - start; }
  bool operator==(const DisfluencySpan&) const = default;
};

}  // namespace disfix
