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

#include "disfix/classifier.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "disfix/error.hpp"

namespace disfix {

std::string_view type_name(DisfluencyType type) {
  switch (type) {
    case DisfluencyType::kFiller:
      return "Filler";
    case DisfluencyType::kRepetition:
      return "Repetition";
    case DisfluencyType::kCorrection:
      return "Correction";
    case DisfluencyType::kFalseStart:
      return "FalseStart";
    case DisfluencyType::kFluent:
      return "Fluent";
  }
  return "Fluent";
}

DisfluencyType parse_type(std::string_view name) {
  for (auto t : kAllTypes) {
    if (type_name(t) == name) return t;
  }
  throw ParseError("unknown disfluency type '" + std::string(name) + "'");
}

std::string_view verdict_name(Verdict v) {
  return v == Verdict::kFluent ? "fluent" : "disfluent";
}

std::size_t TypeHistogram::total() const {
  std::size_t n = 0;
  for (auto c : counts) n += c;
  return n;
}

TypeHistogram& TypeHistogram::operator+=(const TypeHistogram& other) {
  for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
  return *this;
}

TypeHistogram classify_spans(std::span<const DisfluencySpan> spans) {
  std::vector<const DisfluencySpan*> sorted;
  sorted.reserve(spans.size());
  for (const auto& s : spans) {
    if (s.type == DisfluencyType::kFluent) {
      throw ContractViolation("span typed Fluent");
    }
    if (s.end < s.start) throw ContractViolation("span with end < start");
    sorted.push_back(&s);
  }
  std::sort(sorted.begin(), sorted.end(),
            [](auto* a, auto* b) { return a->start < b->start; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i]->start < sorted[i - 1]->end) {
      throw ContractViolation(
          "overlapping spans [" + std::to_string(sorted[i - 1]->start) + "," +
          std::to_string(sorted[i - 1]->end) + ") and [" +
          std::to_string(sorted[i]->start) + "," +
          std::to_string(sorted[i]->end) + ")");
    }
  }
  TypeHistogram hist;
  for (const auto& s : spans) hist[s.type] += s.length();
  return hist;
}

int severity(DisfluencyType type) {
  switch (type) {
    case DisfluencyType::kCorrection:
      return 4;
    case DisfluencyType::kFalseStart:
      return 3;
    case DisfluencyType::kRepetition:
      return 2;
    case DisfluencyType::kFiller:
      return 1;
    case DisfluencyType::kFluent:
      return 0;
  }
  return 0;
}

DisfluencyType classify_utterance(const TypeHistogram& hist) {
  if (hist.total() == 0) return DisfluencyType::kFluent;
  // Visit in descending severity so a strict comparison keeps the winner of
  // any tie.
  static constexpr DisfluencyType kBySeverity[] = {
      DisfluencyType::kCorrection, DisfluencyType::kFalseStart,
      DisfluencyType::kRepetition, DisfluencyType::kFiller};
  DisfluencyType best = kBySeverity[0];
  for (auto t : kBySeverity) {
    if (hist[t] > hist[best]) best = t;
  }
  return best;
}

}  // namespace disfix
