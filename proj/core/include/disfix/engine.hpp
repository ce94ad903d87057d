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

// Rule-based disfluency correction.
//
// Every word token of a transcript is labeled fluent or disfluent by four
// detectors that run in a fixed order, each seeing the tokens claimed by the
// ones before it:
//
//   Filler      lexicon hits ("um", "uh"), adjacent hits merged
//   Repetition  immediately repeated word n-grams, longest n first; every copy
//               but the last is removed
//   Correction  reparandum + editing term ("left I mean right"); the repair
//               after the editing term is kept
//   FalseStart  an abandoned utterance-initial fragment, marked either by a
//               truncated word ("wa-") or by a restart of the opening phrase
//
// correct() removes the disfluent words and re-runs the detectors on its own
// output until nothing more is removed.

#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "disfix/classifier.hpp"
#include "disfix/lexicon.hpp"
#include "disfix/text.hpp"
#include "disfix/types.hpp"

namespace disfix {

/// Per-token "already labeled disfluent" flags, indexed by token index. An
/// empty mask means nothing is claimed.
using ClaimMask = std::vector<bool>;

std::vector<DisfluencySpan> detect_fillers(const Transcript& t,
                                           const DetectorConfig& cfg,
                                           const ClaimMask& claimed = {});

/// Claimed tokens (fillers) are skipped when testing adjacency, so
/// "to um to" is an immediate repeat. Editing terms that could start a
/// correction are left for detect_corrections.
std::vector<DisfluencySpan> detect_repetitions(const Transcript& t,
                                               const DetectorConfig& cfg,
                                               const ClaimMask& claimed = {});

/// Fires on an editing term with at least one unclaimed word on each side.
/// The reparandum is the shortest run ending at the term whose first word
/// matches the first repair word (bounded by max_repeat_ngram and the repair
/// length); without such a match it is the single word before the term.
std::vector<DisfluencySpan> detect_corrections(const Transcript& t,
                                               const DetectorConfig& cfg,
                                               const ClaimMask& claimed = {});

/// Looks only at the first false_start_window unclaimed words. A truncated
/// word (ending in '-') followed by more speech removes everything up to and
/// including the last truncation in the window. Otherwise a restart - the
/// opening two or more words recurring at position j and continuing past 2j
/// words in total - removes the first j words.
std::vector<DisfluencySpan> detect_false_starts(const Transcript& t,
                                                const DetectorConfig& cfg,
                                                const ClaimMask& claimed = {});

/// Runs all detectors in order. Returns one label per word token and the
/// merged spans sorted by start.
std::pair<std::vector<TokenLabel>, std::vector<DisfluencySpan>> label_tokens(
    const Transcript& t, const DetectorConfig& cfg);

/// Keeps fluent words plus punctuation whose preceding word survived (or that
/// has no preceding word). Throws ContractViolation unless `labels` holds
/// exactly one label per word token, in token order.
Transcript apply_removal(const Transcript& t, std::span<const TokenLabel> labels);

struct CorrectionResult {
  Transcript source;
  /// One label per source word token, covering removals from every pass.
  std::vector<TokenLabel> labels;
  /// Spans found on the source transcript (first pass).
  std::vector<DisfluencySpan> spans;
  Transcript fluent;
  /// Removed words per type, summed over all passes.
  TypeHistogram histogram;
  DisfluencyType utterance_type = DisfluencyType::kFluent;
  std::size_t disfluency_count = 0;
  /// Passes that removed at least one word.
  int passes = 0;
};

/// Labels, removes and classifies, repeating on the fluent output until a
/// pass removes nothing.
CorrectionResult correct(const Transcript& t, const DetectorConfig& cfg);

/// Source word count minus fluent word count.
std::size_t disfluency_count(const CorrectionResult& result);

}  // namespace disfix
