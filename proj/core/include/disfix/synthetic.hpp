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

// Synthetic disfluent corpora with gold token labels, and token-level
// scoring of any labeler against them.

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "disfix/lexicon.hpp"
#include "disfix/text.hpp"
#include "disfix/types.hpp"

namespace disfix {

struct AnnotatedUtterance {
  std::vector<std::string> tokens;
  /// Gold class per token; Fluent for words of the seed sentence.
  std::vector<DisfluencyType> labels;
  Language lang = Language::kEnglish;
  std::string seed_text;
  /// Which injector produced the utterance (Fluent when left untouched).
  DisfluencyType injection = DisfluencyType::kFluent;

  /// Tokens whose gold label is Fluent.
  std::vector<std::string> gold_fluent_tokens() const;
  bool operator==(const AnnotatedUtterance&) const = default;
};

/// Inserts 1-3 fillers drawn from the lexicon at word boundaries.
AnnotatedUtterance inject_filler(std::span<const std::string> words,
                                 Language lang, std::uint64_t seed,
                                 const DetectorConfig& cfg);

/// Repeats an n-gram (n <= max_repeat_ngram) in place with 1-2 extra copies.
/// `ngram` and `extra_copies` pin the shape; otherwise both are drawn.
AnnotatedUtterance inject_repetition(
    std::span<const std::string> words, Language lang, std::uint64_t seed,
    const DetectorConfig& cfg, std::optional<std::size_t> ngram = {},
    std::optional<std::size_t> extra_copies = {});

/// "... <distractor> <editing term> <word> ...". The distractor never equals
/// the corrected word or the word before it.
AnnotatedUtterance inject_correction(std::span<const std::string> words,
                                     Language lang, std::uint64_t seed,
                                     const DetectorConfig& cfg);

/// Prepends the first 1-3 words with the last one truncated and suffixed
/// with '-'.
AnnotatedUtterance inject_false_start(std::span<const std::string> words,
                                      Language lang, std::uint64_t seed,
                                      const DetectorConfig& cfg);

/// Share of the corpus per injection type, indexed by DisfluencyType
/// (Fluent = left untouched).
struct Mix {
  std::array<double, 5> share{};

  double& operator[](DisfluencyType t) {
    return share[static_cast<std::size_t>(t)];
  }
  double operator[](DisfluencyType t) const {
    return share[static_cast<std::size_t>(t)];
  }

  /// Throws ConfigError unless shares are non-negative and sum to 1 +- 1e-9.
  void validate() const;

  /// "Filler=0.5,Repetition=0.5". Unlisted types get 0.
  static Mix parse(std::string_view text);
  static Mix uniform_disfluent();
};

/// Largest-remainder apportionment of `n` items; ties go to the type listed
/// first in kAllTypes.
std::array<std::size_t, 5> quota(std::size_t n, const Mix& mix);

struct CorpusOptions {
  /// Number of utterances; 0 means one per seed sentence.
  std::size_t count = 0;
  Mix mix = Mix::uniform_disfluent();
  std::uint64_t rng_seed = 0;
  Language lang = Language::kEnglish;
};

/// Utterance i uses seed sentence i mod |seeds| and an RNG stream derived
/// from (rng_seed, i). Types are assigned by quota, then shuffled.
std::vector<AnnotatedUtterance> generate_corpus(
    std::span<const std::string> seeds, const CorpusOptions& options,
    const DetectorConfig& cfg);

/// Token-level scores with disfluent as the positive class.
struct Prf {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tokens = 0;
  std::size_t utterances = 0;

  /// A group with no gold and no predicted positives scores 1.0 across the
  /// board; otherwise empty denominators score 0.
  double precision() const;
  double recall() const;
  double f1() const;

  Prf& operator+=(const Prf& other);
};

struct EvalReport {
  /// Keyed by injection type.
  std::map<DisfluencyType, Prf> per_type;
  Prf overall;
  std::size_t type_matches = 0;
  std::size_t corpus_size = 0;

  double utterance_type_accuracy() const;
  /// Adds another report's counts, as if both corpora were evaluated at once.
  void merge(const EvalReport& other);
};

/// Returns one label per word token of the transcript.
using Labeler = std::function<std::vector<TokenLabel>(const Transcript&)>;

/// Labeler backed by correct().
Labeler engine_labeler(const DetectorConfig& cfg);

/// Builds the transcript the labeler sees: every corpus token is a word.
Transcript utterance_transcript(const AnnotatedUtterance& u);

/// Throws ContractViolation naming the utterance when the labeler returns
/// the wrong number of labels.
EvalReport evaluate(std::span<const AnnotatedUtterance> gold,
                    const Labeler& labeler);

}  // namespace disfix
