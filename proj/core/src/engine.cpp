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

#include "disfix/engine.hpp"

#include <algorithm>
#include <string>

#include "disfix/error.hpp"

namespace disfix {

namespace {

constexpr const char* kFillerDetector = "filler-lexicon";
constexpr const char* kRepetitionDetector = "ngram-repeat";
constexpr const char* kCorrectionDetector = "editing-term";
constexpr const char* kTruncationDetector = "truncation";
constexpr const char* kRestartDetector = "restart";

struct Word {
  std::size_t token;
  std::string lower;
};

bool is_claimed(const ClaimMask& claimed, std::size_t token) {
  return token < claimed.size() && claimed[token];
}

// Unclaimed word tokens in order.
std::vector<Word> open_words(const Transcript& t, const ClaimMask& claimed) {
  std::vector<Word> out;
  for (std::size_t i = 0; i < t.tokens.size(); ++i) {
    if (t.tokens[i].is_word && !is_claimed(claimed, i)) {
      out.push_back({i, utf8::to_lower(t.tokens[i].text)});
    }
  }
  return out;
}

// Maximal runs of consecutive token indices.
std::vector<DisfluencySpan> to_spans(std::vector<std::size_t> tokens,
                                     DisfluencyType type,
                                     const char* detector) {
  std::sort(tokens.begin(), tokens.end());
  std::vector<DisfluencySpan> out;
  for (std::size_t tok : tokens) {
    if (!out.empty() && out.back().end == tok) {
      ++out.back().end;
    } else {
      out.push_back({tok, tok + 1, type, detector});
    }
  }
  return out;
}

struct TermHit {
  std::size_t pos;  // index into the word list
  std::size_t len;
};

// Editing-term occurrences, scanned left to right, longest term first at
// each position. Only occurrences with a word on both sides are returned.
std::vector<TermHit> find_editing_terms(const std::vector<Word>& words,
                                        const LanguageLexicon& lex) {
  std::vector<TermHit> hits;
  const std::size_t longest = lex.longest_editing_term();
  std::size_t i = 0;
  while (i < words.size()) {
    std::size_t matched = 0;
    for (std::size_t len = std::min(longest, words.size() - i); len > 0;
         --len) {
      for (const auto& term : lex.editing_terms) {
        if (term.size() != len) continue;
        bool eq = true;
        for (std::size_t k = 0; k < len && eq; ++k) {
          eq = words[i + k].lower == term[k];
        }
        if (eq) {
          matched = len;
          break;
        }
      }
      if (matched) break;
    }
    if (matched == 0) {
      ++i;
      continue;
    }
    if (i > 0 && i + matched < words.size()) hits.push_back({i, matched});
    i += matched;
  }
  return hits;
}

void check_config(const DetectorConfig& cfg) {
  if (cfg.max_repeat_ngram < 1 || cfg.false_start_window < 1) {
    throw ConfigError("detector windows must be >= 1");
  }
}

void claim(ClaimMask& mask, std::vector<TokenLabel>& per_token,
           const std::vector<DisfluencySpan>& spans) {
  for (const auto& s : spans) {
    for (std::size_t i = s.start; i < s.end; ++i) {
      mask[i] = true;
      per_token[i] = {i, Verdict::kDisfluent, s.type};
    }
  }
}

// Token indices kept by apply_removal.
std::vector<std::size_t> kept_tokens(const Transcript& t,
                                     std::span<const TokenLabel> labels) {
  const auto words = t.word_indices();
  if (labels.size() != words.size()) {
    throw ContractViolation("expected " + std::to_string(words.size()) +
                            " labels, got " + std::to_string(labels.size()));
  }
  std::vector<bool> removed(t.tokens.size(), false);
  for (std::size_t k = 0; k < words.size(); ++k) {
    if (labels[k].token_index != words[k]) {
      throw ContractViolation("label " + std::to_string(k) +
                              " refers to token " +
                              std::to_string(labels[k].token_index) +
                              ", expected " + std::to_string(words[k]));
    }
    removed[words[k]] = labels[k].disfluent();
  }
  std::vector<std::size_t> kept;
  bool prev_word_kept = true;
  for (std::size_t i = 0; i < t.tokens.size(); ++i) {
    if (t.tokens[i].is_word) {
      prev_word_kept = !removed[i];
      if (prev_word_kept) kept.push_back(i);
    } else if (prev_word_kept) {
      kept.push_back(i);
    }
  }
  return kept;
}

Transcript select_tokens(const Transcript& t,
                         const std::vector<std::size_t>& kept) {
  Transcript out;
  out.lang = t.lang;
  out.tokens.reserve(kept.size());
  for (std::size_t i : kept) out.tokens.push_back(t.tokens[i]);
  reindex(out.tokens);
  out.raw_text = detokenize(out);
  return out;
}

}  // namespace

std::vector<DisfluencySpan> detect_fillers(const Transcript& t,
                                           const DetectorConfig& cfg,
                                           const ClaimMask& claimed) {
  const auto& lex = cfg.lexicon(t.lang);
  std::vector<std::size_t> hits;
  for (const auto& w : open_words(t, claimed)) {
    if (lex.is_filler(w.lower)) hits.push_back(w.token);
  }
  return to_spans(std::move(hits), DisfluencyType::kFiller, kFillerDetector);
}

std::vector<DisfluencySpan> detect_repetitions(const Transcript& t,
                                               const DetectorConfig& cfg,
                                               const ClaimMask& claimed) {
  check_config(cfg);
  const auto& lex = cfg.lexicon(t.lang);
  const auto words = open_words(t, claimed);
  const std::size_t m = words.size();

  // Tokens of a detected run (or of a live editing term) are off limits to
  // later, shorter n-gram passes.
  std::vector<bool> used(m, false);
  for (const auto& hit : find_editing_terms(words, lex)) {
    for (std::size_t k = 0; k < hit.len; ++k) used[hit.pos + k] = true;
  }

  const auto free_range = [&](std::size_t from, std::size_t len) {
    for (std::size_t k = from; k < from + len; ++k) {
      if (used[k]) return false;
    }
    return true;
  };
  const auto same_gram = [&](std::size_t a, std::size_t b, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (words[a + k].lower != words[b + k].lower) return false;
    }
    return true;
  };

  std::vector<std::size_t> removed;
  for (std::size_t n = static_cast<std::size_t>(cfg.max_repeat_ngram); n >= 1;
       --n) {
    std::size_t i = 0;
    while (i + 2 * n <= m) {
      if (!free_range(i, 2 * n) || !same_gram(i, i + n, n)) {
        ++i;
        continue;
      }
      std::size_t copies = 2;
      while (i + (copies + 1) * n <= m && free_range(i + copies * n, n) &&
             same_gram(i, i + copies * n, n)) {
        ++copies;
      }
      for (std::size_t k = i; k < i + (copies - 1) * n; ++k) {
        removed.push_back(words[k].token);
      }
      for (std::size_t k = i; k < i + copies * n; ++k) used[k] = true;
      i += copies * n;
    }
  }
  return to_spans(std::move(removed), DisfluencyType::kRepetition,
                  kRepetitionDetector);
}

std::vector<DisfluencySpan> detect_corrections(const Transcript& t,
                                               const DetectorConfig& cfg,
                                               const ClaimMask& claimed) {
  check_config(cfg);
  const auto& lex = cfg.lexicon(t.lang);
  const auto words = open_words(t, claimed);
  const std::size_t m = words.size();

  std::vector<bool> used(m, false);
  std::vector<std::size_t> marked;
  for (const auto& hit : find_editing_terms(words, lex)) {
    // Reparandum candidates: contiguous unused words ending right before
    // the term, nearest first.
    std::vector<std::size_t> before;
    for (std::size_t p = hit.pos; p > 0 && !used[p - 1]; --p) {
      before.push_back(p - 1);
    }
    const std::size_t repair_start = hit.pos + hit.len;
    const std::size_t repair_len = m - repair_start;
    if (before.empty() || repair_len == 0) continue;

    const std::size_t max_len =
        std::min({static_cast<std::size_t>(cfg.max_repeat_ngram),
                  before.size(), repair_len});
    std::size_t len = 1;
    for (std::size_t l = 1; l <= max_len; ++l) {
      if (words[before[l - 1]].lower == words[repair_start].lower) {
        len = l;
        break;
      }
    }
    for (std::size_t k = 0; k < len; ++k) {
      used[before[k]] = true;
      marked.push_back(words[before[k]].token);
    }
    for (std::size_t k = hit.pos; k < repair_start; ++k) {
      used[k] = true;
      marked.push_back(words[k].token);
    }
  }
  return to_spans(std::move(marked), DisfluencyType::kCorrection,
                  kCorrectionDetector);
}

std::vector<DisfluencySpan> detect_false_starts(const Transcript& t,
                                                const DetectorConfig& cfg,
                                                const ClaimMask& claimed) {
  check_config(cfg);
  cfg.lexicon(t.lang);
  const auto words = open_words(t, claimed);
  const std::size_t m = words.size();
  const std::size_t window =
      std::min(m, static_cast<std::size_t>(cfg.false_start_window));

  const auto span_to = [&](std::size_t end, const char* detector) {
    std::vector<std::size_t> toks;
    for (std::size_t k = 0; k < end; ++k) toks.push_back(words[k].token);
    return to_spans(std::move(toks), DisfluencyType::kFalseStart, detector);
  };

  // Truncated word, with more speech after it.
  for (std::size_t p = window; p > 0; --p) {
    const auto& w = words[p - 1].lower;
    if (!w.empty() && w.back() == '-' && p < m) return span_to(p, kTruncationDetector);
  }

  // Restart: the opening phrase recurs at j and runs on for longer than the
  // abandoned fragment.
  for (std::size_t j = 2; j < window; ++j) {
    if (words[j].lower != words[0].lower) continue;
    if (m - j <= j) break;
    std::size_t shared = 0;
    while (shared < j && words[shared].lower == words[j + shared].lower) {
      ++shared;
    }
    if (shared >= 2 && shared < j) return span_to(j, kRestartDetector);
  }
  return {};
}

std::pair<std::vector<TokenLabel>, std::vector<DisfluencySpan>> label_tokens(
    const Transcript& t, const DetectorConfig& cfg) {
  cfg.lexicon(t.lang);
  check_config(cfg);
  ClaimMask claimed(t.tokens.size(), false);
  std::vector<TokenLabel> per_token(t.tokens.size());
  std::vector<DisfluencySpan> spans;

  using Detector = std::vector<DisfluencySpan> (*)(
      const Transcript&, const DetectorConfig&, const ClaimMask&);
  static constexpr Detector kOrder[] = {detect_fillers, detect_repetitions,
                                        detect_corrections,
                                        detect_false_starts};
  for (Detector detect : kOrder) {
    auto found = detect(t, cfg, claimed);
    claim(claimed, per_token, found);
    spans.insert(spans.end(), found.begin(), found.end());
  }
  std::sort(spans.begin(), spans.end(),
            [](const auto& a, const auto& b) { return a.start < b.start; });

  std::vector<TokenLabel> labels;
  labels.reserve(t.tokens.size());
  for (std::size_t i = 0; i < t.tokens.size(); ++i) {
    if (!t.tokens[i].is_word) continue;
    if (claimed[i]) {
      labels.push_back(per_token[i]);
    } else {
      labels.push_back({i, Verdict::kFluent, DisfluencyType::kFluent});
    }
  }
  return {std::move(labels), std::move(spans)};
}

Transcript apply_removal(const Transcript& t,
                         std::span<const TokenLabel> labels) {
  return select_tokens(t, kept_tokens(t, labels));
}

CorrectionResult correct(const Transcript& t, const DetectorConfig& cfg) {
  CorrectionResult result;
  result.source = t;

  auto [labels, spans] = label_tokens(t, cfg);
  result.labels = labels;
  result.spans = spans;
  result.histogram = classify_spans(spans);

  // origin[i] is the source token index of token i of the current transcript.
  std::vector<std::size_t> origin(t.tokens.size());
  for (std::size_t i = 0; i < origin.size(); ++i) origin[i] = i;
  // Source label position for each source token index.
  std::vector<std::size_t> label_at(t.tokens.size(), 0);
  for (std::size_t k = 0; k < result.labels.size(); ++k) {
    label_at[result.labels[k].token_index] = k;
  }

  Transcript current = t;
  std::vector<TokenLabel> pass_labels = std::move(labels);
  std::vector<DisfluencySpan> pass_spans = std::move(spans);
  // Every repeated pass removes at least one word, so this terminates within
  // word_count + 1 passes.
  while (!pass_spans.empty()) {
    ++result.passes;
    auto kept = kept_tokens(current, pass_labels);
    std::vector<std::size_t> next_origin;
    next_origin.reserve(kept.size());
    for (std::size_t i : kept) next_origin.push_back(origin[i]);
    current = select_tokens(current, kept);
    origin = std::move(next_origin);

    std::tie(pass_labels, pass_spans) = label_tokens(current, cfg);
    if (pass_spans.empty()) break;
    result.histogram += classify_spans(pass_spans);
    for (const auto& l : pass_labels) {
      if (!l.disfluent()) continue;
      const std::size_t src = origin[l.token_index];
      result.labels[label_at[src]] = {src, Verdict::kDisfluent, l.type};
    }
  }

  result.fluent = std::move(current);
  result.disfluency_count = disfluency_count(result);
  result.utterance_type = classify_utterance(result.histogram);
  return result;
}

std::size_t disfluency_count(const CorrectionResult& result) {
  return result.source.word_count() - result.fluent.word_count();
}

}  // namespace disfix
