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

#include "disfix/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "disfix/classifier.hpp"
#include "disfix/engine.hpp"
#include "disfix/error.hpp"
#include "disfix/rng.hpp"

namespace disfix {

namespace {

void require_words(std::span<const std::string> words, const char* what) {
  if (words.empty()) {
    throw ContractViolation(std::string(what) + ": empty input");
  }
}

std::string join(std::span<const std::string> words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out.push_back(' ');
    out += w;
  }
  return out;
}

AnnotatedUtterance start(std::span<const std::string> words, Language lang,
                         DisfluencyType injection) {
  AnnotatedUtterance u;
  u.lang = lang;
  u.seed_text = join(words);
  u.injection = injection;
  return u;
}

void push(AnnotatedUtterance& u, const std::string& token, DisfluencyType t) {
  u.tokens.push_back(token);
  u.labels.push_back(t);
}

// Lexicon entries are lowercase; restore the English pronoun.
std::string surface(const std::string& word, Language lang) {
  if (lang == Language::kEnglish && word == "i") return "I";
  return word;
}

}  // namespace

std::vector<std::string> AnnotatedUtterance::gold_fluent_tokens() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < tokens.size() && i < labels.size(); ++i) {
    if (labels[i] == DisfluencyType::kFluent) out.push_back(tokens[i]);
  }
  return out;
}

AnnotatedUtterance inject_filler(std::span<const std::string> words,
                                 Language lang, std::uint64_t seed,
                                 const DetectorConfig& cfg) {
  require_words(words, "inject_filler");
  const auto& lex = cfg.lexicon(lang);
  if (lex.fillers.empty()) throw ConfigError("empty filler lexicon");
  Rng rng(seed);

  // inserted[b] holds the fillers placed before word b (b == size: at end).
  std::vector<std::vector<std::string>> inserted(words.size() + 1);
  const auto count = rng.between(1, 3);
  for (std::uint64_t k = 0; k < count; ++k) {
    const auto boundary = rng.below(words.size() + 1);
    inserted[boundary].push_back(lex.fillers[rng.below(lex.fillers.size())]);
  }

  auto u = start(words, lang, DisfluencyType::kFiller);
  for (std::size_t b = 0; b <= words.size(); ++b) {
    for (const auto& f : inserted[b]) push(u, f, DisfluencyType::kFiller);
    if (b < words.size()) push(u, words[b], DisfluencyType::kFluent);
  }
  return u;
}

AnnotatedUtterance inject_repetition(std::span<const std::string> words,
                                     Language lang, std::uint64_t seed,
                                     const DetectorConfig& cfg,
                                     std::optional<std::size_t> ngram,
                                     std::optional<std::size_t> extra_copies) {
  require_words(words, "inject_repetition");
  cfg.lexicon(lang);
  Rng rng(seed);
  const std::size_t max_n = std::min<std::size_t>(
      static_cast<std::size_t>(std::max(cfg.max_repeat_ngram, 1)),
      words.size());
  const std::size_t n = ngram ? *ngram : rng.between(1, max_n);
  if (n < 1 || n > words.size()) {
    throw ContractViolation("inject_repetition: n-gram size out of range");
  }
  const std::size_t from = rng.below(words.size() - n + 1);
  const std::size_t copies = extra_copies ? *extra_copies : rng.between(1, 2);
  if (copies < 1) throw ContractViolation("inject_repetition: no extra copy");

  auto u = start(words, lang, DisfluencyType::kRepetition);
  for (std::size_t i = 0; i < from; ++i) {
    push(u, words[i], DisfluencyType::kFluent);
  }
  for (std::size_t c = 0; c < copies; ++c) {
    for (std::size_t i = from; i < from + n; ++i) {
      push(u, words[i], DisfluencyType::kRepetition);
    }
  }
  for (std::size_t i = from; i < words.size(); ++i) {
    push(u, words[i], DisfluencyType::kFluent);
  }
  return u;
}

AnnotatedUtterance inject_correction(std::span<const std::string> words,
                                     Language lang, std::uint64_t seed,
                                     const DetectorConfig& cfg) {
  require_words(words, "inject_correction");
  const auto& lex = cfg.lexicon(lang);
  if (lex.distractors.empty()) {
    throw ConfigError("inject_correction: empty distractor list");
  }
  if (lex.editing_terms.empty()) {
    throw ConfigError("inject_correction: empty editing term list");
  }
  Rng rng(seed);
  const std::size_t at = rng.below(words.size());
  const std::string target = utf8::to_lower(words[at]);
  const std::string previous = at > 0 ? utf8::to_lower(words[at - 1]) : "";

  std::vector<const std::string*> candidates;
  for (const auto& d : lex.distractors) {
    if (d != target && d != previous) candidates.push_back(&d);
  }
  if (candidates.empty()) {
    throw ConfigError("inject_correction: no distractor differs from '" +
                      words[at] + "'");
  }
  const std::string& distractor = *candidates[rng.below(candidates.size())];
  const auto& term = lex.editing_terms[rng.below(lex.editing_terms.size())];

  auto u = start(words, lang, DisfluencyType::kCorrection);
  for (std::size_t i = 0; i < at; ++i) {
    push(u, words[i], DisfluencyType::kFluent);
  }
  push(u, distractor, DisfluencyType::kCorrection);
  for (const auto& w : term) {
    push(u, surface(w, lang), DisfluencyType::kCorrection);
  }
  for (std::size_t i = at; i < words.size(); ++i) {
    push(u, words[i], DisfluencyType::kFluent);
  }
  return u;
}

AnnotatedUtterance inject_false_start(std::span<const std::string> words,
                                      Language lang, std::uint64_t seed,
                                      const DetectorConfig& cfg) {
  require_words(words, "inject_false_start");
  cfg.lexicon(lang);
  Rng rng(seed);
  const std::size_t len = rng.between(1, std::min<std::size_t>(3, words.size()));
  const std::string& last = words[len - 1];
  const std::size_t chars = utf8::length(last);
  std::string cut = chars >= 2 ? utf8::prefix(last, rng.between(1, chars - 1))
                               : last;
  if (utf8::all_punct(cut)) cut = last;

  auto u = start(words, lang, DisfluencyType::kFalseStart);
  for (std::size_t i = 0; i + 1 < len; ++i) {
    push(u, words[i], DisfluencyType::kFalseStart);
  }
  push(u, cut + "-", DisfluencyType::kFalseStart);
  for (const auto& w : words) push(u, w, DisfluencyType::kFluent);
  return u;
}

void Mix::validate() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < share.size(); ++i) {
    if (!(share[i] >= 0.0) || !std::isfinite(share[i])) {
      throw ConfigError("mix share for " +
                        std::string(type_name(kAllTypes[i])) +
                        " must be a non-negative number");
    }
    sum += share[i];
  }
  if (std::fabs(sum - 1.0) > 1e-9) {
    std::ostringstream msg;
    msg << "mix shares must sum to 1, got " << sum;
    throw ConfigError(msg.str());
  }
}

Mix Mix::parse(std::string_view text) {
  Mix mix;
  std::vector<bool> seen(5, false);
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    auto item = text.substr(pos, comma - pos);
    pos = comma + 1;
    if (item.empty()) {
      if (comma == text.size()) break;
      continue;
    }
    auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("mix entry '" + std::string(item) +
                        "' is not Type=share");
    }
    DisfluencyType type;
    try {
      type = parse_type(item.substr(0, eq));
    } catch (const ParseError& e) {
      throw ConfigError(e.what());
    }
    const auto idx = static_cast<std::size_t>(type);
    if (seen[idx]) {
      throw ConfigError("mix lists " + std::string(type_name(type)) + " twice");
    }
    seen[idx] = true;
    const std::string value(item.substr(eq + 1));
    std::size_t used = 0;
    double share = 0;
    try {
      share = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size() || value.empty()) {
      throw ConfigError("mix share '" + value + "' is not a number");
    }
    mix[type] = share;
  }
  mix.validate();
  return mix;
}

Mix Mix::uniform_disfluent() {
  Mix mix;
  for (auto t : kDisfluentTypes) mix[t] = 0.25;
  return mix;
}

std::array<std::size_t, 5> quota(std::size_t n, const Mix& mix) {
  mix.validate();
  std::array<std::size_t, 5> counts{};
  std::array<double, 5> remainder{};
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < 5; ++i) {
    const double exact = static_cast<double>(n) * mix.share[i];
    counts[i] = static_cast<std::size_t>(std::floor(exact + 1e-9));
    remainder[i] = exact - static_cast<double>(counts[i]);
    assigned += counts[i];
  }
  // Floating-point slack in the shares can overshoot by a unit; take it back
  // from the smallest remainders.
  while (assigned > n) {
    std::size_t worst = 5;
    for (std::size_t i = 0; i < 5; ++i) {
      if (counts[i] > 0 && (worst == 5 || remainder[i] < remainder[worst])) {
        worst = i;
      }
    }
    --counts[worst];
    remainder[worst] += 1.0;
    --assigned;
  }
  std::array<std::size_t, 5> order;
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return remainder[a] > remainder[b];
  });
  for (std::size_t k = 0; assigned < n; k = (k + 1) % 5) {
    if (mix.share[order[k]] > 0.0) {
      ++counts[order[k]];
      ++assigned;
    }
  }
  return counts;
}

std::vector<AnnotatedUtterance> generate_corpus(
    std::span<const std::string> seeds, const CorpusOptions& options,
    const DetectorConfig& cfg) {
  options.mix.validate();
  cfg.lexicon(options.lang);

  std::vector<std::vector<std::string>> seed_words;
  std::vector<const std::string*> seed_texts;
  for (const auto& s : seeds) {
    auto words = tokenize(s, options.lang).words();
    if (words.empty()) continue;
    seed_words.push_back(std::move(words));
    seed_texts.push_back(&s);
  }
  if (seed_words.empty()) throw ConfigError("no usable seed sentences");

  const std::size_t n = options.count ? options.count : seed_words.size();
  const auto counts = quota(n, options.mix);
  std::vector<DisfluencyType> types;
  types.reserve(n);
  for (std::size_t i = 0; i < 5; ++i) {
    types.insert(types.end(), counts[i], kAllTypes[i]);
  }
  Rng shuffle(Rng::derive(options.rng_seed, ~std::uint64_t{0}));
  for (std::size_t i = types.size(); i > 1; --i) {
    std::swap(types[i - 1], types[shuffle.below(i)]);
  }

  std::vector<AnnotatedUtterance> corpus;
  corpus.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& words = seed_words[i % seed_words.size()];
    const auto seed = Rng::derive(options.rng_seed, i);
    AnnotatedUtterance u;
    switch (types[i]) {
      case DisfluencyType::kFiller:
        u = inject_filler(words, options.lang, seed, cfg);
        break;
      case DisfluencyType::kRepetition:
        u = inject_repetition(words, options.lang, seed, cfg);
        break;
      case DisfluencyType::kCorrection:
        u = inject_correction(words, options.lang, seed, cfg);
        break;
      case DisfluencyType::kFalseStart:
        u = inject_false_start(words, options.lang, seed, cfg);
        break;
      case DisfluencyType::kFluent:
        u.tokens = words;
        u.labels.assign(words.size(), DisfluencyType::kFluent);
        u.lang = options.lang;
        u.injection = DisfluencyType::kFluent;
        break;
    }
    u.seed_text = *seed_texts[i % seed_texts.size()];
    corpus.push_back(std::move(u));
  }
  return corpus;
}

double Prf::precision() const {
  if (tp + fp == 0) return fn == 0 ? 1.0 : 0.0;
  return static_cast<double>(tp) / static_cast<double>(tp + fp);
}

double Prf::recall() const {
  if (tp + fn == 0) return fp == 0 ? 1.0 : 0.0;
  return static_cast<double>(tp) / static_cast<double>(tp + fn);
}

double Prf::f1() const {
  const double p = precision();
  const double r = recall();
  return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

double EvalReport::utterance_type_accuracy() const {
  return corpus_size == 0 ? 0.0
                          : static_cast<double>(type_matches) /
                                static_cast<double>(corpus_size);
}

Prf& Prf::operator+=(const Prf& other) {
  tp += other.tp;
  fp += other.fp;
  fn += other.fn;
  tokens += other.tokens;
  utterances += other.utterances;
  return *this;
}

void EvalReport::merge(const EvalReport& other) {
  for (const auto& [type, prf] : other.per_type) per_type[type] += prf;
  overall += other.overall;
  type_matches += other.type_matches;
  corpus_size += other.corpus_size;
}

Labeler engine_labeler(const DetectorConfig& cfg) {
  return [&cfg](const Transcript& t) { return correct(t, cfg).labels; };
}

Transcript utterance_transcript(const AnnotatedUtterance& u) {
  Transcript t;
  t.lang = u.lang;
  for (const auto& tok : u.tokens) {
    t.tokens.push_back({tok, t.tokens.size(), true});
  }
  t.raw_text = detokenize(t);
  return t;
}

EvalReport evaluate(std::span<const AnnotatedUtterance> gold,
                    const Labeler& labeler) {
  EvalReport report;
  for (std::size_t idx = 0; idx < gold.size(); ++idx) {
    const auto& u = gold[idx];
    const auto name = [&] {
      return "utterance " + std::to_string(idx + 1) + " ('" + u.seed_text +
             "')";
    };
    if (u.tokens.size() != u.labels.size()) {
      throw ContractViolation(name() + ": tokens and gold labels differ in "
                                       "length");
    }
    const auto predicted = labeler(utterance_transcript(u));
    if (predicted.size() != u.tokens.size()) {
      throw ContractViolation(name() + ": labeler returned " +
                              std::to_string(predicted.size()) +
                              " labels for " + std::to_string(u.tokens.size()) +
                              " tokens");
    }
    Prf& group = report.per_type[u.injection];
    ++group.utterances;
    ++report.overall.utterances;
    TypeHistogram hist;
    for (std::size_t k = 0; k < u.tokens.size(); ++k) {
      const bool truth = u.labels[k] != DisfluencyType::kFluent;
      const bool guess = predicted[k].disfluent();
      if (guess && predicted[k].type != DisfluencyType::kFluent) {
        ++hist[predicted[k].type];
      }
      for (Prf* p : {&group, &report.overall}) {
        ++p->tokens;
        if (truth && guess) ++p->tp;
        if (!truth && guess) ++p->fp;
        if (truth && !guess) ++p->fn;
      }
    }
    if (classify_utterance(hist) == u.injection) ++report.type_matches;
    ++report.corpus_size;
  }
  return report;
}

}  // namespace disfix
