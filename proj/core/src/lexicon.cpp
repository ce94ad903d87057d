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

#include "disfix/lexicon.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>

#include "disfix/error.hpp"

namespace disfix {

namespace {

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  for (const auto& t : tokenize(s, Language::kEnglish).tokens) {
    out.push_back(t.text);
  }
  return out;
}

template <typename T>
void sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

bool LanguageLexicon::is_filler(std::string_view lowered) const {
  return std::binary_search(fillers.begin(), fillers.end(), lowered);
}

std::size_t LanguageLexicon::longest_editing_term() const {
  std::size_t n = 0;
  for (const auto& t : editing_terms) n = std::max(n, t.size());
  return n;
}

void LanguageLexicon::normalize() {
  for (auto& f : fillers) f = utf8::to_lower(f);
  for (auto& d : distractors) d = utf8::to_lower(d);
  for (auto& term : editing_terms) {
    for (auto& w : term) w = utf8::to_lower(w);
  }
  std::erase_if(editing_terms, [](const auto& t) { return t.empty(); });
  sort_unique(fillers);
  sort_unique(distractors);
  sort_unique(editing_terms);
}

const LanguageLexicon& DetectorConfig::lexicon(Language lang) const {
  auto it = lexicons.find(lang);
  if (it == lexicons.end()) {
    throw ConfigError("no lexicon configured for language '" +
                      std::string(language_code(lang)) + "'");
  }
  return it->second;
}

void DetectorConfig::validate() const {
  if (lexicons.empty()) throw ConfigError("detector config has no languages");
  if (max_repeat_ngram < 1) throw ConfigError("max_repeat_ngram must be >= 1");
  if (false_start_window < 1) {
    throw ConfigError("false_start_window must be >= 1");
  }
  for (const auto& [lang, lex] : lexicons) {
    const std::string code(language_code(lang));
    if (lex.fillers.empty()) throw ConfigError("empty filler lexicon: " + code);
    if (lex.editing_terms.empty()) {
      throw ConfigError("empty editing term lexicon: " + code);
    }
  }
}

DetectorConfig DetectorConfig::english_defaults() {
  LanguageLexicon en;
  en.fillers = {"um", "uh", "uhh", "er", "erm", "hmm", "mhm", "huh"};
  en.editing_terms = {{"i", "mean"}, {"no", "wait"}, {"sorry"}, {"rather"},
                      {"no", "no"}};
  en.distractors = {"blue",  "red",    "green",  "left",   "right", "monday",
                    "friday", "seven", "twelve", "paris",  "london", "coffee",
                    "juice", "train",  "bus",    "winter", "summer", "cat"};
  en.normalize();
  DetectorConfig cfg;
  cfg.lexicons.emplace(Language::kEnglish, std::move(en));
  return cfg;
}

std::vector<std::string> read_list_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open list file " + path.string());
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    auto words = split_words(line);
    if (words.empty()) continue;
    std::string entry;
    for (const auto& w : words) {
      if (!entry.empty()) entry.push_back(' ');
      entry += w;
    }
    out.push_back(std::move(entry));
  }
  return out;
}

LanguageLexicon load_language_lexicon(const std::filesystem::path& dir) {
  LanguageLexicon lex;
  lex.fillers = read_list_file(dir / "fillers.txt");
  for (const auto& term : read_list_file(dir / "editing_terms.txt")) {
    lex.editing_terms.push_back(split_words(term));
  }
  if (std::filesystem::exists(dir / "distractors.txt")) {
    lex.distractors = read_list_file(dir / "distractors.txt");
  }
  for (const auto& f : lex.fillers) {
    if (f.find(' ') != std::string::npos) {
      throw ConfigError("filler entries must be single words: '" + f + "' in " +
                        (dir / "fillers.txt").string());
    }
  }
  lex.normalize();
  return lex;
}

DetectorConfig load_detector_config(const std::filesystem::path& root) {
  DetectorConfig cfg;
  for (Language lang : kAllLanguages) {
    auto dir = root / std::string(language_code(lang));
    if (std::filesystem::is_directory(dir)) {
      cfg.lexicons.emplace(lang, load_language_lexicon(dir));
    }
  }
  if (cfg.lexicons.empty()) {
    throw ConfigError("no language lexicons found under " + root.string());
  }
  cfg.validate();
  return cfg;
}

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("DISFIX_DATA_DIR"); env && *env) {
    return env;
  }
#ifdef DISFIX_DEFAULT_DATA_DIR
  return DISFIX_DEFAULT_DATA_DIR;
#else
  return "data";
#endif
}

}  // namespace disfix
