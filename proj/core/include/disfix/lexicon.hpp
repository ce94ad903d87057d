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

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "disfix/text.hpp"

namespace disfix {

/// Word lists for one language. All entries are lowercase, sorted and
/// unique; multi-word editing terms are stored pre-split.
struct LanguageLexicon {
  std::vector<std::string> fillers;
  std::vector<std::vector<std::string>> editing_terms;
  /// Replacement words for synthetic corrections. Detectors ignore this.
  std::vector<std::string> distractors;

  bool is_filler(std::string_view lowered) const;
  std::size_t longest_editing_term() const;

  /// Sorts, de-duplicates and lowercases every list.
  void normalize();
};

/// Rule parameters for the detectors and, when shared, the synthetic
/// generator. Immutable after load.
struct DetectorConfig {
  std::map<Language, LanguageLexicon> lexicons;
  int max_repeat_ngram = 5;
  int false_start_window = 5;

  /// Throws ConfigError if `lang` has no lexicon.
  const LanguageLexicon& lexicon(Language lang) const;
  bool supports(Language lang) const { return lexicons.count(lang) > 0; }

  /// Throws ConfigError if an invariant is broken: empty filler or editing
  /// term list for a configured language, or a non-positive window.
  void validate() const;

  /// The built-in English lists. Hindi has no built-in lists; it is loaded
  /// from data files.
  static DetectorConfig english_defaults();
};

/// Reads one list file: UTF-8, one entry per line, '#' starts a comment,
/// blank lines ignored, inner whitespace collapsed to single spaces.
std::vector<std::string> read_list_file(const std::filesystem::path& path);

/// Loads <dir>/fillers.txt, <dir>/editing_terms.txt and the optional
/// <dir>/distractors.txt.
LanguageLexicon load_language_lexicon(const std::filesystem::path& dir);

/// Loads every language directory ("en", "hi") found under `root`. Throws
/// ConfigError if none is present or a loaded lexicon is invalid.
DetectorConfig load_detector_config(const std::filesystem::path& root);

/// Directory holding the shipped data files: $DISFIX_DATA_DIR when set,
/// otherwise the compiled-in location.
std::filesystem::path default_data_dir();

}  // namespace disfix
