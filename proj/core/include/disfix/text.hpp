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
#include <string>
#include <string_view>
#include <vector>

namespace disfix {

enum class Language { kEnglish, kHindi };

inline constexpr std::array<Language, 2> kAllLanguages = {Language::kEnglish,
                                                          Language::kHindi};

/// "en" / "hi".
std::string_view language_code(Language lang);

/// Parses a language code. Throws ConfigError for anything other than the
/// supported codes.
Language parse_language(std::string_view code);

/// Non-throwing variant of parse_language.
bool try_parse_language(std::string_view code, Language* out);

struct Token {
  std::string text;
  std::size_t index = 0;
  /// False for split-off punctuation. Punctuation is never disfluent and is
  /// never counted as a word.
  bool is_word = true;

  bool operator==(const Token&) const = default;
};

struct Transcript {
  std::vector<Token> tokens;
  Language lang = Language::kEnglish;
  std::string raw_text;

  std::size_t word_count() const;
  /// Token indices of word tokens, in order.
  std::vector<std::size_t> word_indices() const;
  /// Texts of word tokens, in order.
  std::vector<std::string> words() const;
};

/// Splits on Unicode whitespace and peels leading/trailing punctuation off
/// each run into separate one-codepoint punctuation tokens. A trailing
/// hyphen-minus stays attached to its word ("wa-" marks a truncated word).
/// Case is preserved. Invalid UTF-8 bytes pass through as opaque characters.
Transcript tokenize(std::string_view text, Language lang);

/// Joins words with single spaces and attaches punctuation to the preceding
/// token. A standalone "-" keeps a space before it so that re-tokenizing
/// cannot glue it onto the previous word.
std::string detokenize(const Transcript& transcript);
std::string detokenize(std::span<const Token> tokens);

/// Builds a transcript from pre-split tokens, classifying each token as word
/// or punctuation with the tokenizer's rule. Tokens must not contain
/// whitespace; empty tokens are dropped.
Transcript from_tokens(std::span<const std::string> tokens, Language lang);

/// Re-numbers token indices from 0.
void reindex(std::vector<Token>& tokens);

namespace utf8 {

/// Decodes one code point at `pos`, advancing it. Invalid sequences decode
/// to the single byte value with the high bit set marker (0x110000 + byte)
/// and advance by one byte, so decoding is total.
char32_t next(std::string_view s, std::size_t& pos);

void append(std::string& out, char32_t cp);

bool is_valid(std::string_view s);
bool is_space(char32_t cp);
bool is_punct(char32_t cp);

/// True when every code point of `s` is punctuation.
bool all_punct(std::string_view s);

/// ASCII-only case folding; other code points are copied unchanged.
std::string to_lower(std::string_view s);

/// Number of code points (invalid bytes count one each).
std::size_t length(std::string_view s);

/// First `n` code points of `s`.
std::string prefix(std::string_view s, std::size_t n);

}  // namespace utf8

}  // namespace disfix
