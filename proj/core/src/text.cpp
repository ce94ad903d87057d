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

#include "disfix/text.hpp"

#include "disfix/error.hpp"

namespace disfix {

namespace {

constexpr char32_t kInvalidBase = 0x110000;

struct CodePoint {
  char32_t value;
  std::size_t begin;
  std::size_t end;
};

void emit(std::vector<Token>& out, std::string_view text, bool is_word) {
  Token t;
  t.text = std::string(text);
  t.index = out.size();
  t.is_word = is_word;
  out.push_back(std::move(t));
}

void split_run(std::string_view text, const std::vector<CodePoint>& run,
               std::vector<Token>& out) {
  std::size_t lo = 0;
  std::size_t hi = run.size();
  while (lo < hi && utf8::is_punct(run[lo].value)) {
    emit(out, text.substr(run[lo].begin, run[lo].end - run[lo].begin), false);
    ++lo;
  }
  if (lo == hi) return;
  while (hi > lo && run[hi - 1].value != U'-' &&
         utf8::is_punct(run[hi - 1].value)) {
    --hi;
  }
  emit(out, text.substr(run[lo].begin, run[hi - 1].end - run[lo].begin), true);
  for (std::size_t i = hi; i < run.size(); ++i) {
    emit(out, text.substr(run[i].begin, run[i].end - run[i].begin), false);
  }
}

}  // namespace

std::string_view language_code(Language lang) {
  switch (lang) {
    case Language::kEnglish:
      return "en";
    case Language::kHindi:
      return "hi";
  }
  return "en";
}

bool try_parse_language(std::string_view code, Language* out) {
  if (code == "en") {
    *out = Language::kEnglish;
    return true;
  }
  if (code == "hi") {
    *out = Language::kHindi;
    return true;
  }
  return false;
}

Language parse_language(std::string_view code) {
  Language lang;
  if (!try_parse_language(code, &lang)) {
    throw ConfigError("unsupported language '" + std::string(code) + "'");
  }
  return lang;
}

std::size_t Transcript::word_count() const {
  std::size_t n = 0;
  for (const auto& t : tokens) n += t.is_word ? 1 : 0;
  return n;
}

std::vector<std::size_t> Transcript::word_indices() const {
  std::vector<std::size_t> out;
  out.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].is_word) out.push_back(i);
  }
  return out;
}

std::vector<std::string> Transcript::words() const {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (t.is_word) out.push_back(t.text);
  }
  return out;
}

Transcript tokenize(std::string_view text, Language lang) {
  Transcript tr;
  tr.lang = lang;
  tr.raw_text = std::string(text);

  std::vector<CodePoint> run;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t begin = pos;
    char32_t cp = utf8::next(text, pos);
    if (utf8::is_space(cp)) {
      if (!run.empty()) split_run(text, run, tr.tokens);
      run.clear();
      continue;
    }
    run.push_back({cp, begin, pos});
  }
  if (!run.empty()) split_run(text, run, tr.tokens);
  return tr;
}

std::string detokenize(std::span<const Token> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto& t = tokens[i];
    if (i > 0 && (t.is_word || t.text == "-")) out.push_back(' ');
    out += t.text;
  }
  return out;
}

std::string detokenize(const Transcript& transcript) {
  return detokenize(std::span<const Token>(transcript.tokens));
}

Transcript from_tokens(std::span<const std::string> tokens, Language lang) {
  Transcript tr;
  tr.lang = lang;
  for (const auto& text : tokens) {
    if (text.empty()) continue;
    emit(tr.tokens, text, !utf8::all_punct(text));
  }
  tr.raw_text = detokenize(tr);
  return tr;
}

void reindex(std::vector<Token>& tokens) {
  for (std::size_t i = 0; i < tokens.size(); ++i) tokens[i].index = i;
}

namespace utf8 {

char32_t next(std::string_view s, std::size_t& pos) {
  const auto byte = [&](std::size_t i) {
    return static_cast<unsigned char>(s[i]);
  };
  const unsigned char b0 = byte(pos);
  std::size_t len = 0;
  char32_t cp = 0;
  char32_t min = 0;
  if (b0 < 0x80) {
    ++pos;
    return b0;
  } else if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
    min = 0x80;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
    min = 0x800;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
    min = 0x10000;
  } else {
    ++pos;
    return kInvalidBase + b0;
  }
  if (pos + len > s.size()) {
    ++pos;
    return kInvalidBase + b0;
  }
  for (std::size_t i = 1; i < len; ++i) {
    const unsigned char b = byte(pos + i);
    if ((b & 0xC0) != 0x80) {
      ++pos;
      return kInvalidBase + b0;
    }
    cp = (cp << 6) | (b & 0x3F);
  }
  if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    ++pos;
    return kInvalidBase + b0;
  }
  pos += len;
  return cp;
}

void append(std::string& out, char32_t cp) {
  if (cp >= kInvalidBase) {
    out.push_back(static_cast<char>(cp - kInvalidBase));
  } else if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_valid(std::string_view s) {
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (next(s, pos) >= kInvalidBase) return false;
  }
  return true;
}

bool is_space(char32_t cp) {
  switch (cp) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

bool is_punct(char32_t cp) {
  if (cp < 0x80) {
    switch (cp) {
      case '!': case '"': case '#': case '%': case '&': case '\'':
      case '(': case ')': case '*': case ',': case '-': case '.':
      case '/': case ':': case ';': case '?': case '@': case '[':
      case '\\': case ']': case '_': case '{': case '}':
        return true;
      default:
        return false;
    }
  }
  switch (cp) {
    case 0xA1: case 0xA7: case 0xAB: case 0xB6: case 0xB7: case 0xBB:
    case 0xBF:
    case 0x0964: case 0x0965:  // danda, double danda
    case 0x060C: case 0x061F:  // Arabic comma, question mark
      return true;
    default:
      break;
  }
  if (cp >= 0x2010 && cp <= 0x2027) return true;  // dashes, quotes, ellipsis
  if (cp >= 0x2030 && cp <= 0x205E) return true;
  if (cp >= 0x3001 && cp <= 0x3003) return true;
  if (cp >= 0x3008 && cp <= 0x3011) return true;
  if (cp >= 0xFF01 && cp <= 0xFF0F) return cp != 0xFF04 && cp != 0xFF0B;
  if (cp == 0xFF1A || cp == 0xFF1B || cp == 0xFF1F) return true;
  return false;
}

bool all_punct(std::string_view s) {
  if (s.empty()) return false;
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (!is_punct(next(s, pos))) return false;
  }
  return true;
}

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::size_t length(std::string_view s) {
  std::size_t n = 0;
  std::size_t pos = 0;
  while (pos < s.size()) {
    next(s, pos);
    ++n;
  }
  return n;
}

std::string prefix(std::string_view s, std::size_t n) {
  std::size_t pos = 0;
  for (std::size_t i = 0; i < n && pos < s.size(); ++i) next(s, pos);
  return std::string(s.substr(0, pos));
}

}  // namespace utf8

}  // namespace disfix
