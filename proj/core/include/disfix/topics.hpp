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

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "disfix/text.hpp"

namespace disfix {

struct Prompt {
  std::string id;
  Language lang = Language::kEnglish;
  std::string category;
  std::string text;

  bool operator==(const Prompt&) const = default;
};

/// Speaking prompts; read-only after load.
class PromptBank {
 public:
  PromptBank() = default;
  explicit PromptBank(std::vector<Prompt> prompts);

  const std::vector<Prompt>& prompts() const { return prompts_; }
  std::vector<const Prompt*> for_language(Language lang) const;
  std::size_t size() const { return prompts_.size(); }

 private:
  std::vector<Prompt> prompts_;
};

/// Parses JSON lines {"id", "lang", "category", "text"}. Blank lines are
/// skipped. Throws ParseError with the line number for malformed lines,
/// ConfigError for a duplicate id or when a language in `required` has no
/// prompt.
PromptBank parse_bank(std::istream& in, std::span<const Language> required);

PromptBank load_bank(const std::filesystem::path& path,
                     std::span<const Language> required = kAllLanguages);

/// Uniform over the language's prompts. With a seed the choice is a pure
/// function of (bank, lang, seed); without one it draws from the OS entropy
/// source. Throws ConfigError when the language has no prompts.
const Prompt& random_prompt(const PromptBank& bank, Language lang,
                            std::optional<std::uint64_t> seed = {});

}  // namespace disfix
