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

#include "disfix/topics.hpp"

#include <fstream>
#include <random>
#include <set>

#include <nlohmann/json.hpp>

#include "disfix/error.hpp"
#include "disfix/rng.hpp"

namespace disfix {

namespace {

std::string required_string(const nlohmann::json& j, const char* key,
                            std::size_t line) {
  if (!j.contains(key) || !j[key].is_string()) {
    throw ParseError(std::string("missing string field \"") + key + "\"", line);
  }
  auto value = j[key].get<std::string>();
  if (value.empty()) {
    throw ParseError(std::string("empty field \"") + key + "\"", line);
  }
  return value;
}

}  // namespace

PromptBank::PromptBank(std::vector<Prompt> prompts)
    : prompts_(std::move(prompts)) {}

std::vector<const Prompt*> PromptBank::for_language(Language lang) const {
  std::vector<const Prompt*> out;
  for (const auto& p : prompts_) {
    if (p.lang == lang) out.push_back(&p);
  }
  return out;
}

PromptBank parse_bank(std::istream& in, std::span<const Language> required) {
  std::vector<Prompt> prompts;
  std::set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(e.what(), line_no);
    }
    if (!j.is_object()) throw ParseError("expected a JSON object", line_no);
    Prompt p;
    p.id = required_string(j, "id", line_no);
    const auto code = required_string(j, "lang", line_no);
    if (!try_parse_language(code, &p.lang)) {
      throw ParseError("unsupported language '" + code + "'", line_no);
    }
    p.category = required_string(j, "category", line_no);
    p.text = required_string(j, "text", line_no);
    if (!ids.insert(p.id).second) {
      throw ConfigError("duplicate prompt id '" + p.id + "' (line " +
                        std::to_string(line_no) + ")");
    }
    prompts.push_back(std::move(p));
  }
  PromptBank bank(std::move(prompts));
  for (Language lang : required) {
    if (bank.for_language(lang).empty()) {
      throw ConfigError("prompt bank has no prompts for '" +
                        std::string(language_code(lang)) + "'");
    }
  }
  return bank;
}

PromptBank load_bank(const std::filesystem::path& path,
                     std::span<const Language> required) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open prompt bank " + path.string());
  return parse_bank(in, required);
}

const Prompt& random_prompt(const PromptBank& bank, Language lang,
                            std::optional<std::uint64_t> seed) {
  const auto pool = bank.for_language(lang);
  if (pool.empty()) {
    throw ConfigError("no prompts for '" + std::string(language_code(lang)) +
                      "'");
  }
  std::uint64_t draw_seed;
  if (seed) {
    draw_seed = *seed;
  } else {
    std::random_device entropy;
    draw_seed = (static_cast<std::uint64_t>(entropy()) << 32) ^ entropy();
  }
  Rng rng(draw_seed);
  return *pool[rng.below(pool.size())];
}

}  // namespace disfix
