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

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "disfix/backends.hpp"

namespace disfix {

void MockAsr::add_fixture(const std::string& digest, std::string text) {
  std::unique_lock lock(mu_);
  by_digest_[digest] = std::move(text);
}

void MockAsr::add_fixture(const AudioClip& clip, std::string text) {
  add_fixture(content_digest(to_canonical(clip)), std::move(text));
}

void MockAsr::load_fixtures(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open ASR fixture file " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path.string() + ": " + e.what(), line_no);
    }
    if (!j.is_object() || !j.contains("text") || !j["text"].is_string()) {
      throw ParseError(path.string() + ": fixture needs a \"text\" string",
                       line_no);
    }
    auto text = j["text"].get<std::string>();
    if (j.contains("digest") && j["digest"].is_string()) {
      add_fixture(j["digest"].get<std::string>(), std::move(text));
    } else if (j.contains("wav") && j["wav"].is_string()) {
      auto wav_path = path.parent_path() / j["wav"].get<std::string>();
      std::ifstream wav(wav_path, std::ios::binary);
      if (!wav) throw ConfigError("cannot open fixture WAV " + wav_path.string());
      std::ostringstream bytes;
      bytes << wav.rdbuf();
      add_fixture(decode_wav(bytes.str()), std::move(text));
    } else {
      throw ParseError(path.string() + ": fixture needs \"digest\" or \"wav\"",
                       line_no);
    }
  }
}

std::size_t MockAsr::fixture_count() const {
  std::shared_lock lock(mu_);
  return by_digest_.size();
}

Transcription MockAsr::transcribe(const AudioClip& audio, Language) {
  {
    std::shared_lock lock(mu_);
    auto it = by_digest_.find(content_digest(audio));
    if (it != by_digest_.end()) return {it->second, 1};
  }
  if (!audio.comment.empty()) return {audio.comment, 1};
  throw BackendError(BackendError::Kind::kNoFixture, "no fixture transcript");
}

Synthesis MockTts::synthesize(std::string_view text, Language lang) {
  const std::size_t words = tokenize(text, lang).word_count();
  constexpr std::size_t kBeep = kCanonicalSampleRate * kBeepMs / 1000;
  constexpr std::size_t kGap = kCanonicalSampleRate * kGapMs / 1000;

  Synthesis out;
  out.clip.sample_rate = kCanonicalSampleRate;
  out.clip.channels = 1;
  if (words == 0) return out;
  out.clip.samples.reserve(words * kBeep + (words - 1) * kGap);

  std::vector<std::int16_t> beep(kBeep);
  for (std::size_t i = 0; i < kBeep; ++i) {
    const double t = static_cast<double>(i) / kCanonicalSampleRate;
    beep[i] = static_cast<std::int16_t>(std::lround(
        kAmplitude * 32767.0 * std::sin(2.0 * std::numbers::pi * kFrequencyHz * t)));
  }
  for (std::size_t w = 0; w < words; ++w) {
    if (w > 0) out.clip.samples.insert(out.clip.samples.end(), kGap, 0);
    out.clip.samples.insert(out.clip.samples.end(), beep.begin(), beep.end());
  }
  return out;
}

}  // namespace disfix
