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

// Speech recognition and synthesis backends. Implementations must be safe to
// call concurrently.
//
// Remote wire contract (see http_backends.hpp):
//   ASR  POST <asr_url>, multipart/form-data with fields "audio" (WAV file,
//        PCM16 mono 16 kHz) and "lang" ("en" | "hi").
//        200 -> application/json {"text": "..."}
//   TTS  POST <tts_url>, application/json {"text": "...", "lang": "en"}.
//        200 -> audio/wav, PCM16 mono 16 kHz.
//   Any non-2xx reply is an error; a JSON body {"code": ..., "message": ...}
//   is surfaced in the error message when present.

#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <string_view>

#include "disfix/audio.hpp"
#include "disfix/error.hpp"
#include "disfix/text.hpp"

namespace disfix {

/// A backend call failed. `status` is the HTTP status for remote backends,
/// 0 otherwise.
class BackendError : public Error {
 public:
  enum class Kind { kUnavailable, kTimeout, kRemoteStatus, kMalformedReply,
                    kUnsupportedLanguage, kNoFixture };

  BackendError(Kind kind, const std::string& what, int status = 0)
      : Error(what), kind_(kind), status_(status) {}

  Kind kind() const noexcept { return kind_; }
  int status() const noexcept { return status_; }

 private:
  Kind kind_;
  int status_;
};

struct Transcription {
  std::string text;
  /// Requests sent, including retries.
  int attempts = 1;
};

struct Synthesis {
  AudioClip clip;
  int attempts = 1;
};

class AsrBackend {
 public:
  virtual ~AsrBackend() = default;
  virtual Transcription transcribe(const AudioClip& audio, Language lang) = 0;
};

class TtsBackend {
 public:
  virtual ~TtsBackend() = default;
  /// Empty text must yield a clip with no samples.
  virtual Synthesis synthesize(std::string_view text, Language lang) = 0;
};

/// Test double for recognition. Answers from a fixture table keyed by
/// content_digest(), falling back to the clip's embedded WAV comment.
class MockAsr : public AsrBackend {
 public:
  void add_fixture(const std::string& digest, std::string text);
  void add_fixture(const AudioClip& clip, std::string text);

  /// JSON lines, each {"digest": "<sha256 hex>", "text": "..."} or
  /// {"wav": "<path relative to the file>", "text": "..."}.
  void load_fixtures(const std::filesystem::path& path);

  std::size_t fixture_count() const;

  /// Throws BackendError(kNoFixture, "no fixture transcript") on a miss.
  Transcription transcribe(const AudioClip& audio, Language lang) override;

 private:
  mutable std::shared_mutex mu_;
  std::map<std::string, std::string> by_digest_;
};

/// Test double for synthesis: one 100 ms 440 Hz beep at half amplitude per
/// word token, separated by 50 ms of silence, at 16 kHz mono. A W-word text
/// lasts 150 * W - 50 ms (0 ms for W = 0).
class MockTts : public TtsBackend {
 public:
  static constexpr int kBeepMs = 100;
  static constexpr int kGapMs = 50;
  static constexpr double kFrequencyHz = 440.0;
  static constexpr double kAmplitude = 0.5;

  Synthesis synthesize(std::string_view text, Language lang) override;
};

}  // namespace disfix
