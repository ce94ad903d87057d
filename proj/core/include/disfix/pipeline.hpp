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

#include <memory>
#include <string>
#include <string_view>

#include "disfix/audio.hpp"
#include "disfix/audio_store.hpp"
#include "disfix/backends.hpp"
#include "disfix/engine.hpp"
#include "disfix/error.hpp"

namespace disfix {

enum class Stage { kValidation, kAsr, kDc, kTts, kStore };

std::string_view stage_name(Stage stage);

class PipelineError : public Error {
 public:
  PipelineError(Stage stage, const std::string& what)
      : Error(std::string(stage_name(stage)) + ": " + what),
        stage_(stage),
        detail_(what) {}

  Stage stage() const noexcept { return stage_; }
  /// Message without the stage prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  Stage stage_;
  std::string detail_;
};

/// Wall-clock milliseconds per stage. Attempt counts include retries.
struct StageTimings {
  double asr_ms = 0;
  double dc_ms = 0;
  double tts_ms = 0;
  double store_ms = 0;
  double total_ms = 0;
  int asr_attempts = 0;
  int tts_attempts = 0;
};

struct PipelineResult {
  CorrectionResult correction;
  std::string raw_audio_id;
  std::string fluent_audio_id;
  std::int64_t fluent_duration_ms = 0;
  StageTimings timings;
};

/// ASR -> correction -> TTS over shared, thread-safe backends.
class Pipeline {
 public:
  Pipeline(std::shared_ptr<AsrBackend> asr, std::shared_ptr<TtsBackend> tts,
           std::shared_ptr<const DetectorConfig> config,
           std::shared_ptr<AudioStore> store);

  /// `audio` must be canonical (mono, 16 kHz). `original_bytes`, when given,
  /// is stored verbatim as the raw clip; otherwise the clip is re-encoded.
  /// An empty fluent transcript skips TTS and stores a 0-sample clip.
  /// Throws PipelineError tagged with the failing stage.
  PipelineResult process(const AudioClip& audio, Language lang,
                         std::string_view original_bytes = {}) const;

  const DetectorConfig& config() const { return *config_; }
  AudioStore& store() const { return *store_; }

 private:
  std::shared_ptr<AsrBackend> asr_;
  std::shared_ptr<TtsBackend> tts_;
  std::shared_ptr<const DetectorConfig> config_;
  std::shared_ptr<AudioStore> store_;
};

}  // namespace disfix
