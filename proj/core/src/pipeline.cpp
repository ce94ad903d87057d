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

#include "disfix/pipeline.hpp"

#include <chrono>

namespace disfix {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since)
      .count();
}

}  // namespace

std::string_view stage_name(Stage stage) {
  switch (stage) {
    case Stage::kValidation:
      return "validation";
    case Stage::kAsr:
      return "asr";
    case Stage::kDc:
      return "dc";
    case Stage::kTts:
      return "tts";
    case Stage::kStore:
      return "store";
  }
  return "validation";
}

Pipeline::Pipeline(std::shared_ptr<AsrBackend> asr,
                   std::shared_ptr<TtsBackend> tts,
                   std::shared_ptr<const DetectorConfig> config,
                   std::shared_ptr<AudioStore> store)
    : asr_(std::move(asr)),
      tts_(std::move(tts)),
      config_(std::move(config)),
      store_(std::move(store)) {
  if (!asr_ || !tts_ || !config_ || !store_) {
    throw ConfigError("pipeline needs ASR, TTS, config and store");
  }
}

PipelineResult Pipeline::process(const AudioClip& audio, Language lang,
                                 std::string_view original_bytes) const {
  const auto started = Clock::now();
  if (!audio.is_canonical()) {
    throw PipelineError(Stage::kValidation,
                        "audio must be mono at 16000 Hz, got " +
                            std::to_string(audio.channels) + " channel(s) at " +
                            std::to_string(audio.sample_rate) + " Hz");
  }
  if (!config_->supports(lang)) {
    throw PipelineError(Stage::kValidation,
                        "unsupported language '" +
                            std::string(language_code(lang)) + "'");
  }

  PipelineResult result;
  auto& timings = result.timings;

  auto t0 = Clock::now();
  Transcription heard;
  try {
    heard = asr_->transcribe(audio, lang);
  } catch (const std::exception& e) {
    throw PipelineError(Stage::kAsr, e.what());
  }
  timings.asr_ms = elapsed_ms(t0);
  timings.asr_attempts = heard.attempts;

  t0 = Clock::now();
  try {
    result.correction = correct(tokenize(heard.text, lang), *config_);
  } catch (const std::exception& e) {
    throw PipelineError(Stage::kDc, e.what());
  }
  timings.dc_ms = elapsed_ms(t0);

  AudioClip fluent_audio;
  if (result.correction.fluent.word_count() > 0) {
    t0 = Clock::now();
    Synthesis spoken;
    try {
      spoken = tts_->synthesize(detokenize(result.correction.fluent), lang);
    } catch (const std::exception& e) {
      throw PipelineError(Stage::kTts, e.what());
    }
    timings.tts_ms = elapsed_ms(t0);
    timings.tts_attempts = spoken.attempts;
    fluent_audio = std::move(spoken.clip);
  }
  result.fluent_duration_ms = fluent_audio.duration_ms();

  t0 = Clock::now();
  try {
    result.raw_audio_id = store_->put(original_bytes.empty()
                                          ? encode_wav(audio)
                                          : std::string(original_bytes));
    result.fluent_audio_id = store_->put(encode_wav(fluent_audio));
  } catch (const std::exception& e) {
    throw PipelineError(Stage::kStore, e.what());
  }
  timings.store_ms = elapsed_ms(t0);
  timings.total_ms = elapsed_ms(started);
  return result;
}

}  // namespace disfix
