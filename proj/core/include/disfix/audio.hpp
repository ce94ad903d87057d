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
#include <string>
#include <string_view>
#include <vector>

namespace disfix {

inline constexpr int kCanonicalSampleRate = 16000;

/// Interleaved signed 16-bit PCM. The pipeline only accepts canonical clips:
/// mono at kCanonicalSampleRate.
struct AudioClip {
  std::vector<std::int16_t> samples;
  int sample_rate = kCanonicalSampleRate;
  int channels = 1;
  /// Text of the WAV LIST/INFO "ICMT" chunk, if any.
  std::string comment;

  std::size_t frames() const {
    return channels > 0 ? samples.size() / static_cast<std::size_t>(channels)
                        : 0;
  }
  /// round(1000 * frames / sample_rate).
  std::int64_t duration_ms() const;
  bool is_canonical() const {
    return channels == 1 && sample_rate == kCanonicalSampleRate;
  }
  bool operator==(const AudioClip&) const = default;
};

/// Parses a RIFF/WAVE file. Accepts integer PCM (8/16/24/32 bit) and 32-bit
/// float, plain or WAVE_FORMAT_EXTENSIBLE, any channel count. Samples are
/// converted to 16-bit. Throws ParseError on anything else.
AudioClip decode_wav(std::string_view bytes);

/// Writes 16-bit PCM WAV; a non-empty comment goes into LIST/INFO/ICMT.
std::string encode_wav(const AudioClip& clip);

/// Averages channels to mono and linearly resamples to the canonical rate.
AudioClip to_canonical(const AudioClip& clip);

/// Lowercase hex SHA-256 of the little-endian sample bytes. Rate, channel
/// count and comment are not part of the digest.
std::string content_digest(const AudioClip& clip);

}  // namespace disfix
