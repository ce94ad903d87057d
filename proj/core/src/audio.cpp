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

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>

#include "disfix/audio.hpp"
#include "disfix/error.hpp"

namespace disfix {

std::int64_t AudioClip::duration_ms() const {
  if (sample_rate <= 0) return 0;
  return std::llround(1000.0 * static_cast<double>(frames()) /
                      static_cast<double>(sample_rate));
}

AudioClip to_canonical(const AudioClip& clip) {
  if (clip.channels < 1 || clip.sample_rate < 1) {
    throw ContractViolation("to_canonical: bad channel count or sample rate");
  }
  if (clip.is_canonical()) return clip;

  const std::size_t channels = static_cast<std::size_t>(clip.channels);
  const std::size_t frames = clip.frames();
  std::vector<double> mono(frames);
  for (std::size_t f = 0; f < frames; ++f) {
    double sum = 0;
    for (std::size_t c = 0; c < channels; ++c) {
      sum += clip.samples[f * channels + c];
    }
    mono[f] = sum / static_cast<double>(channels);
  }

  AudioClip out;
  out.comment = clip.comment;
  out.sample_rate = kCanonicalSampleRate;
  out.channels = 1;
  const double ratio =
      static_cast<double>(clip.sample_rate) / kCanonicalSampleRate;
  const auto n = static_cast<std::size_t>(
      std::llround(static_cast<double>(frames) / ratio));
  out.samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double src = static_cast<double>(i) * ratio;
    const auto lo = std::min(static_cast<std::size_t>(src), frames - 1);
    const auto hi = std::min(lo + 1, frames - 1);
    const double frac = src - static_cast<double>(lo);
    const double v = mono[lo] + (mono[hi] - mono[lo]) * frac;
    out.samples.push_back(
        static_cast<std::int16_t>(std::clamp(std::lround(v), -32768L, 32767L)));
  }
  return out;
}

std::string content_digest(const AudioClip& clip) {
  std::string bytes;
  bytes.reserve(clip.samples.size() * 2);
  for (auto s : clip.samples) {
    const auto u = static_cast<std::uint16_t>(s);
    bytes.push_back(static_cast<char>(u & 0xFF));
    bytes.push_back(static_cast<char>(u >> 8));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(),
                 nullptr) != 1) {
    throw Error("SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    hex.push_back(kHex[md[i] >> 4]);
    hex.push_back(kHex[md[i] & 0xF]);
  }
  return hex;
}

}  // namespace disfix
