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

#include <algorithm>
#include <cmath>
#include <cstring>
#include <optional>

#include "disfix/audio.hpp"
#include "disfix/error.hpp"

namespace disfix {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t le16(std::string_view b, std::size_t at) {
  return static_cast<std::uint16_t>(static_cast<unsigned char>(b[at]) |
                                    static_cast<unsigned char>(b[at + 1]) << 8);
}

std::uint32_t le32(std::string_view b, std::size_t at) {
  return static_cast<std::uint32_t>(le16(b, at)) |
         static_cast<std::uint32_t>(le16(b, at + 2)) << 16;
}

void put16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>(v >> 8));
}

void put32(std::string& out, std::uint32_t v) {
  put16(out, static_cast<std::uint16_t>(v & 0xFFFF));
  put16(out, static_cast<std::uint16_t>(v >> 16));
}

[[noreturn]] void bad(const std::string& why) {
  throw ParseError("invalid WAV: " + why);
}

struct Format {
  std::uint16_t tag = 0;
  std::uint16_t channels = 0;
  std::uint32_t rate = 0;
  std::uint16_t block_align = 0;
  std::uint16_t bits = 0;
};

Format parse_fmt(std::string_view chunk) {
  if (chunk.size() < 16) bad("fmt chunk too short");
  Format f;
  f.tag = le16(chunk, 0);
  f.channels = le16(chunk, 2);
  f.rate = le32(chunk, 4);
  f.block_align = le16(chunk, 12);
  f.bits = le16(chunk, 14);
  if (f.tag == kFormatExtensible) {
    if (chunk.size() < 26) bad("extensible fmt chunk too short");
    f.tag = le16(chunk, 24);  // first two bytes of the sub-format GUID
  }
  if (f.tag != kFormatPcm && f.tag != kFormatFloat) {
    bad("unsupported sample format " + std::to_string(f.tag));
  }
  if (f.channels == 0) bad("zero channels");
  if (f.rate == 0) bad("zero sample rate");
  const bool int_ok = f.tag == kFormatPcm &&
                      (f.bits == 8 || f.bits == 16 || f.bits == 24 ||
                       f.bits == 32);
  const bool float_ok = f.tag == kFormatFloat && f.bits == 32;
  if (!int_ok && !float_ok) {
    bad("unsupported bit depth " + std::to_string(f.bits));
  }
  if (f.block_align != f.channels * (f.bits / 8)) bad("inconsistent block align");
  return f;
}

std::int16_t convert(std::string_view b, std::size_t at, const Format& f) {
  if (f.tag == kFormatFloat) {
    std::uint32_t raw = le32(b, at);
    float v;
    std::memcpy(&v, &raw, sizeof v);
    if (!std::isfinite(v)) v = 0.0f;
    v = std::clamp(v, -1.0f, 1.0f);
    return static_cast<std::int16_t>(std::lround(v * 32767.0f));
  }
  switch (f.bits) {
    case 8:
      return static_cast<std::int16_t>(
          (static_cast<int>(static_cast<unsigned char>(b[at])) - 128) << 8);
    case 16:
      return static_cast<std::int16_t>(le16(b, at));
    case 24:
      return static_cast<std::int16_t>(le16(b, at + 1));
    default:
      return static_cast<std::int16_t>(le16(b, at + 2));
  }
}

std::string parse_info(std::string_view list) {
  if (list.size() < 4 || list.substr(0, 4) != "INFO") return {};
  std::size_t pos = 4;
  while (pos + 8 <= list.size()) {
    auto id = list.substr(pos, 4);
    std::size_t size = le32(list, pos + 4);
    pos += 8;
    size = std::min(size, list.size() - pos);
    if (id == "ICMT") {
      auto text = list.substr(pos, size);
      if (auto nul = text.find('\0'); nul != std::string_view::npos) {
        text = text.substr(0, nul);
      }
      return std::string(text);
    }
    pos += size + (size & 1);
  }
  return {};
}

}  // namespace

AudioClip decode_wav(std::string_view bytes) {
  if (bytes.size() < 12 || bytes.substr(0, 4) != "RIFF" ||
      bytes.substr(8, 4) != "WAVE") {
    bad("missing RIFF/WAVE header");
  }
  std::optional<Format> fmt;
  std::optional<std::string_view> data;
  std::string comment;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    auto id = bytes.substr(pos, 4);
    std::size_t size = le32(bytes, pos + 4);
    pos += 8;
    // Streaming writers leave 0 or 0xFFFFFFFF in the data size; clamp to
    // what is actually there.
    size = std::min(size, bytes.size() - pos);
    auto body = bytes.substr(pos, size);
    if (id == "fmt ") {
      fmt = parse_fmt(body);
    } else if (id == "data") {
      data = body;
    } else if (id == "LIST") {
      if (auto c = parse_info(body); !c.empty()) comment = std::move(c);
    }
    pos += size + (size & 1);
  }
  if (!fmt) bad("no fmt chunk");
  if (!data) bad("no data chunk");

  AudioClip clip;
  clip.sample_rate = static_cast<int>(fmt->rate);
  clip.channels = fmt->channels;
  clip.comment = std::move(comment);
  const std::size_t width = fmt->bits / 8;
  const std::size_t frames = data->size() / fmt->block_align;
  clip.samples.reserve(frames * fmt->channels);
  for (std::size_t i = 0; i < frames * fmt->channels; ++i) {
    clip.samples.push_back(convert(*data, i * width, *fmt));
  }
  return clip;
}

std::string encode_wav(const AudioClip& clip) {
  if (clip.channels < 1 || clip.sample_rate < 1) {
    throw ContractViolation("encode_wav: bad channel count or sample rate");
  }
  std::string info;
  if (!clip.comment.empty()) {
    std::string text = clip.comment;
    text.push_back('\0');
    info = "INFO";
    info += "ICMT";
    put32(info, static_cast<std::uint32_t>(text.size()));
    info += text;
    if (text.size() & 1) info.push_back('\0');
  }
  const auto data_size =
      static_cast<std::uint32_t>(clip.samples.size() * sizeof(std::int16_t));
  const auto channels = static_cast<std::uint16_t>(clip.channels);
  const auto rate = static_cast<std::uint32_t>(clip.sample_rate);

  std::string out;
  out.reserve(44 + info.size() + 8 + data_size);
  out += "RIFF";
  put32(out, 0);  // patched below
  out += "WAVE";
  out += "fmt ";
  put32(out, 16);
  put16(out, kFormatPcm);
  put16(out, channels);
  put32(out, rate);
  put32(out, rate * channels * 2);
  put16(out, static_cast<std::uint16_t>(channels * 2));
  put16(out, 16);
  if (!info.empty()) {
    out += "LIST";
    put32(out, static_cast<std::uint32_t>(info.size()));
    out += info;
  }
  out += "data";
  put32(out, data_size);
  for (auto s : clip.samples) put16(out, static_cast<std::uint16_t>(s));

  const auto riff_size = static_cast<std::uint32_t>(out.size() - 8);
  for (int i = 0; i < 4; ++i) {
    out[4 + i] = static_cast<char>((riff_size >> (8 * i)) & 0xFF);
  }
  return out;
}

}  // namespace disfix
