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


#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <string>
#include <thread>
#include <vector>

#include "disfix/audio.hpp"
#include "disfix/audio_store.hpp"
#include "disfix/backends.hpp"
#include "disfix/error.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace disfix;
using disfix::testing::fixture_dir;
using disfix::testing::read_file;

namespace {

void put_u16(std::string& s, std::uint16_t v) {
  s.push_back(static_cast<char>(v & 0xFF));
  s.push_back(static_cast<char>(v >> 8));
}

void put_u32(std::string& s, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

// Hand-assembled RIFF/WAVE file.
std::string riff(std::uint16_t format, std::uint16_t channels,
                 std::uint32_t rate, std::uint16_t bits,
                 const std::string& data, bool extensible = false) {
  std::string fmt;
  put_u16(fmt, extensible ? 0xFFFE : format);
  put_u16(fmt, channels);
  put_u32(fmt, rate);
  put_u32(fmt, rate * channels * bits / 8);
  put_u16(fmt, static_cast<std::uint16_t>(channels * bits / 8));
  put_u16(fmt, bits);
  if (extensible) {
    put_u16(fmt, 22);
    put_u16(fmt, bits);
    put_u32(fmt, 0);
    put_u16(fmt, format);
    fmt += std::string("\x00\x00\x00\x00\x10\x00\x80\x00\x00\xAA\x00\x38\x9B\x71", 14);
  }
  std::string body = "WAVE";
  body += "fmt ";
  put_u32(body, static_cast<std::uint32_t>(fmt.size()));
  body += fmt;
  body += "data";
  put_u32(body, static_cast<std::uint32_t>(data.size()));
  body += data;
  if (data.size() % 2) body.push_back('\0');
  std::string out = "RIFF";
  put_u32(out, static_cast<std::uint32_t>(body.size()));
  return out + body;
}

AudioClip clip_of(std::vector<std::int16_t> samples, int rate = 16000,
                  int channels = 1) {
  AudioClip c;
  c.samples = std::move(samples);
  c.sample_rate = rate;
  c.channels = channels;
  return c;
}

}  // namespace

TEST_SUITE("audio") {

TEST_CASE("PCM16 round trip") {
  auto c = clip_of({0, 1, -1, 32767, -32768, 1234});
  c.comment = "I um want to go";
  const auto bytes = encode_wav(c);
  CHECK(bytes.substr(0, 4) == "RIFF");
  CHECK(decode_wav(bytes) == c);
  c.comment.clear();
  CHECK(encode_wav(c).size() == 44 + 12);
}

TEST_CASE("decodes other sample formats") {
  const std::string u8("\x80\xFF\x00", 3);
  auto c = decode_wav(riff(1, 1, 8000, 8, u8));
  CHECK(c.samples == std::vector<std::int16_t>{0, 127 * 256, -32768});
  CHECK(c.sample_rate == 8000);

  std::string s24;
  for (std::int32_t v : {0x000000, 0x7FFFFF, -0x800000}) {
    s24.push_back(static_cast<char>(v & 0xFF));
    s24.push_back(static_cast<char>((v >> 8) & 0xFF));
    s24.push_back(static_cast<char>((v >> 16) & 0xFF));
  }
  c = decode_wav(riff(1, 1, 16000, 24, s24));
  CHECK(c.samples == std::vector<std::int16_t>{0, 32767, -32768});

  std::string s32;
  for (std::int32_t v : {0, 0x7FFFFFFF, -0x7FFFFFFF - 1}) put_u32(s32, static_cast<std::uint32_t>(v));
  c = decode_wav(riff(1, 1, 16000, 32, s32));
  CHECK(c.samples == std::vector<std::int16_t>{0, 32767, -32768});

  std::string f32;
  for (float v : {0.0f, 0.5f, -1.0f, 2.0f}) {
    std::uint32_t bits;
    std::memcpy(&bits, &v, 4);
    put_u32(f32, bits);
  }
  c = decode_wav(riff(3, 1, 16000, 32, f32));
  REQUIRE(c.samples.size() == 4);
  CHECK(c.samples[0] == 0);
  CHECK(std::abs(c.samples[1] - 16384) <= 1);
  CHECK(c.samples[2] <= -32767);
  CHECK(c.samples[3] == 32767);

  std::string s16;
  put_u16(s16, 100);
  put_u16(s16, static_cast<std::uint16_t>(-100));
  c = decode_wav(riff(1, 2, 44100, 16, s16, true));
  CHECK(c.channels == 2);
  CHECK(c.samples == std::vector<std::int16_t>{100, -100});
}

TEST_CASE("rejects bad input") {
  for (const std::string& bad :
       {std::string(), std::string("not a wav file at all"),
        std::string("RIFF\x04\x00\x00\x00WAVE", 12),
        riff(2, 1, 16000, 16, "\x00\x00"), riff(1, 0, 16000, 16, "\x00\x00"),
        riff(1, 1, 16000, 12, "\x00\x00")}) {
    CHECK_THROWS_AS(decode_wav(bad), ParseError);
  }
  auto good = encode_wav(clip_of({1, 2, 3}));
  CHECK_THROWS_AS(decode_wav(good.substr(0, 30)), ParseError);
}

TEST_CASE("canonical form") {
  const auto mono = clip_of({10, 20});
  CHECK(to_canonical(mono) == mono);

  const auto stereo = clip_of({100, 300, -50, 50}, 16000, 2);
  CHECK(to_canonical(stereo).samples == std::vector<std::int16_t>{200, 0});

  std::vector<std::int16_t> ramp(48000);
  for (std::size_t i = 0; i < ramp.size(); ++i) {
    ramp[i] = static_cast<std::int16_t>(i % 3000);
  }
  const auto down = to_canonical(clip_of(ramp, 48000));
  CHECK(down.sample_rate == 16000);
  CHECK(down.samples.size() == 16000);
  CHECK(down.samples[1] == 3);
  CHECK(down.duration_ms() == 1000);

  const auto up = to_canonical(clip_of({0, 300}, 8000));
  CHECK(up.samples == std::vector<std::int16_t>{0, 150, 300, 300});
}

TEST_CASE("content digest is SHA-256 of the little-endian samples") {
  CHECK(content_digest(AudioClip{}) ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(content_digest(clip_of({0})) ==
        "96a296d224f285c67bee93c30f8a309157f0daa35dc5b87e410b78630a09cfc7");
  // Comments do not change the digest.
  auto a = clip_of({5, 6});
  auto b = a;
  b.comment = "x";
  CHECK(content_digest(a) == content_digest(b));
}

TEST_CASE("mock TTS duration law") {
  MockTts tts;
  for (std::size_t w = 0; w <= 12; ++w) {
    std::string text;
    for (std::size_t k = 0; k < w; ++k) text += "word ";
    const auto s = tts.synthesize(text, Language::kEnglish);
    const std::int64_t ms = w == 0 ? 0 : 150 * static_cast<std::int64_t>(w) - 50;
    CHECK(s.clip.duration_ms() == ms);
    CHECK(s.clip.samples.size() == static_cast<std::size_t>(ms * 16));
    CHECK(s.clip.is_canonical());
  }
  const auto four = tts.synthesize("I want to go.", Language::kEnglish).clip;
  REQUIRE(four.samples.size() == 8800);
  std::int16_t peak = 0;
  for (std::size_t i = 0; i < 1600; ++i) {
    peak = std::max<std::int16_t>(peak, four.samples[i]);
  }
  CHECK(peak == 16384);
  for (std::size_t i = 1600; i < 2400; ++i) CHECK(four.samples[i] == 0);
  // 440 Hz: sample 9 of the beep is sin(2*pi*440*9/16000) at half scale.
  CHECK(four.samples[9] ==
        static_cast<std::int16_t>(std::lround(0.5 * 32767 * std::sin(2 * M_PI * 440 * 9 / 16000.0))));
  CHECK(tts.synthesize("मैं घर जा रहा हूँ।", Language::kHindi).clip.duration_ms() ==
        700);
}

TEST_CASE("mock ASR lookup order") {
  MockAsr asr;
  const auto a = clip_of({1, 2, 3});
  asr.add_fixture(a, "hello world");
  CHECK(asr.transcribe(a, Language::kEnglish).text == "hello world");

  auto commented = clip_of({9, 9});
  commented.comment = "from the comment";
  CHECK(asr.transcribe(commented, Language::kEnglish).text == "from the comment");

  try {
    asr.transcribe(clip_of({4}), Language::kEnglish);
    FAIL("expected a miss");
  } catch (const BackendError& e) {
    CHECK(e.kind() == BackendError::Kind::kNoFixture);
    CHECK(std::string(e.what()) == "no fixture transcript");
  }
}

TEST_CASE("mock ASR fixture file") {
  MockAsr asr;
  asr.load_fixtures(fixture_dir() / "audio" / "asr_fixtures.jsonl");
  CHECK(asr.fixture_count() == 2);
  const auto wav = decode_wav(read_file(fixture_dir() / "audio" / "en_um_um.wav"));
  CHECK(asr.transcribe(wav, Language::kEnglish).text == "I um um want to go");
  const auto stereo =
      decode_wav(read_file(fixture_dir() / "audio" / "en_stereo_comment.wav"));
  CHECK(stereo.channels == 2);
  CHECK(stereo.sample_rate == 44100);
  CHECK(asr.transcribe(to_canonical(stereo), Language::kEnglish).text ==
        "I I want to go");
  CHECK_THROWS_AS(asr.load_fixtures(fixture_dir() / "missing.jsonl"),
                  ConfigError);
}

TEST_CASE("audio store TTL") {
  auto now = AudioStore::Clock::time_point{};
  AudioStore store(std::chrono::seconds(60), [&] { return now; });
  const auto id = store.put("abc");
  CHECK(id.size() == 32);
  CHECK(id.find_first_not_of("0123456789abcdef") == std::string::npos);
  CHECK(store.put("abc") != id);
  REQUIRE(store.get(id));
  CHECK(store.get(id)->bytes == "abc");
  CHECK(store.get(id)->content_type == "audio/wav");
  CHECK_FALSE(store.get("nope"));
  now += std::chrono::seconds(59);
  CHECK(store.get(id));
  now += std::chrono::seconds(2);
  CHECK_FALSE(store.get(id));
  CHECK(store.evict_expired() >= 1);
  CHECK(store.size() == 0);
}

TEST_CASE("audio store under concurrent use") {
  AudioStore store;
  std::vector<std::thread> threads;
  std::vector<std::vector<std::string>> ids(8);
  for (std::size_t t = 0; t < 8; ++t) {
    threads.emplace_back([&, t] {
      for (int i = 0; i < 200; ++i) ids[t].push_back(store.put(std::to_string(i)));
    });
  }
  for (auto& t : threads) t.join();
  CHECK(store.size() == 1600);
  CHECK(store.get(ids[3][17])->bytes == "17");
}

}  // TEST_SUITE
