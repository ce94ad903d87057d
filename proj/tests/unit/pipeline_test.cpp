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
#include <memory>
#include <string>
#include <thread>

#include "disfix/audio.hpp"
#include "disfix/backends.hpp"
#include "disfix/error.hpp"
#include "disfix/http_backends.hpp"
#include "disfix/pipeline.hpp"
#include "doctest.h"
#include "fake_remote.hpp"
#include "test_support.hpp"

using namespace disfix;
using disfix::testing::FakeRemote;
using disfix::testing::fixture_dir;
using disfix::testing::read_file;
using disfix::testing::shipped_config;

namespace {

class FailingTts : public TtsBackend {
 public:
  Synthesis synthesize(std::string_view, Language) override {
    ++calls;
    throw BackendError(BackendError::Kind::kUnavailable, "tts down");
  }
  int calls = 0;
};

struct Rig {
  std::shared_ptr<MockAsr> asr = std::make_shared<MockAsr>();
  std::shared_ptr<TtsBackend> tts = std::make_shared<MockTts>();
  std::shared_ptr<AudioStore> store = std::make_shared<AudioStore>();
  std::shared_ptr<const DetectorConfig> cfg =
      std::make_shared<DetectorConfig>(shipped_config());

  Rig() { asr->load_fixtures(fixture_dir() / "audio" / "asr_fixtures.jsonl"); }
  Pipeline pipeline() const { return Pipeline(asr, tts, cfg, store); }
};

std::string wav_bytes(const std::string& name) {
  return read_file(fixture_dir() / "audio" / name);
}

AudioClip sine_clip(std::size_t n) {
  AudioClip c;
  for (std::size_t i = 0; i < n; ++i) c.samples.push_back(static_cast<std::int16_t>(i * 7));
  return c;
}

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("fixture clip end to end") {
  Rig rig;
  const auto bytes = wav_bytes("en_um_um.wav");
  const auto clip = decode_wav(bytes);
  const auto before = clip;
  const auto r = rig.pipeline().process(clip, Language::kEnglish, bytes);
  CHECK(clip == before);
  CHECK(r.correction.source.raw_text == "I um um want to go");
  CHECK(detokenize(r.correction.fluent) == "I want to go");
  CHECK(r.correction.disfluency_count == 2);
  CHECK(r.correction.utterance_type == DisfluencyType::kFiller);
  CHECK(r.fluent_duration_ms == 550);

  const auto raw = rig.store->get(r.raw_audio_id);
  REQUIRE(raw);
  CHECK(raw->bytes == bytes);
  const auto fluent = rig.store->get(r.fluent_audio_id);
  REQUIRE(fluent);
  CHECK(decode_wav(fluent->bytes).samples.size() == 8800);
  CHECK(r.timings.asr_attempts == 1);
  CHECK(r.timings.tts_attempts == 1);
  CHECK(r.timings.total_ms >= r.timings.dc_ms);
}

TEST_CASE("hindi fixture clip") {
  Rig rig;
  const auto clip = decode_wav(wav_bytes("hi_um_um.wav"));
  const auto r = rig.pipeline().process(clip, Language::kHindi);
  CHECK(detokenize(r.correction.fluent) == "मैं बाज़ार जाना चाहता हूँ");
  CHECK(r.correction.disfluency_count == 2);
  CHECK(r.correction.utterance_type == DisfluencyType::kFiller);
  CHECK(r.fluent_duration_ms == 700);
  // Without original bytes the clip is re-encoded.
  CHECK(rig.store->get(r.raw_audio_id)->bytes == encode_wav(clip));
}

TEST_CASE("empty fluent transcript skips synthesis") {
  Rig rig;
  auto failing = std::make_shared<FailingTts>();
  rig.tts = failing;
  const auto clip = sine_clip(100);
  rig.asr->add_fixture(clip, "um uh");
  const auto r = rig.pipeline().process(clip, Language::kEnglish);
  CHECK(failing->calls == 0);
  CHECK(r.fluent_duration_ms == 0);
  CHECK(r.correction.disfluency_count == 2);
  CHECK(decode_wav(rig.store->get(r.fluent_audio_id)->bytes).samples.empty());
}

TEST_CASE("failures carry their stage") {
  Rig rig;
  auto stereo = sine_clip(10);
  stereo.channels = 2;
  try {
    rig.pipeline().process(stereo, Language::kEnglish);
    FAIL("expected a validation error");
  } catch (const PipelineError& e) {
    CHECK(e.stage() == Stage::kValidation);
  }

  try {
    rig.pipeline().process(sine_clip(3), Language::kEnglish);
    FAIL("expected an ASR error");
  } catch (const PipelineError& e) {
    CHECK(e.stage() == Stage::kAsr);
    CHECK(e.detail() == "no fixture transcript");
    CHECK(std::string(stage_name(e.stage())) == "asr");
  }

  rig.tts = std::make_shared<FailingTts>();
  try {
    rig.pipeline().process(decode_wav(wav_bytes("en_um_um.wav")),
                           Language::kEnglish);
    FAIL("expected a TTS error");
  } catch (const PipelineError& e) {
    CHECK(e.stage() == Stage::kTts);
  }

  auto en_only = std::make_shared<DetectorConfig>(DetectorConfig::english_defaults());
  Pipeline narrow(rig.asr, std::make_shared<MockTts>(), en_only, rig.store);
  try {
    narrow.process(sine_clip(3), Language::kHindi);
    FAIL("expected a validation error");
  } catch (const PipelineError& e) {
    CHECK(e.stage() == Stage::kValidation);
  }
  CHECK_THROWS_AS(Pipeline(nullptr, rig.tts, rig.cfg, rig.store), ConfigError);
}

TEST_CASE("split_url") {
  CHECK(split_url("http://host:9000/v1/asr") ==
        std::pair<std::string, std::string>{"http://host:9000", "/v1/asr"});
  CHECK(split_url("http://host") ==
        std::pair<std::string, std::string>{"http://host", "/"});
  CHECK_THROWS_AS(split_url("host/asr"), ConfigError);
  CHECK_THROWS_AS(split_url("ftp://host/asr"), ConfigError);
  CHECK_THROWS_AS(split_url("http:///asr"), ConfigError);
}

TEST_CASE("remote ASR wire format") {
  FakeRemote remote;
  std::string lang;
  std::string filename;
  std::string audio;
  remote.on_asr([&](const httplib::Request& req, httplib::Response& res, int) {
    lang = req.get_file_value("lang").content;
    filename = req.get_file_value("audio").filename;
    audio = req.get_file_value("audio").content;
    res.set_content(R"({"text": "I I want to go"})", "application/json");
  });
  auto asr = make_http_asr({remote.url("/asr"), 2000});
  const auto clip = sine_clip(160);
  const auto t = asr->transcribe(clip, Language::kHindi);
  CHECK(t.text == "I I want to go");
  CHECK(t.attempts == 1);
  CHECK(lang == "hi");
  CHECK(filename == "audio.wav");
  CHECK(decode_wav(audio) == clip);
}

TEST_CASE("remote timeout is retried once") {
  FakeRemote remote;
  remote.on_asr([](const httplib::Request&, httplib::Response& res, int call) {
    if (call == 0) std::this_thread::sleep_for(std::chrono::milliseconds(600));
    res.set_content(R"({"text": "ok"})", "application/json");
  });
  auto asr = make_http_asr({remote.url("/asr"), 200});
  const auto t = asr->transcribe(sine_clip(10), Language::kEnglish);
  CHECK(t.text == "ok");
  CHECK(t.attempts == 2);

  remote.on_asr([](const httplib::Request&, httplib::Response& res, int) {
    std::this_thread::sleep_for(std::chrono::milliseconds(600));
    res.set_content(R"({"text": "late"})", "application/json");
  });
  try {
    asr->transcribe(sine_clip(10), Language::kEnglish);
    FAIL("expected a timeout");
  } catch (const BackendError& e) {
    CHECK(e.kind() == BackendError::Kind::kTimeout);
  }
}

TEST_CASE("remote errors are mapped and not retried") {
  FakeRemote remote;
  remote.on_asr([](const httplib::Request&, httplib::Response& res, int) {
    res.status = 500;
    res.set_content(R"({"message": "model crashed"})", "application/json");
  });
  auto asr = make_http_asr({remote.url("/asr"), 2000});
  try {
    asr->transcribe(sine_clip(10), Language::kEnglish);
    FAIL("expected a remote error");
  } catch (const BackendError& e) {
    CHECK(e.kind() == BackendError::Kind::kRemoteStatus);
    CHECK(e.status() == 500);
    CHECK(std::string(e.what()).find("model crashed") != std::string::npos);
  }
  CHECK(remote.asr_calls() == 1);

  remote.on_asr([](const httplib::Request&, httplib::Response& res, int) {
    res.status = 400;
    res.set_content(R"({"code": "unsupported_language"})", "application/json");
  });
  try {
    asr->transcribe(sine_clip(10), Language::kHindi);
    FAIL("expected a language error");
  } catch (const BackendError& e) {
    CHECK(e.kind() == BackendError::Kind::kUnsupportedLanguage);
  }

  remote.on_asr([](const httplib::Request&, httplib::Response& res, int) {
    res.set_content("not json", "text/plain");
  });
  try {
    asr->transcribe(sine_clip(10), Language::kEnglish);
    FAIL("expected a malformed reply");
  } catch (const BackendError& e) {
    CHECK(e.kind() == BackendError::Kind::kMalformedReply);
  }

  auto dead = make_http_asr(
      {"http://127.0.0.1:" + std::to_string(disfix::testing::dead_port()) + "/asr", 500});
  try {
    dead->transcribe(sine_clip(10), Language::kEnglish);
    FAIL("expected a connection error");
  } catch (const BackendError& e) {
    INFO(std::string(e.what()));
    CHECK(e.kind() == BackendError::Kind::kUnavailable);
  }
}

TEST_CASE("remote TTS") {
  FakeRemote remote;
  std::string body;
  remote.on_tts([&](const httplib::Request& req, httplib::Response& res, int) {
    body = req.body;
    AudioClip c;
    c.sample_rate = 32000;
    c.channels = 2;
    c.samples.assign(64000 * 2, 100);
    res.set_content(encode_wav(c), "audio/wav");
  });
  auto tts = make_http_tts({remote.url("/tts"), 2000});
  const auto s = tts->synthesize("I want to go", Language::kEnglish);
  CHECK(s.clip.is_canonical());
  CHECK(s.clip.duration_ms() == 2000);
  const auto sent = Json::parse(body);
  CHECK(sent.at("text") == "I want to go");
  CHECK(sent.at("lang") == "en");

  const auto quiet = tts->synthesize("", Language::kEnglish);
  CHECK(quiet.clip.samples.empty());
  CHECK(remote.tts_calls() == 1);

  remote.on_tts([](const httplib::Request&, httplib::Response& res, int) {
    res.set_content("RIFFjunk", "audio/wav");
  });
  try {
    tts->synthesize("hello", Language::kEnglish);
    FAIL("expected a malformed reply");
  } catch (const BackendError& e) {
    CHECK(e.kind() == BackendError::Kind::kMalformedReply);
  }
}

TEST_CASE("remote failure inside the pipeline names the stage") {
  FakeRemote remote;
  remote.on_asr([](const httplib::Request&, httplib::Response& res, int) {
    res.status = 503;
  });
  Rig rig;
  Pipeline p(make_http_asr({remote.url("/asr"), 2000}),
             make_http_tts({remote.url("/tts"), 2000}), rig.cfg, rig.store);
  try {
    p.process(sine_clip(10), Language::kEnglish);
    FAIL("expected an ASR failure");
  } catch (const PipelineError& e) {
    CHECK(e.stage() == Stage::kAsr);
  }
  CHECK(rig.store->size() == 0);
}

}  // TEST_SUITE
