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


// Acceptance checks. One [PASS]/[FAIL] line per criterion and language;
// exits non-zero if any line fails.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "disfix/audio.hpp"
#include "disfix/backends.hpp"
#include "disfix/classifier.hpp"
#include "disfix/engine.hpp"
#include "disfix/json_io.hpp"
#include "disfix/pipeline.hpp"
#include "disfix/service.hpp"
#include "disfix/synthetic.hpp"
#include "fake_remote.hpp"
#include "httplib.h"
#include "test_support.hpp"

using namespace disfix;
using namespace disfix::testing;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

int failures = 0;

void report(const std::string& name, const Outcome& o) {
  std::printf("[%s] %s%s%s\n", o.ok ? "PASS" : "FAIL", name.c_str(),
              o.detail.empty() ? "" : ": ", o.detail.c_str());
  std::fflush(stdout);
  if (!o.ok) ++failures;
}

std::vector<AnnotatedUtterance> synth(Language lang, std::size_t n,
                                      std::uint64_t seed) {
  const auto seeds = seed_sentences(lang);
  CorpusOptions options;
  options.lang = lang;
  options.count = n;
  options.rng_seed = seed;
  return generate_corpus(seeds, options, shipped_config());
}

std::string join(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) out += (out.empty() ? "" : " ") + w;
  return out;
}

/// Fixture, gold, seed and synthetic texts for `lang`; at least 5000.
std::vector<std::string> property_inputs(Language lang) {
  std::vector<std::string> texts = seed_sentences(lang);
  const auto dir = lang_fixtures(lang);
  for (const auto& j : read_jsonl(dir / "corrections.jsonl")) {
    texts.push_back(j.at("text").get<std::string>());
  }
  for (const auto& j : read_jsonl(dir / "false_starts.jsonl")) {
    texts.push_back(j.at("text").get<std::string>());
  }
  for (const auto& j : read_jsonl(dir / "tokenize.jsonl")) {
    texts.push_back(j.at("text").get<std::string>());
  }
  for (const auto& j : read_jsonl(dir / "gold.jsonl")) {
    texts.push_back(join(annotated_from_json(j).tokens));
  }
  for (const auto& u : synth(lang, 5000, 7)) texts.push_back(join(u.tokens));
  return texts;
}

std::vector<std::string> random_inputs(Language lang, std::size_t n) {
  Rng rng(lang == Language::kEnglish ? 101 : 202);
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_text(rng, lang));
  return out;
}

// 1 -------------------------------------------------------------------------

Outcome closure(Language lang) {
  Outcome o;
  const auto start = Clock::now();
  const auto corpus = synth(lang, 4000, 42);
  const auto rep = evaluate(corpus, engine_labeler(shipped_config()));
  const double secs =
      std::chrono::duration<double>(Clock::now() - start).count();
  const std::pair<DisfluencyType, double> floors[] = {
      {DisfluencyType::kFiller, 0.99},
      {DisfluencyType::kRepetition, 0.95},
      {DisfluencyType::kCorrection, 0.90},
      {DisfluencyType::kFalseStart, 0.90}};
  std::string detail;
  for (const auto& [type, floor] : floors) {
    const auto it = rep.per_type.find(type);
    const double f1 = it == rep.per_type.end() ? 0.0 : it->second.f1();
    const std::size_t n = it == rep.per_type.end() ? 0 : it->second.utterances;
    detail += std::string(type_name(type)) + " " + fmt("%.4f", f1) + " (n=" +
              std::to_string(n) + ") ";
    if (n != 1000) o.fail("expected 1000 " + std::string(type_name(type)));
    if (f1 < floor) o.fail(std::string(type_name(type)) + " F1 " + fmt("%.4f", f1));
  }
  if (secs >= 10.0) o.fail("took " + fmt("%.2f", secs) + " s");
  if (o.ok) o.detail = detail + fmt("in %.2f s", secs);
  return o;
}

// 2-4 -----------------------------------------------------------------------

struct PropertyStats {
  std::size_t cases = 0;
  std::size_t count_violations = 0;
  std::size_t idempotence_violations = 0;
  std::size_t subsequence_violations = 0;
  std::size_t random_cases = 0;
  std::string first_count;
  std::string first_idem;
  std::string first_subseq;
};

PropertyStats properties(Language lang) {
  const auto& cfg = shipped_config();
  PropertyStats s;
  auto texts = property_inputs(lang);
  const std::size_t fixed = texts.size();
  const auto random = random_inputs(lang, 10000);
  texts.insert(texts.end(), random.begin(), random.end());
  for (std::size_t i = 0; i < texts.size(); ++i) {
    const auto& text = texts[i];
    const auto src = tokenize(text, lang);
    const auto r = correct(src, cfg);
    ++s.cases;
    if (i >= fixed) ++s.random_cases;

    std::size_t removed = 0;
    for (const auto& l : r.labels) removed += l.disfluent() ? 1 : 0;
    const auto before = src.word_count();
    const auto after = r.fluent.word_count();
    if (r.disfluency_count != before - after || r.disfluency_count != removed ||
        r.disfluency_count != r.histogram.total() ||
        (r.disfluency_count == 0) !=
            (r.utterance_type == DisfluencyType::kFluent)) {
      if (s.count_violations++ == 0) s.first_count = text;
    }

    const auto again = correct(tokenize(detokenize(r.fluent), lang), cfg);
    if (again.disfluency_count != 0 ||
        detokenize(again.fluent) != detokenize(r.fluent)) {
      if (s.idempotence_violations++ == 0) s.first_idem = text;
    }

    const auto texts_of = [](const Transcript& t) {
      std::vector<std::string> out;
      for (const auto& tok : t.tokens) out.push_back(tok.text);
      return out;
    };
    if (!is_subsequence(texts_of(r.fluent), texts_of(src))) {
      if (s.subsequence_violations++ == 0) s.first_subseq = text;
    }
  }
  return s;
}

Outcome count_consistency(const PropertyStats& s) {
  Outcome o;
  const std::size_t fixed = s.cases - s.random_cases;
  if (fixed < 5000) o.fail("only " + std::to_string(fixed) + " inputs");
  if (s.count_violations) {
    o.fail(std::to_string(s.count_violations) + " violations, first: " + s.first_count);
  }
  if (o.ok) o.detail = "0 violations over " + std::to_string(s.cases) + " utterances";
  return o;
}

Outcome idempotence(const PropertyStats& s) {
  Outcome o;
  if (s.idempotence_violations) {
    o.fail(std::to_string(s.idempotence_violations) + " violations, first: " +
           s.first_idem);
  } else {
    o.detail = "100% of " + std::to_string(s.cases) + " inputs";
  }
  return o;
}

Outcome subsequence(const PropertyStats& s) {
  Outcome o;
  if (s.random_cases < 10000) o.fail("too few random cases");
  if (s.subsequence_violations) {
    o.fail(std::to_string(s.subsequence_violations) + " violations, first: " +
           s.first_subseq);
  }
  if (o.ok) {
    o.detail = "100% of " + std::to_string(s.cases) + " inputs (" +
               std::to_string(s.random_cases) + " random Unicode)";
  }
  return o;
}

// 5 -------------------------------------------------------------------------

Outcome classifier_table() {
  // Worked out by hand: '-' Fluent, F Filler, R Repetition, C Correction,
  // S FalseStart; index f*27 + r*9 + c*3 + s.
  static const std::string kTable =
      "-SSCCSCCCRSSCCSCCCRRSRRSCCC"
      "FSSCCSCCCRSSCCSCCCRRSRRSCCC"
      "FFSFFSCCCFFSFFSCCCRRSRRSCCC";
  const auto letter = [](DisfluencyType t) {
    switch (t) {
      case DisfluencyType::kFiller: return 'F';
      case DisfluencyType::kRepetition: return 'R';
      case DisfluencyType::kCorrection: return 'C';
      case DisfluencyType::kFalseStart: return 'S';
      default: return '-';
    }
  };
  Outcome o;
  std::size_t checked = 0;
  for (std::size_t i = 0; i < 81; ++i) {
    TypeHistogram h;
    h[DisfluencyType::kFiller] = i / 27;
    h[DisfluencyType::kRepetition] = i / 9 % 3;
    h[DisfluencyType::kCorrection] = i / 3 % 3;
    h[DisfluencyType::kFalseStart] = i % 3;
    ++checked;
    if (letter(classify_utterance(h)) != kTable[i]) {
      o.fail("histogram " + std::to_string(i) + " misclassified");
    }
  }
  if (o.ok) o.detail = std::to_string(checked) + " histograms";
  return o;
}

// 6 -------------------------------------------------------------------------

Outcome mock_end_to_end(Language lang) {
  Outcome o;
  auto asr = std::make_shared<MockAsr>();
  asr->load_fixtures(fixture_dir() / "audio" / "asr_fixtures.jsonl");
  auto store = std::make_shared<AudioStore>();
  Pipeline p(asr, std::make_shared<MockTts>(),
             std::make_shared<DetectorConfig>(shipped_config()), store);
  const bool en = lang == Language::kEnglish;
  const auto bytes = read_file(fixture_dir() / "audio" /
                               (en ? "en_um_um.wav" : "hi_um_um.wav"));
  const std::string want = en ? "I want to go" : "मैं बाज़ार जाना चाहता हूँ";
  const std::size_t samples = en ? 8800 : 11200;
  try {
    const auto r = p.process(decode_wav(bytes), lang, bytes);
    const auto fluent = detokenize(r.correction.fluent);
    const auto audio = decode_wav(store->get(r.fluent_audio_id)->bytes);
    if (fluent != want) o.fail("fluent text '" + fluent + "'");
    if (r.correction.disfluency_count != 2) o.fail("count != 2");
    if (r.correction.utterance_type != DisfluencyType::kFiller) o.fail("type != Filler");
    if (audio.samples.size() != samples) {
      o.fail(std::to_string(audio.samples.size()) + " TTS samples");
    }
    if (store->get(r.raw_audio_id)->bytes != bytes) o.fail("raw audio altered");
    if (o.ok) {
      o.detail = "'" + fluent + "', count 2, Filler, " +
                 std::to_string(samples) + " samples (" +
                 std::to_string(r.fluent_duration_ms) + " ms)";
    }
  } catch (const std::exception& e) {
    o.fail(e.what());
  }
  return o;
}

// Service helpers -----------------------------------------------------------

class Running {
 public:
  explicit Running(ServiceConfig c) : svc_(std::move(c)) {
    port_ = svc_.bind_any_port();
    thread_ = std::thread([this] { svc_.listen_after_bind(); });
    svc_.wait_until_ready();
  }
  ~Running() {
    svc_.stop();
    thread_.join();
  }
  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port_);
    c.set_read_timeout(10, 0);
    return c;
  }

 private:
  Service svc_;
  std::thread thread_;
  int port_ = -1;
};

ServiceConfig mock_config() {
  auto c = ServiceConfig::defaults();
  c.asr_fixtures = fixture_dir() / "audio" / "asr_fixtures.jsonl";
  c.max_upload_bytes = kMinUploadBytes;
  return c;
}

httplib::Result post_audio(httplib::Client& c, const std::string& wav,
                           const std::string& lang) {
  httplib::MultipartFormDataItems items = {
      {"audio", wav, "clip.wav", "audio/wav"}, {"lang", lang, "", ""}};
  return c.Post("/api/process", items);
}

// 7 -------------------------------------------------------------------------

Outcome determinism(Language lang) {
  Outcome o;
  const auto dump = [&] {
    std::string out;
    for (const auto& u : synth(lang, 2000, 42)) out += to_json(u).dump() + "\n";
    return out;
  };
  if (dump() != dump()) o.fail("synthetic corpora differ");

  const auto dir = std::filesystem::temp_directory_path() /
                   ("disfix_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  std::string files[2];
  for (int k = 0; k < 2; ++k) {
    const auto out = dir / ("synth" + std::to_string(k) + ".jsonl");
    const std::string cmd = std::string("'") + DISFIX_CLI_PATH + "' synth --lang " +
                            std::string(language_code(lang)) +
                            " --n 4000 --seed 42 --out '" + out.string() + "'";
    if (std::system(cmd.c_str()) != 0) o.fail("synth command failed");
    files[k] = read_file(out);
  }
  std::filesystem::remove_all(dir);
  if (files[0].empty() || files[0] != files[1]) o.fail("synth files differ");

  Running run(mock_config());
  auto c = run.client();
  const std::string code(language_code(lang));
  for (const auto& text : seed_sentences(lang)) {
    const auto t = tokenize(text, lang).words();
    const Json body = {{"text", join({t[0], t[0], "um", t[1], t[1]}) + " " + text},
                       {"lang", code}};
    const auto a = c.Post("/api/correct", body.dump(), "application/json");
    const auto b = c.Post("/api/correct", body.dump(), "application/json");
    if (!a || !b || a->status != 200 || a->body != b->body) {
      o.fail("responses differ for '" + text + "'");
      break;
    }
  }
  if (o.ok) {
    o.detail = "synth files byte-identical (" + std::to_string(files[0].size()) +
               " bytes), 200 /api/correct pairs identical";
  }
  return o;
}

// 8 -------------------------------------------------------------------------

Outcome service_contract(Language lang) {
  Outcome o;
  const std::string code(language_code(lang));
  const bool en = lang == Language::kEnglish;
  const auto wav = read_file(fixture_dir() / "audio" /
                             (en ? "en_um_um.wav" : "hi_um_um.wav"));
  const auto has_keys = [&](const Json& j, std::initializer_list<const char*> keys,
                            const std::string& what) {
    for (const char* k : keys) {
      if (!j.is_object() || !j.contains(k)) o.fail(what + ": missing \"" + k + "\"");
    }
  };
  const auto expect = [&](const httplib::Result& r, int status,
                          const std::string& err, const std::string& what) {
    if (!r) {
      o.fail(what + ": no response");
      return Json();
    }
    if (r->status != status) {
      o.fail(what + ": status " + std::to_string(r->status));
      return Json();
    }
    Json j;
    try {
      j = Json::parse(r->body);
    } catch (const std::exception&) {
      if (r->get_header_value("Content-Type") == "application/json") {
        o.fail(what + ": bad JSON");
      }
      return Json();
    }
    if (!err.empty()) {
      has_keys(j, {"code", "message"}, what);
      if (j.value("code", "") != err) o.fail(what + ": code");
    }
    return j;
  };

  {
    Running run(mock_config());
    auto c = run.client();
    auto j = expect(c.Get("/health"), 200, "", "health");
    if (j.value("status", "") != "ok") o.fail("health body");
    has_keys(j, {"status", "version"}, "health");
    j = expect(c.Get("/api/languages"), 200, "", "languages");
    if (j.value("languages", Json::array()) != Json::array({"en", "hi"})) {
      o.fail("languages body");
    }
    j = expect(c.Get("/api/topic?lang=" + code), 200, "", "topic");
    if (j.value("lang", "") != code) o.fail("topic lang");
    has_keys(j, {"id", "lang", "category", "text"}, "topic");
    expect(c.Get("/api/topic?lang=xx"), 400, "unsupported_language", "topic lang");

    const Json body = {{"text", en ? "I um um want to go" : "मैं अं अं बाज़ार जाना चाहता हूँ"},
                       {"lang", code}};
    j = expect(c.Post("/api/correct", body.dump(), "application/json"), 200, "",
               "correct");
    if (j.value("disfluency_count", 0) != 2) o.fail("correct count");
    has_keys(j, {"raw_text", "fluent_text", "lang", "tokens", "labels", "spans",
                 "histogram", "utterance_type", "disfluency_count"},
             "correct");
    expect(c.Post("/api/correct", "{oops", "application/json"), 400,
           "malformed_json", "correct malformed");
    expect(c.Post("/api/correct", R"({"text": "hi"})", "application/json"), 400,
           "invalid_request", "correct missing lang");
    expect(c.Post("/api/correct",
                  Json{{"text", std::string(kMaxCorrectBodyBytes, 'a')},
                       {"lang", code}}.dump(),
                  "application/json"),
           413, "payload_too_large", "correct oversize");

    j = expect(post_audio(c, wav, code), 200, "", "process");
    if (j.value("disfluency_count", 0) != 2) o.fail("process count");
    has_keys(j, {"raw_text", "fluent_text", "utterance_type", "disfluency_count",
                 "raw_audio_url", "fluent_audio_url", "fluent_audio_duration_ms",
                 "timings"},
             "process");
    const auto url = j.value("fluent_audio_url", std::string());
    const auto audio = c.Get(url);
    if (!audio || audio->status != 200 || audio->body.empty()) o.fail("audio fetch");
    expect(c.Get("/api/audio/00ff00ff"), 404, "not_found", "audio missing");
    expect(post_audio(c, "not audio", code), 400, "invalid_audio", "process bad wav");
    const auto big = post_audio(c, std::string(kMinUploadBytes + 1, 'x'), code);
    if (big) expect(big, 413, "payload_too_large", "process oversize");
  }

  {
    FakeRemote remote;
    remote.on_asr([](const httplib::Request&, httplib::Response& res, int) {
      res.status = 500;
    });
    auto cfg = mock_config();
    cfg.backend_mode = BackendMode::kRemote;
    cfg.asr_url = remote.url("/asr");
    cfg.tts_url = remote.url("/tts");
    cfg.backend_timeout_ms = 1000;
    Running run(cfg);
    auto c = run.client();
    auto j = expect(post_audio(c, wav, code), 502, "backend_failure", "remote asr");
    if (j.value("stage", "") != "asr") o.fail("asr stage");
    has_keys(j, {"code", "message", "stage"}, "remote asr");
    remote.on_asr([](const httplib::Request&, httplib::Response& res, int) {
      res.set_content(R"({"text": "um hello"})", "application/json");
    });
    remote.on_tts([](const httplib::Request&, httplib::Response& res, int) {
      res.status = 503;
    });
    j = expect(post_audio(c, wav, code), 502, "backend_failure", "remote tts");
    if (j.value("stage", "") != "tts") o.fail("tts stage");
  }

  // Latency.
  Running run(mock_config());
  auto c = run.client();
  const auto seeds = seed_sentences(lang);
  std::vector<double> ms;
  for (std::size_t i = 0; i < 300; ++i) {
    std::vector<std::string> words;
    for (std::size_t k = i; words.size() < 50; ++k) {
      for (const auto& w : tokenize(seeds[k % seeds.size()], lang).words()) {
        if (words.size() == 50) break;
        words.push_back(w);
        if (words.size() % 7 == 3 && words.size() < 50) {
          words.push_back(en ? "um" : "अं");
        }
      }
    }
    const Json body = {{"text", join(words)}, {"lang", code}};
    const auto t0 = Clock::now();
    const auto r = c.Post("/api/correct", body.dump(), "application/json");
    ms.push_back(std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
    if (!r || r->status != 200) {
      o.fail("latency request failed");
      break;
    }
  }
  std::sort(ms.begin(), ms.end());
  const double p95 = ms[ms.size() * 95 / 100];
  if (p95 >= 50.0) o.fail("p95 " + fmt("%.2f ms", p95));
  if (o.ok) o.detail = "5 endpoints, 400/404/413/502 paths, p95 " + fmt("%.2f ms", p95);
  return o;
}

}  // namespace

int main() {
  try {
    report("classifier: 81 histograms", classifier_table());
    bool hindi_ok = true;
    for (auto lang : kAllLanguages) {
      const int before = failures;
      const std::string tag = " (" + std::string(language_code(lang)) + ")";
      report("matched-lexicon closure" + tag, closure(lang));
      const auto stats = properties(lang);
      report("count consistency" + tag, count_consistency(stats));
      report("idempotence" + tag, idempotence(stats));
      report("subsequence" + tag, subsequence(stats));
      report("mock end-to-end" + tag, mock_end_to_end(lang));
      report("determinism" + tag, determinism(lang));
      report("service contract" + tag, service_contract(lang));
      if (lang == Language::kHindi) hindi_ok = failures == before;
    }
    Outcome parity;
    if (!hindi_ok) parity.fail("a Hindi suite failed");
    else parity.detail = "all suites ran on Hindi lexicons and fixtures";
    report("hindi parity", parity);
  } catch (const std::exception& e) {
    std::printf("[FAIL] acceptance aborted: %s\n", e.what());
    return 1;
  }
  return failures == 0 ? 0 : 1;
}
