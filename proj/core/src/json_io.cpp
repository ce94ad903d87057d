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

#include "disfix/json_io.hpp"

#include <string>

#include "disfix/error.hpp"

namespace disfix {

namespace {

Json histogram_json(const TypeHistogram& hist) {
  Json j = Json::object();
  for (auto t : kDisfluentTypes) j[std::string(type_name(t))] = hist[t];
  return j;
}

}  // namespace

Json to_json(const CorrectionResult& r) {
  Json tokens = Json::array();
  for (const auto& t : r.source.tokens) {
    tokens.push_back({{"text", t.text}, {"index", t.index}, {"word", t.is_word}});
  }
  Json labels = Json::array();
  for (const auto& l : r.labels) {
    labels.push_back({{"token_index", l.token_index},
                      {"verdict", std::string(verdict_name(l.verdict))},
                      {"type", std::string(type_name(l.type))}});
  }
  Json spans = Json::array();
  for (const auto& s : r.spans) {
    spans.push_back({{"start", s.start},
                     {"end", s.end},
                     {"type", std::string(type_name(s.type))},
                     {"detector", s.detector}});
  }
  Json j;
  j["raw_text"] = r.source.raw_text;
  j["fluent_text"] = detokenize(r.fluent);
  j["lang"] = std::string(language_code(r.source.lang));
  j["tokens"] = std::move(tokens);
  j["labels"] = std::move(labels);
  j["spans"] = std::move(spans);
  j["histogram"] = histogram_json(r.histogram);
  j["utterance_type"] = std::string(type_name(r.utterance_type));
  j["disfluency_count"] = r.disfluency_count;
  return j;
}

Json to_json(const PipelineResult& r, std::string_view audio_url_prefix) {
  Json j = to_json(r.correction);
  j["raw_audio_url"] = std::string(audio_url_prefix) + r.raw_audio_id;
  j["fluent_audio_url"] = std::string(audio_url_prefix) + r.fluent_audio_id;
  j["fluent_audio_duration_ms"] = r.fluent_duration_ms;
  const auto& t = r.timings;
  j["timings"] = {{"asr_ms", t.asr_ms},           {"dc_ms", t.dc_ms},
                  {"tts_ms", t.tts_ms},           {"store_ms", t.store_ms},
                  {"total_ms", t.total_ms},       {"asr_attempts", t.asr_attempts},
                  {"tts_attempts", t.tts_attempts}};
  return j;
}

Json to_json(const AnnotatedUtterance& u) {
  Json labels = Json::array();
  for (auto l : u.labels) labels.push_back(std::string(type_name(l)));
  Json j;
  j["tokens"] = u.tokens;
  j["labels"] = std::move(labels);
  j["lang"] = std::string(language_code(u.lang));
  j["seed_text"] = u.seed_text;
  j["injection"] = std::string(type_name(u.injection));
  return j;
}

AnnotatedUtterance annotated_from_json(const Json& j, std::size_t line) {
  const auto fail = [line](const std::string& why) -> ParseError {
    return ParseError(why, line);
  };
  if (!j.is_object()) throw fail("expected a JSON object");
  for (const char* key : {"tokens", "labels"}) {
    if (!j.contains(key) || !j[key].is_array()) {
      throw fail(std::string("missing array \"") + key + "\"");
    }
  }
  AnnotatedUtterance u;
  for (const auto& t : j["tokens"]) {
    if (!t.is_string()) throw fail("tokens must be strings");
    u.tokens.push_back(t.get<std::string>());
  }
  for (const auto& l : j["labels"]) {
    if (!l.is_string()) throw fail("labels must be strings");
    try {
      u.labels.push_back(parse_type(l.get<std::string>()));
    } catch (const ParseError& e) {
      throw fail(e.what());
    }
  }
  if (u.tokens.size() != u.labels.size()) {
    throw fail("tokens and labels differ in length");
  }
  for (const auto& t : u.tokens) {
    bool spaced = false;
    for (std::size_t pos = 0; pos < t.size() && !spaced;) {
      spaced = utf8::is_space(utf8::next(t, pos));
    }
    if (t.empty() || spaced) {
      throw fail("token '" + t + "' is empty or contains whitespace");
    }
  }
  if (!j.contains("lang") || !j["lang"].is_string() ||
      !try_parse_language(j["lang"].get<std::string>(), &u.lang)) {
    throw fail("missing or unsupported \"lang\"");
  }
  if (j.contains("seed_text")) {
    if (!j["seed_text"].is_string()) throw fail("seed_text must be a string");
    u.seed_text = j["seed_text"].get<std::string>();
  }
  if (j.contains("injection")) {
    if (!j["injection"].is_string()) throw fail("injection must be a string");
    try {
      u.injection = parse_type(j["injection"].get<std::string>());
    } catch (const ParseError& e) {
      throw fail(e.what());
    }
  } else {
    // Without an explicit tag, use the first gold class present.
    for (auto l : u.labels) {
      if (l != DisfluencyType::kFluent) {
        u.injection = l;
        break;
      }
    }
  }
  return u;
}

void read_corpus(std::istream& in,
                 const std::function<void(AnnotatedUtterance)>& sink) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::exception& e) {
      throw ParseError(e.what(), line_no);
    }
    sink(annotated_from_json(j, line_no));
  }
}

Json to_json(const Prf& prf) {
  Json j;
  j["precision"] = prf.precision();
  j["recall"] = prf.recall();
  j["f1"] = prf.f1();
  j["tp"] = prf.tp;
  j["fp"] = prf.fp;
  j["fn"] = prf.fn;
  j["tokens"] = prf.tokens;
  j["utterances"] = prf.utterances;
  return j;
}

Json to_json(const EvalReport& report) {
  Json per_type = Json::object();
  for (auto t : kAllTypes) {
    auto it = report.per_type.find(t);
    if (it != report.per_type.end()) {
      per_type[std::string(type_name(t))] = to_json(it->second);
    }
  }
  Json j;
  j["corpus_size"] = report.corpus_size;
  j["overall"] = to_json(report.overall);
  j["per_type"] = std::move(per_type);
  j["utterance_type_accuracy"] = report.utterance_type_accuracy();
  return j;
}

Json to_json(const Prompt& p) {
  Json j;
  j["id"] = p.id;
  j["lang"] = std::string(language_code(p.lang));
  j["category"] = p.category;
  j["text"] = p.text;
  return j;
}

}  // namespace disfix
