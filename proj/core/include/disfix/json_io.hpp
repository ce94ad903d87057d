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

// JSON shapes shared by the CLI and the HTTP service. Objects keep their
// field order so output is byte-stable.

#pragma once

#include <functional>
#include <istream>
#include <string_view>

#include <nlohmann/json.hpp>

#include "disfix/engine.hpp"
#include "disfix/pipeline.hpp"
#include "disfix/synthetic.hpp"
#include "disfix/topics.hpp"

namespace disfix {

using Json = nlohmann::ordered_json;

/// {raw_text, fluent_text, lang, tokens, labels, spans, histogram,
///  utterance_type, disfluency_count}
Json to_json(const CorrectionResult& result);

/// Correction fields plus raw_audio_url, fluent_audio_url,
/// fluent_audio_duration_ms and timings. Audio URLs are
/// `audio_url_prefix + id`.
Json to_json(const PipelineResult& result, std::string_view audio_url_prefix);

/// {tokens, labels, lang, seed_text, injection}
Json to_json(const AnnotatedUtterance& u);

/// Throws ParseError (with `line` when non-zero) on schema violations.
AnnotatedUtterance annotated_from_json(const Json& j, std::size_t line = 0);

/// Streams a corpus, one JSON object per non-blank line.
void read_corpus(std::istream& in,
                 const std::function<void(AnnotatedUtterance)>& sink);

Json to_json(const Prf& prf);
Json to_json(const EvalReport& report);
Json to_json(const Prompt& prompt);

}  // namespace disfix
