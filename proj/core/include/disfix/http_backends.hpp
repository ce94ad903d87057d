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

#include "disfix/backends.hpp"

namespace disfix {

/// Remote backend settings. `url` is a full http:// URL including the path.
struct HttpBackendOptions {
  std::string url;
  int timeout_ms = 10000;
  /// Extra attempts after a timeout. 4xx/5xx replies are never retried.
  int retries_on_timeout = 1;
};

/// Splits "http://host:port/path" into ("http://host:port", "/path").
/// Throws ConfigError for anything that is not an http:// URL.
std::pair<std::string, std::string> split_url(const std::string& url);

/// Recognition over HTTP; see backends.hpp for the wire contract.
std::shared_ptr<AsrBackend> make_http_asr(HttpBackendOptions options);

/// Synthesis over HTTP; replies are converted to canonical audio.
std::shared_ptr<TtsBackend> make_http_tts(HttpBackendOptions options);

}  // namespace disfix
