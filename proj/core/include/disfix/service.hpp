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

// HTTP API.
//
//   GET  /health                 {"status": "ok", "version": "..."}
//   GET  /api/languages          {"languages": ["en", "hi"]}
//   GET  /api/topic?lang=&seed=  {"id", "lang", "category", "text"}
//   POST /api/correct            {"text", "lang"} -> correction JSON
//   POST /api/process            multipart "audio" (WAV) + "lang"
//                                -> correction JSON + audio URLs + timings
//   GET  /api/audio/{id}         stored WAV bytes (HEAD supported)
//
// Errors are {"code", "message"} plus "stage" for pipeline failures:
//   400 malformed_json | invalid_request | unsupported_language |
//       invalid_audio
//   404 not_found
//   413 payload_too_large
//   502 backend_failure (stage "asr" or "tts")

#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "disfix/audio_store.hpp"
#include "disfix/backends.hpp"
#include "disfix/json_io.hpp"
#include "disfix/lexicon.hpp"
#include "disfix/topics.hpp"

namespace disfix {

inline constexpr std::size_t kMaxCorrectBodyBytes = 64 * 1024;
inline constexpr std::size_t kMinUploadBytes = 1024 * 1024;

enum class BackendMode { kMock, kRemote };

struct ServiceConfig {
  std::string host = "0.0.0.0";
  int port = 8080;
  BackendMode backend_mode = BackendMode::kMock;
  std::string asr_url;
  std::string tts_url;
  int backend_timeout_ms = 10000;
  std::filesystem::path lexicon_dir;
  std::filesystem::path prompt_bank_path;
  /// Mock mode only: JSON-lines fixture table for MockAsr.
  std::filesystem::path asr_fixtures;
  int audio_ttl_seconds = 15 * 60;
  std::size_t max_upload_bytes = 16 * 1024 * 1024;
  std::vector<Language> languages = {kAllLanguages.begin(),
                                     kAllLanguages.end()};
  /// Value of Access-Control-Allow-Origin; empty disables CORS headers.
  std::string cors_origin = "*";

  /// Throws ConfigError: remote mode needs both URLs, max_upload_bytes must
  /// be at least 1 MiB, languages non-empty, port in range.
  void validate() const;
  Json to_json() const;

  /// Defaults rooted at the shipped data directory.
  static ServiceConfig defaults();
};

std::string_view backend_mode_name(BackendMode mode);
BackendMode parse_backend_mode(std::string_view name);

/// Everything the handlers need. Shared read-only except the store.
struct ServiceParts {
  std::shared_ptr<const DetectorConfig> detector;
  std::shared_ptr<const PromptBank> prompts;
  std::shared_ptr<AsrBackend> asr;
  std::shared_ptr<TtsBackend> tts;
  std::shared_ptr<AudioStore> store;
};

/// Loads lexicons, prompts and backends as `config` describes.
ServiceParts build_parts(const ServiceConfig& config);

class Service {
 public:
  explicit Service(ServiceConfig config);
  Service(ServiceConfig config, ServiceParts parts);
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds and serves until stop(). Returns false if binding failed.
  bool listen();
  /// Binds to an ephemeral port on `host` and returns it (-1 on failure).
  int bind_any_port(const std::string& host = "127.0.0.1");
  /// Serves on a socket bound by bind_any_port(); blocks until stop().
  bool listen_after_bind();
  void stop();
  void wait_until_ready() const;

  const ServiceConfig& config() const;
  const ServiceParts& parts() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace disfix
