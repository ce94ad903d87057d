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


#include "disfix/service.hpp"

#include <algorithm>
#include <exception>
#include <optional>
#include <utility>

#include "disfix/audio.hpp"
#include "disfix/error.hpp"
#include "disfix/http_backends.hpp"
#include "disfix/pipeline.hpp"
#include "httplib.h"

#ifndef DISFIX_VERSION
#define DISFIX_VERSION "0.0.0"
#endif

namespace disfix {

namespace {

constexpr const char* kJsonType = "application/json";
constexpr const char* kAudioPrefix = "/api/audio/";

struct HttpFailure {
  int status;
  std::string code;
  std::string message;
  std::optional<Stage> stage;
};

void send_json(httplib::Response& res, const Json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), kJsonType);
}

void send_error(httplib::Response& res, const HttpFailure& f) {
  Json body;
  body["code"] = f.code;
  body["message"] = f.message;
  if (f.stage) body["stage"] = std::string(stage_name(*f.stage));
  send_json(res, body, f.status);
}

std::string default_code(int status) {
  switch (status) {
    case 400:
      return "invalid_request";
    case 404:
      return "not_found";
    case 405:
      return "method_not_allowed";
    case 413:
      return "payload_too_large";
    case 414:
      return "uri_too_long";
    case 416:
      return "range_not_satisfiable";
    default:
      return status >= 500 ? "internal_error" : "request_failed";
  }
}

}  // namespace

std::string_view backend_mode_name(BackendMode mode) {
  return mode == BackendMode::kMock ? "mock" : "remote";
}

BackendMode parse_backend_mode(std::string_view name) {
  if (name == "mock") return BackendMode::kMock;
  if (name == "remote") return BackendMode::kRemote;
  throw ConfigError("backend mode must be 'mock' or 'remote', got '" +
                    std::string(name) + "'");
}

ServiceConfig ServiceConfig::defaults() {
  ServiceConfig c;
  const auto root = default_data_dir();
  c.lexicon_dir = root / "lexicons";
  c.prompt_bank_path = root / "prompts.jsonl";
  return c;
}

void ServiceConfig::validate() const {
  if (port < 0 || port > 65535) {
    throw ConfigError("port must be in [0, 65535], got " +
                      std::to_string(port));
  }
  if (backend_mode == BackendMode::kRemote) {
    if (asr_url.empty() || tts_url.empty()) {
      throw ConfigError("remote backend mode requires both --asr-url and "
                        "--tts-url");
    }
    split_url(asr_url);
    split_url(tts_url);
  }
  if (max_upload_bytes < kMinUploadBytes) {
    throw ConfigError("max upload size must be at least 1 MiB, got " +
                      std::to_string(max_upload_bytes) + " bytes");
  }
  if (audio_ttl_seconds <= 0) {
    throw ConfigError("audio TTL must be positive");
  }
  if (backend_timeout_ms <= 0) {
    throw ConfigError("backend timeout must be positive");
  }
  if (languages.empty()) throw ConfigError("no languages configured");
  for (std::size_t i = 0; i < languages.size(); ++i) {
    for (std::size_t k = i + 1; k < languages.size(); ++k) {
      if (languages[i] == languages[k]) {
        throw ConfigError("language '" +
                          std::string(language_code(languages[i])) +
                          "' listed twice");
      }
    }
  }
}

Json ServiceConfig::to_json() const {
  Json langs = Json::array();
  for (auto l : languages) langs.push_back(std::string(language_code(l)));
  Json j;
  j["host"] = host;
  j["port"] = port;
  j["backend_mode"] = std::string(backend_mode_name(backend_mode));
  j["asr_url"] = asr_url;
  j["tts_url"] = tts_url;
  j["backend_timeout_ms"] = backend_timeout_ms;
  j["lexicon_dir"] = lexicon_dir.string();
  j["prompt_bank_path"] = prompt_bank_path.string();
  j["asr_fixtures"] = asr_fixtures.string();
  j["audio_ttl_seconds"] = audio_ttl_seconds;
  j["max_upload_bytes"] = max_upload_bytes;
  j["languages"] = std::move(langs);
  j["cors_origin"] = cors_origin;
  return j;
}

ServiceParts build_parts(const ServiceConfig& config) {
  config.validate();
  ServiceParts parts;
  auto detector = std::make_shared<DetectorConfig>(
      load_detector_config(config.lexicon_dir));
  for (auto l : config.languages) {
    if (!detector->supports(l)) {
      throw ConfigError("no lexicon for language '" +
                        std::string(language_code(l)) + "' under " +
                        config.lexicon_dir.string());
    }
  }
  parts.detector = std::move(detector);
  parts.prompts = std::make_shared<PromptBank>(
      load_bank(config.prompt_bank_path, config.languages));
  if (config.backend_mode == BackendMode::kMock) {
    auto asr = std::make_shared<MockAsr>();
    if (!config.asr_fixtures.empty()) asr->load_fixtures(config.asr_fixtures);
    parts.asr = std::move(asr);
    parts.tts = std::make_shared<MockTts>();
  } else {
    parts.asr = make_http_asr({config.asr_url, config.backend_timeout_ms});
    parts.tts = make_http_tts({config.tts_url, config.backend_timeout_ms});
  }
  parts.store = std::make_shared<AudioStore>(
      std::chrono::seconds(config.audio_ttl_seconds));
  return parts;
}

struct Service::Impl {
  Impl(ServiceConfig c, ServiceParts p)
      : config(std::move(c)),
        parts(std::move(p)),
        pipeline(parts.asr, parts.tts, parts.detector, parts.store) {
    routes();
  }

  ServiceConfig config;
  ServiceParts parts;
  Pipeline pipeline;
  httplib::Server server;

  // Resolves a language code the deployment serves.
  Language language(const std::string& code) const {
    Language lang;
    if (!try_parse_language(code, &lang) ||
        std::find(config.languages.begin(), config.languages.end(), lang) ==
            config.languages.end()) {
      throw HttpFailure{400, "unsupported_language",
                        "unsupported language '" + code + "'", std::nullopt};
    }
    return lang;
  }

  template <typename Fn>
  httplib::Server::Handler guarded(Fn fn) {
    return [fn = std::move(fn)](const httplib::Request& req,
                                httplib::Response& res) {
      try {
        fn(req, res);
      } catch (const HttpFailure& f) {
        send_error(res, f);
      }
    };
  }

  void routes() {
    server.set_payload_max_length(config.max_upload_bytes);
    if (!config.cors_origin.empty()) {
      server.set_default_headers(
          {{"Access-Control-Allow-Origin", config.cors_origin},
           {"Access-Control-Allow-Methods", "GET, HEAD, POST, OPTIONS"},
           {"Access-Control-Allow-Headers", "Content-Type"}});
    }
    server.set_error_handler(
        [](const httplib::Request&, httplib::Response& res) {
          if (!res.body.empty()) return httplib::Server::HandlerResponse::Unhandled;
          send_error(res, {res.status, default_code(res.status),
                           httplib::status_message(res.status), std::nullopt});
          return httplib::Server::HandlerResponse::Handled;
        });
    server.set_exception_handler([](const httplib::Request&,
                                    httplib::Response& res,
                                    std::exception_ptr ep) {
      std::string what = "unknown error";
      try {
        std::rethrow_exception(ep);
      } catch (const std::exception& e) {
        what = e.what();
      } catch (...) {
      }
      send_error(res, {500, "internal_error", what, std::nullopt});
    });

    server.Options(R"(/.*)", [](const httplib::Request&,
                                httplib::Response& res) { res.status = 204; });

    server.Get("/health", [](const httplib::Request&, httplib::Response& res) {
      send_json(res, Json{{"status", "ok"}, {"version", DISFIX_VERSION}});
    });

    server.Get("/api/languages",
               [this](const httplib::Request&, httplib::Response& res) {
                 Json langs = Json::array();
                 for (auto l : config.languages) {
                   langs.push_back(std::string(language_code(l)));
                 }
                 send_json(res, Json{{"languages", std::move(langs)}});
               });

    server.Get("/api/topic", guarded([this](const httplib::Request& req,
                                            httplib::Response& res) {
                 if (!req.has_param("lang")) {
                   throw HttpFailure{400, "invalid_request",
                                     "missing query parameter \"lang\"", {}};
                 }
                 const auto lang = language(req.get_param_value("lang"));
                 std::optional<std::uint64_t> seed;
                 if (req.has_param("seed")) {
                   const auto s = req.get_param_value("seed");
                   try {
                     std::size_t used = 0;
                     seed = std::stoull(s, &used);
                     if (used != s.size() || s.front() == '-') {
                       throw std::invalid_argument(s);
                     }
                   } catch (const std::logic_error&) {
                     throw HttpFailure{400, "invalid_request",
                                       "seed must be a non-negative integer",
                                       std::nullopt};
                   }
                 }
                 send_json(res, disfix::to_json(
                                    random_prompt(*parts.prompts, lang, seed)));
               }));

    server.Post("/api/correct", guarded([this](const httplib::Request& req,
                                               httplib::Response& res) {
                  if (req.body.size() > kMaxCorrectBodyBytes) {
                    throw HttpFailure{413, "payload_too_large",
                                      "request body exceeds 64 KiB",
                                      std::nullopt};
                  }
                  Json body;
                  try {
                    body = Json::parse(req.body);
                  } catch (const Json::exception& e) {
                    throw HttpFailure{400, "malformed_json", e.what(),
                                      std::nullopt};
                  }
                  if (!body.is_object() || !body.contains("text") ||
                      !body["text"].is_string() || !body.contains("lang") ||
                      !body["lang"].is_string()) {
                    throw HttpFailure{
                        400, "invalid_request",
                        "body must be {\"text\": string, \"lang\": string}",
                        std::nullopt};
                  }
                  const auto lang = language(body["lang"].get<std::string>());
                  const auto text = body["text"].get<std::string>();
                  send_json(res, disfix::to_json(correct(tokenize(text, lang),
                                                         *parts.detector)));
                }));

    server.Post("/api/process", guarded([this](const httplib::Request& req,
                                               httplib::Response& res) {
                  if (!req.has_file("audio") || !req.has_file("lang")) {
                    throw HttpFailure{400, "invalid_request",
                                      "multipart fields \"audio\" and "
                                      "\"lang\" are required",
                                      std::nullopt};
                  }
                  const auto lang =
                      language(req.get_file_value("lang").content);
                  const auto& bytes = req.get_file_value("audio").content;
                  AudioClip clip;
                  try {
                    clip = to_canonical(decode_wav(bytes));
                  } catch (const Error& e) {
                    throw HttpFailure{400, "invalid_audio", e.what(),
                                      std::nullopt};
                  }
                  try {
                    send_json(res, disfix::to_json(
                                       pipeline.process(clip, lang, bytes),
                                       kAudioPrefix));
                  } catch (const PipelineError& e) {
                    const bool backend = e.stage() == Stage::kAsr ||
                                         e.stage() == Stage::kTts;
                    throw HttpFailure{
                        backend ? 502 : (e.stage() == Stage::kValidation
                                             ? 400
                                             : 500),
                        backend ? "backend_failure"
                                : (e.stage() == Stage::kValidation
                                       ? "invalid_request"
                                       : "internal_error"),
                        e.detail(), e.stage()};
                  }
                }));

    server.Get(R"(/api/audio/([0-9a-f]+))",
               guarded([this](const httplib::Request& req,
                              httplib::Response& res) {
                 auto entry = parts.store->get(req.matches[1].str());
                 if (!entry) {
                   throw HttpFailure{404, "not_found",
                                     "unknown or expired audio id",
                                     std::nullopt};
                 }
                 res.set_content(std::move(entry->bytes), entry->content_type);
               }));
  }
};

Service::Service(ServiceConfig config)
    : Service(config, build_parts(config)) {}

Service::Service(ServiceConfig config, ServiceParts parts) {
  config.validate();
  impl_ = std::make_unique<Impl>(std::move(config), std::move(parts));
}

Service::~Service() = default;

bool Service::listen() {
  return impl_->server.listen(impl_->config.host, impl_->config.port);
}

int Service::bind_any_port(const std::string& host) {
  return impl_->server.bind_to_any_port(host);
}

bool Service::listen_after_bind() { return impl_->server.listen_after_bind(); }

void Service::stop() { impl_->server.stop(); }

void Service::wait_until_ready() const { impl_->server.wait_until_ready(); }

const ServiceConfig& Service::config() const { return impl_->config; }

const ServiceParts& Service::parts() const { return impl_->parts; }

}  // namespace disfix
