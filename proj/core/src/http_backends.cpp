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

#include "disfix/http_backends.hpp"

#include <nlohmann/json.hpp>

#include "httplib.h"

namespace disfix {

namespace {

using Kind = BackendError::Kind;

bool is_timeout(httplib::Error err) {
  return err == httplib::Error::Read || err == httplib::Error::Write ||
         err == httplib::Error::ConnectionTimeout;
}

std::string remote_message(const httplib::Response& res) {
  try {
    auto j = nlohmann::json::parse(res.body);
    if (j.is_object() && j.contains("message") && j["message"].is_string()) {
      return j["message"].get<std::string>();
    }
  } catch (const nlohmann::json::exception&) {
  }
  return res.body.substr(0, 200);
}

bool remote_rejects_language(const httplib::Response& res) {
  try {
    auto j = nlohmann::json::parse(res.body);
    return j.is_object() && j.value("code", "") == "unsupported_language";
  } catch (const nlohmann::json::exception&) {
    return false;
  }
}

// Sends `send` until it gets a reply, retrying only on timeouts. Non-2xx
// replies are mapped to BackendError.
template <typename Send>
httplib::Response exchange(const HttpBackendOptions& options, const char* what,
                           Send&& send, int& attempts) {
  const auto [origin, path] = split_url(options.url);
  httplib::Client client(origin);
  const auto sec = options.timeout_ms / 1000;
  const auto usec = (options.timeout_ms % 1000) * 1000;
  client.set_connection_timeout(sec, usec);
  client.set_read_timeout(sec, usec);
  client.set_write_timeout(sec, usec);

  attempts = 0;
  for (;;) {
    ++attempts;
    httplib::Result res = send(client, path);
    if (!res) {
      const auto err = res.error();
      if (is_timeout(err) && attempts <= options.retries_on_timeout) continue;
      throw BackendError(is_timeout(err) ? Kind::kTimeout : Kind::kUnavailable,
                         std::string(what) + " request to " + options.url +
                             " failed: " + httplib::to_string(err));
    }
    if (res->status < 200 || res->status >= 300) {
      const auto kind = remote_rejects_language(*res)
                            ? Kind::kUnsupportedLanguage
                            : Kind::kRemoteStatus;
      throw BackendError(kind,
                         std::string(what) + " service returned HTTP " +
                             std::to_string(res->status) + ": " +
                             remote_message(*res),
                         res->status);
    }
    return *res;
  }
}

class HttpAsr : public AsrBackend {
 public:
  explicit HttpAsr(HttpBackendOptions options) : options_(std::move(options)) {
    split_url(options_.url);
  }

  Transcription transcribe(const AudioClip& audio, Language lang) override {
    const std::string wav = encode_wav(audio);
    const std::string code(language_code(lang));
    Transcription out;
    auto res = exchange(
        options_, "ASR",
        [&](httplib::Client& client, const std::string& path) {
          httplib::MultipartFormDataItems items = {
              {"audio", wav, "audio.wav", "audio/wav"},
              {"lang", code, "", ""},
          };
          return client.Post(path, items);
        },
        out.attempts);
    try {
      auto j = nlohmann::json::parse(res.body);
      out.text = j.at("text").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw BackendError(Kind::kMalformedReply,
                         std::string("ASR reply is not {\"text\": string}: ") +
                             e.what());
    }
    return out;
  }

 private:
  HttpBackendOptions options_;
};

class HttpTts : public TtsBackend {
 public:
  explicit HttpTts(HttpBackendOptions options) : options_(std::move(options)) {
    split_url(options_.url);
  }

  Synthesis synthesize(std::string_view text, Language lang) override {
    Synthesis out;
    if (tokenize(text, lang).word_count() == 0) {
      out.attempts = 0;
      return out;
    }
    const std::string body =
        nlohmann::json{{"text", std::string(text)},
                       {"lang", std::string(language_code(lang))}}
            .dump();
    auto res = exchange(
        options_, "TTS",
        [&](httplib::Client& client, const std::string& path) {
          return client.Post(path, body, "application/json");
        },
        out.attempts);
    try {
      out.clip = to_canonical(decode_wav(res.body));
    } catch (const Error& e) {
      throw BackendError(Kind::kMalformedReply,
                         std::string("TTS reply is not WAV audio: ") + e.what());
    }
    out.clip.comment.clear();
    return out;
  }

 private:
  HttpBackendOptions options_;
};

}  // namespace

std::pair<std::string, std::string> split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw ConfigError("backend URL '" + url + "' has no scheme");
  }
  const auto scheme = url.substr(0, scheme_end);
  if (scheme != "http") {
    throw ConfigError("backend URL '" + url + "' must use http");
  }
  const auto path_start = url.find('/', scheme_end + 3);
  std::string origin = url.substr(0, path_start);
  std::string path =
      path_start == std::string::npos ? "/" : url.substr(path_start);
  if (origin.size() <= scheme_end + 3) {
    throw ConfigError("backend URL '" + url + "' has no host");
  }
  return {origin, path};
}

std::shared_ptr<AsrBackend> make_http_asr(HttpBackendOptions options) {
  return std::make_shared<HttpAsr>(std::move(options));
}

std::shared_ptr<TtsBackend> make_http_tts(HttpBackendOptions options) {
  return std::make_shared<HttpTts>(std::move(options));
}

}  // namespace disfix
