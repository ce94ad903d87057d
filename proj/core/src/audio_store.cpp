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

#include "disfix/audio_store.hpp"

#include <openssl/rand.h>

#include "disfix/error.hpp"

namespace disfix {

AudioStore::AudioStore(std::chrono::seconds ttl, NowFn now)
    : ttl_(ttl), now_(std::move(now)) {}

std::string AudioStore::fresh_id() {
  unsigned char raw[16];
  if (RAND_bytes(raw, sizeof raw) != 1) throw Error("RAND_bytes failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string id;
  for (unsigned char b : raw) {
    id.push_back(kHex[b >> 4]);
    id.push_back(kHex[b & 0xF]);
  }
  return id;
}

std::string AudioStore::put(std::string bytes, std::string content_type) {
  const auto now = now_();
  std::lock_guard lock(mu_);
  std::erase_if(entries_, [&](const auto& kv) { return kv.second.expires <= now; });
  std::string id;
  do {
    id = fresh_id();
  } while (entries_.count(id));
  entries_.emplace(id, Stored{{std::move(bytes), std::move(content_type)},
                              now + ttl_});
  return id;
}

std::optional<AudioStore::Entry> AudioStore::get(const std::string& id) {
  const auto now = now_();
  std::lock_guard lock(mu_);
  auto it = entries_.find(id);
  if (it == entries_.end()) return std::nullopt;
  if (it->second.expires <= now) {
    entries_.erase(it);
    return std::nullopt;
  }
  return it->second.entry;
}

std::size_t AudioStore::evict_expired() {
  const auto now = now_();
  std::lock_guard lock(mu_);
  return std::erase_if(entries_,
                       [&](const auto& kv) { return kv.second.expires <= now; });
}

std::size_t AudioStore::size() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

}  // namespace disfix
