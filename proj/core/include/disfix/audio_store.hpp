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

#include <chrono>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

namespace disfix {

/// In-memory byte store with per-entry expiry. Entries are immutable once
/// stored; ids are 128-bit random hex strings. Thread-safe.
class AudioStore {
 public:
  using Clock = std::chrono::steady_clock;
  using NowFn = std::function<Clock::time_point()>;

  explicit AudioStore(std::chrono::seconds ttl = std::chrono::minutes(15),
                      NowFn now = Clock::now);

  /// Stores a copy of `bytes` and returns its new id.
  std::string put(std::string bytes, std::string content_type = "audio/wav");

  struct Entry {
    std::string bytes;
    std::string content_type;
  };

  /// Nothing for unknown or expired ids.
  std::optional<Entry> get(const std::string& id);

  /// Drops expired entries; returns how many were removed.
  std::size_t evict_expired();
  std::size_t size() const;
  std::chrono::seconds ttl() const { return ttl_; }

 private:
  struct Stored {
    Entry entry;
    Clock::time_point expires;
  };

  std::string fresh_id();

  std::chrono::seconds ttl_;
  NowFn now_;
  mutable std::mutex mu_;
  std::unordered_map<std::string, Stored> entries_;
};

}  // namespace disfix
