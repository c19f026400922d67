// Copyright 2026 The arlidar Authors
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

#include "arl/rollout/session.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace arl::service {

using Clock = std::chrono::steady_clock;

struct StoreConfig {
  std::chrono::seconds ttl{600};
  std::function<Clock::time_point()> clock = [] { return Clock::now(); };
};

// In-memory sessions. Each session admits one step at a time; frames are
// stored as immutable serialized JSON.
class SessionStore {
 public:
  explicit SessionStore(StoreConfig cfg = {});

  struct Summary {
    std::string id;
    std::string generator;
    std::uint64_t seed = 0;
    int step = 0;
    int horizon = 0;
  };

  Summary create(std::unique_ptr<rollout::Session> session);

  enum class StepStatus { kOk, kNotFound, kBusy, kFinished };
  struct StepResult {
    StepStatus status = StepStatus::kNotFound;
    std::shared_ptr<const std::string> frame;
  };
  // Domain errors from the rollout propagate as exceptions.
  StepResult step(const std::string& id, const std::vector<rollout::EditOp>& edits);

  // nullptr when the session or frame does not exist.
  std::shared_ptr<const std::string> frame(const std::string& id, int k);
  bool erase(const std::string& id);
  std::size_t size() const;
  // Drops sessions idle for longer than the TTL. Returns how many.
  std::size_t sweep();

 private:
  struct Entry {
    std::string id;
    std::unique_ptr<rollout::Session> session;
    std::mutex step_mu;
    mutable std::mutex frames_mu;
    std::vector<std::shared_ptr<const std::string>> frames;
    Clock::time_point last_used;
  };

  std::shared_ptr<Entry> lookup(const std::string& id);
  std::string fresh_id();

  StoreConfig cfg_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Entry>> entries_;
  std::uint64_t counter_ = 0;
  std::uint64_t salt_;
};

}  // namespace arl::service
