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

#include "arl/service/session_store.hpp"

#include "arl/service/wire.hpp"

#include <cstdio>
#include <random>

namespace arl::service {

SessionStore::SessionStore(StoreConfig cfg) : cfg_(std::move(cfg)) {
  std::random_device rd;
  salt_ = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

std::string SessionStore::fresh_id() {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(mix_seed(salt_, ++counter_)));
  return buf;
}

SessionStore::Summary SessionStore::create(std::unique_ptr<rollout::Session> session) {
  auto e = std::make_shared<Entry>();
  e->frames.push_back(std::make_shared<const std::string>(frame_to_json(session->history().front()).dump()));
  Summary s{"", session->generator().name(), session->config().seed, session->step_index(), session->horizon()};
  e->session = std::move(session);
  std::lock_guard lock(mu_);
  do {
    e->id = fresh_id();
  } while (entries_.count(e->id) != 0);
  e->last_used = cfg_.clock();
  entries_[e->id] = e;
  s.id = e->id;
  return s;
}

std::shared_ptr<SessionStore::Entry> SessionStore::lookup(const std::string& id) {
  std::lock_guard lock(mu_);
  const auto it = entries_.find(id);
  if (it == entries_.end()) return nullptr;
  it->second->last_used = cfg_.clock();
  return it->second;
}

SessionStore::StepResult SessionStore::step(const std::string& id, const std::vector<rollout::EditOp>& edits) {
  const auto e = lookup(id);
  if (!e) return {StepStatus::kNotFound, nullptr};
  std::unique_lock guard(e->step_mu, std::try_to_lock);
  if (!guard.owns_lock()) return {StepStatus::kBusy, nullptr};
  if (e->session->finished()) return {StepStatus::kFinished, nullptr};
  const auto body = std::make_shared<const std::string>(frame_to_json(e->session->step(edits)).dump());
  {
    std::lock_guard lock(e->frames_mu);
    e->frames.push_back(body);
  }
  return {StepStatus::kOk, body};
}

std::shared_ptr<const std::string> SessionStore::frame(const std::string& id, int k) {
  const auto e = lookup(id);
  if (!e || k < 0) return nullptr;
  std::lock_guard lock(e->frames_mu);
  if (static_cast<std::size_t>(k) >= e->frames.size()) return nullptr;
  return e->frames[static_cast<std::size_t>(k)];
}

bool SessionStore::erase(const std::string& id) {
  std::lock_guard lock(mu_);
  return entries_.erase(id) > 0;
}

std::size_t SessionStore::size() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

std::size_t SessionStore::sweep() {
  std::lock_guard lock(mu_);
  const auto now = cfg_.clock();
  std::size_t dropped = 0;
  for (auto it = entries_.begin(); it != entries_.end();) {
    if (now - it->second->last_used > cfg_.ttl) {
      it = entries_.erase(it);
      ++dropped;
    } else {
      ++it;
    }
  }
  return dropped;
}

}  // namespace arl::service
