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

#include "arl/gen/model.hpp"
#include "arl/service/session_store.hpp"

#include <filesystem>
#include <memory>
#include <string>

namespace httplib {
class Server;
}

namespace arl::service {

struct ServerConfig {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::filesystem::path scenario_root;  // holds one scenario directory per name
  std::chrono::seconds ttl{600};
  std::shared_ptr<const gen::DiffusionModel> model;  // enables generator "diffusion"
  int categories = 10;
};

// POST /sessions, POST /sessions/{id}/step, GET /sessions/{id}/frames/{k},
// DELETE /sessions/{id}, GET /healthz.
class HttpService {
 public:
  explicit HttpService(ServerConfig cfg);
  ~HttpService();
  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  // Binds the socket and returns the port actually used.
  int bind();
  // Blocks serving requests until stop().
  void serve();
  void stop();

  SessionStore& store() { return store_; }

 private:
  void routes();
  std::unique_ptr<rollout::Session> build_session(const std::string& body);

  ServerConfig cfg_;
  SessionStore store_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace arl::service
