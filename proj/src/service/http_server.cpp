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

#include "arl/service/http_server.hpp"

#include "arl/bench/scenario_dir.hpp"
#include "arl/service/wire.hpp"

#include <httplib.h>

#include <regex>

namespace arl::service {

namespace {

void reply(httplib::Response& res, int status, const std::string& body) {
  res.status = status;
  res.set_content(body, "application/json");
}

void error(httplib::Response& res, int status, const std::string& msg) {
  reply(res, status, json{{"error", msg}}.dump());
}

// Maps library exceptions onto status codes.
template <typename F>
void guarded(httplib::Response& res, F&& f) {
  try {
    f();
  } catch (const json::exception& e) {
    error(res, 400, std::string("malformed JSON: ") + e.what());
  } catch (const FormatError& e) {
    error(res, 400, e.what());
  } catch (const ValidationError& e) {
    error(res, 422, e.what());
  } catch (const ShapeError& e) {
    error(res, 422, e.what());
  } catch (const std::exception& e) {
    error(res, 500, e.what());
  }
}

json parse_body(const std::string& body) {
  if (body.find_first_not_of(" \t\r\n") == std::string::npos) return json::object();
  json j = json::parse(body);
  if (!j.is_object()) throw WireError("request body must be a JSON object");
  return j;
}

}  // namespace

HttpService::HttpService(ServerConfig cfg)
    : cfg_(std::move(cfg)), store_(StoreConfig{cfg_.ttl}), server_(std::make_unique<httplib::Server>()) {
  routes();
}

HttpService::~HttpService() { stop(); }

int HttpService::bind() {
  if (cfg_.port == 0) return server_->bind_to_any_port(cfg_.host);
  if (!server_->bind_to_port(cfg_.host, cfg_.port)) throw Error("cannot bind " + cfg_.host + ":" + std::to_string(cfg_.port));
  return cfg_.port;
}

void HttpService::serve() { server_->listen_after_bind(); }

void HttpService::stop() {
  if (server_) server_->stop();
}

std::unique_ptr<rollout::Session> HttpService::build_session(const std::string& body) {
  const json req = parse_body(body);
  const std::string kind = req.value("generator", std::string("sde"));
  const std::uint64_t seed = req.value("seed", std::uint64_t{0});
  std::vector<FrameRecord> frames;
  BeamTable beams = BeamTable::uniform(1, 1.0, 0.0, 0.0);
  int width = 0;
  DepthNorm norm;
  if (req.contains("inline")) {
    InlineScenario sc = inline_scenario_from_json(req.at("inline"));
    frames = std::move(sc.frames);
    beams = sc.beams;
    width = sc.width;
    norm = sc.norm;
  } else if (req.contains("scenario")) {
    const std::string name = req.at("scenario").get<std::string>();
    static const std::regex safe("[A-Za-z0-9_.-]+");
    if (!std::regex_match(name, safe) || name.find("..") != std::string::npos) {
      throw ValidationError("invalid scenario name '" + name + "'");
    }
    if (cfg_.scenario_root.empty()) throw ValidationError("server has no scenario directory");
    const auto dir = cfg_.scenario_root / name;
    if (!std::filesystem::is_directory(dir)) throw ValidationError("unknown scenario '" + name + "'");
    bench::ScenarioDir sc = bench::load_scenario_dir(dir);
    const std::size_t first = req.value("first", std::size_t{0});
    if (first >= sc.index.frames.size()) throw ValidationError("first frame is beyond the scenario");
    const std::size_t avail = sc.index.frames.size() - first - 1;
    const std::size_t steps = req.value("steps", avail);
    if (steps > avail) throw ValidationError("scenario has only " + std::to_string(avail) + " steps after frame " +
                                             std::to_string(first));
    for (std::size_t i = first; i <= first + steps; ++i) {
      if (sc.index.frames[i].record.scene_token != sc.index.frames[first].record.scene_token) {
        throw ValidationError("requested frames span more than one scene");
      }
      frames.push_back(sc.index.frames[i].record);
    }
    beams = sc.beams;
    width = sc.width;
    norm = sc.norm;
  } else {
    throw WireError("request needs 'scenario' or 'inline'");
  }

  std::shared_ptr<const gen::Generator> generator;
  if (kind == "sde") {
    generator = std::make_shared<gen::SdeBaselineGenerator>();
  } else if (kind == "diffusion") {
    if (!cfg_.model) throw ValidationError("diffusion generator is not loaded on this server");
    const auto& ae = cfg_.model->config().ae;
    if (ae.height != beams.rows() || ae.width != width) {
      throw ValidationError("scenario sensor does not match the loaded model's range image size");
    }
    generator = std::make_shared<gen::DiffusionGenerator>(cfg_.model);
  } else {
    throw ValidationError("unknown generator '" + kind + "'");
  }
  int categories = cfg_.categories;
  if (cfg_.model && kind == "diffusion") categories = cfg_.model->config().denoiser.masks.categories;
  rollout::SessionConfig scfg{gen::ContextConfig{beams, width, categories, 0.2, norm}, seed};
  return std::make_unique<rollout::Session>(std::move(frames), std::move(generator), std::move(scfg));
}

void HttpService::routes() {
  auto& s = *server_;
  s.set_pre_routing_handler([this](const httplib::Request&, httplib::Response&) {
    store_.sweep();
    return httplib::Server::HandlerResponse::Unhandled;
  });

  s.Get("/healthz", [this](const httplib::Request&, httplib::Response& res) {
    reply(res, 200, json{{"status", "ok"}, {"sessions", store_.size()}}.dump());
  });

  s.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      auto session = build_session(req.body);
      const json frame0 = frame_to_json(session->history().front());
      const auto sum = store_.create(std::move(session));
      reply(res, 201,
            json{{"id", sum.id},
                 {"step", sum.step},
                 {"horizon", sum.horizon},
                 {"generator", sum.generator},
                 {"seed", sum.seed},
                 {"frame", frame0}}
                .dump());
    });
  });

  s.Post(R"(/sessions/([^/]+)/step)", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const std::string id = req.matches[1];
      const auto edits = edits_from_json(parse_body(req.body));
      const auto r = store_.step(id, edits);
      switch (r.status) {
        case SessionStore::StepStatus::kOk:
          reply(res, 200, *r.frame);
          break;
        case SessionStore::StepStatus::kNotFound:
          error(res, 404, "unknown session " + id);
          break;
        case SessionStore::StepStatus::kBusy:
          error(res, 409, "session " + id + " is already stepping");
          break;
        case SessionStore::StepStatus::kFinished:
          error(res, 409, "session " + id + " reached the end of its scenario");
          break;
      }
    });
  });

  s.Get(R"(/sessions/([^/]+)/frames/(\d+))", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const std::string id = req.matches[1];
      const std::string k = req.matches[2];
      const auto frame = k.size() > 9 ? nullptr : store_.frame(id, std::stoi(k));
      if (!frame) {
        error(res, 404, "no frame " + k + " for session " + id);
        return;
      }
      reply(res, 200, *frame);
    });
  });

  s.Delete(R"(/sessions/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1];
    if (!store_.erase(id)) {
      error(res, 404, "unknown session " + id);
      return;
    }
    reply(res, 200, json{{"deleted", id}}.dump());
  });
}

}  // namespace arl::service
