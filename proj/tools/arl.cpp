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

#include "arl/bench/cloud_io.hpp"
#include "arl/bench/scenario_dir.hpp"
#include "arl/bench/synth_world.hpp"
#include "arl/gen/checkpoint.hpp"
#include "arl/gen/generator.hpp"
#include "arl/gen/toy.hpp"
#include "arl/metrics/report.hpp"
#include "arl/range/codec.hpp"
#include "arl/range/hough.hpp"
#include "arl/rollout/session.hpp"
#include "arl/scene/errors.hpp"
#include "arl/sde/sde.hpp"
#include "arl/service/http_server.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<arl::FrameRecord> scene_frames(const arl::bench::ScenarioDir& sc, std::size_t first, int steps) {
  const auto& frames = sc.index.frames;
  if (first >= frames.size()) throw arl::ValidationError("first frame is beyond the scenario");
  std::vector<arl::FrameRecord> out;
  for (std::size_t i = first; i < frames.size() && (steps < 0 || static_cast<int>(out.size()) <= steps); ++i) {
    if (frames[i].record.scene_token != frames[first].record.scene_token) break;
    out.push_back(frames[i].record);
  }
  if (steps >= 0 && static_cast<int>(out.size()) != steps + 1) {
    throw arl::ValidationError("scene has only " + std::to_string(out.size() - 1) + " steps after frame " +
                               std::to_string(first));
  }
  return out;
}

std::vector<arl::gen::Sequence> scene_sequences(const arl::bench::ScenarioDir& sc) {
  std::vector<arl::gen::Sequence> seqs;
  for (const auto& f : sc.index.frames) {
    if (seqs.empty() || seqs.back().back().scene_token != f.record.scene_token) seqs.emplace_back();
    seqs.back().push_back(f.record);
  }
  return seqs;
}

arl::gen::ContextConfig context_of(const arl::bench::ScenarioDir& sc, int categories) {
  return arl::gen::ContextConfig{sc.beams, sc.width, categories, 0.2, sc.norm};
}

arl::FrameRecord read_frame_file(const fs::path& path) {
  const auto index = arl::bench::ingest(path);
  if (index.frames.size() != 1) throw arl::FormatError(path.string() + " must hold exactly one frame record");
  return index.frames.front().record;
}

std::size_t loss_window(const std::vector<double>& losses) {
  return std::clamp<std::size_t>(losses.size() / 10, 1, 100);
}

std::string frame_name(int step, const char* ext) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "frame_%04d.%s", step, ext);
  return buf;
}

arl::service::HttpService* g_service = nullptr;

void on_signal(int) {
  if (g_service) g_service->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"arlidar: autoregressive range-view LiDAR generation toolkit"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "Write a synthetic ray-cast scenario directory");
  fs::path synth_out;
  std::uint64_t synth_seed = 1;
  int synth_scenes = 1, synth_frames = 20, synth_rows = 16, synth_width = 128, synth_moving = 2, synth_parked = 3;
  bool synth_static = false;
  synth->add_option("--out", synth_out, "Output directory")->required();
  synth->add_option("--seed", synth_seed, "World seed");
  synth->add_option("--scenes", synth_scenes, "Number of scenes")->check(CLI::PositiveNumber);
  synth->add_option("--frames", synth_frames, "Frames per scene")->check(CLI::PositiveNumber);
  synth->add_option("--rows", synth_rows, "Beam rows")->check(CLI::PositiveNumber);
  synth->add_option("--width", synth_width, "Azimuth columns")->check(CLI::PositiveNumber);
  synth->add_option("--moving", synth_moving, "Moving vehicles per scene");
  synth->add_option("--parked", synth_parked, "Parked vehicles per scene");
  synth->add_flag("--static", synth_static, "Ego and objects at rest");

  // calibrate
  auto* calib = app.add_subcommand("calibrate", "Estimate the beam table of a scenario by Hough voting");
  fs::path calib_dir;
  int calib_frames = 5;
  calib->add_option("--scenario", calib_dir, "Scenario directory")->required();
  calib->add_option("--frames", calib_frames, "Frames to vote with")->check(CLI::PositiveNumber);

  // sde-step
  auto* sdes = app.add_subcommand("sde-step", "Estimate the next frame's foreground and background");
  fs::path sde_prev, sde_cur, sde_fg, sde_bg;
  sdes->add_option("--prev", sde_prev, "Previous frame record (one index line)")->required();
  sdes->add_option("--cur", sde_cur, "Current frame record providing boxes and ego state")->required();
  sdes->add_option("--fg", sde_fg, "Foreground output (LGPC)")->required();
  sdes->add_option("--bg", sde_bg, "Background output (LGPC)")->required();

  // train-toy
  auto* train = app.add_subcommand("train-toy", "Train the desk-scale diffusion generator");
  fs::path train_dir, train_out;
  int train_steps = 2000, train_ae_steps = 600, train_batch = 4, train_categories = 10;
  std::uint64_t train_seed = 7;
  bool train_no_nm = false;
  train->add_option("--scenario", train_dir, "Training scenario directory")->required();
  train->add_option("--out", train_out, "Checkpoint path")->required();
  train->add_option("--steps", train_steps, "Denoiser steps");
  train->add_option("--ae-steps", train_ae_steps, "Autoencoder steps");
  train->add_option("--batch", train_batch, "Batch size")->check(CLI::PositiveNumber);
  train->add_option("--categories", train_categories, "Box categories")->check(CLI::PositiveNumber);
  train->add_option("--seed", train_seed, "Training seed");
  train->add_flag("--no-nm", train_no_nm, "Disable noise modulation");

  // sample
  auto* samp = app.add_subcommand("sample", "Generate frame k+1 from ground-truth frame k");
  fs::path samp_model, samp_dir, samp_out, samp_cloud;
  std::size_t samp_frame = 0;
  std::uint64_t samp_seed = 0;
  samp->add_option("--model", samp_model, "Checkpoint")->required();
  samp->add_option("--scenario", samp_dir, "Scenario directory")->required();
  samp->add_option("--frame", samp_frame, "Conditioning frame index");
  samp->add_option("--seed", samp_seed, "Sampling seed");
  samp->add_option("--out", samp_out, "Range image output (LGRI)")->required();
  samp->add_option("--cloud", samp_cloud, "Optional unprojected cloud output (LGPC)");

  // rollout
  auto* roll = app.add_subcommand("rollout", "Autoregressive rollout from a scenario's first frame");
  fs::path roll_dir, roll_out, roll_model;
  std::string roll_gen = "sde";
  int roll_steps = 19;
  std::size_t roll_first = 0;
  std::uint64_t roll_seed = 0;
  roll->add_option("--scenario", roll_dir, "Scenario directory")->required();
  roll->add_option("--generator", roll_gen, "sde or diffusion")->check(CLI::IsMember({"sde", "diffusion"}));
  roll->add_option("--model", roll_model, "Checkpoint for the diffusion generator");
  roll->add_option("--steps", roll_steps, "Steps to generate")->check(CLI::NonNegativeNumber);
  roll->add_option("--first", roll_first, "Index of the initial frame");
  roll->add_option("--seed", roll_seed, "Rollout seed");
  roll->add_option("--out", roll_out, "Output directory")->required();

  // eval
  auto* ev = app.add_subcommand("eval", "Per-horizon metrics of a rollout against ground truth");
  fs::path ev_roll, ev_dir, ev_jsonl;
  ev->add_option("--rollout", ev_roll, "Rollout output directory")->required();
  ev->add_option("--scenario", ev_dir, "Ground-truth scenario directory")->required();
  ev->add_option("--jsonl", ev_jsonl, "Structured report path (default <rollout>/report.jsonl)");

  // serve
  auto* serve = app.add_subcommand("serve", "Run the session HTTP service");
  std::string serve_host = "127.0.0.1";
  int serve_port = 8080, serve_ttl = 600;
  fs::path serve_dir, serve_model;
  serve->add_option("--host", serve_host, "Bind address")->envname("ARL_HOST");
  serve->add_option("--port", serve_port, "Port")->envname("ARL_PORT");
  serve->add_option("--scenarios", serve_dir, "Directory of scenario directories")->envname("ARL_SCENARIOS");
  serve->add_option("--ttl", serve_ttl, "Idle session timeout in seconds")->envname("ARL_SESSION_TTL");
  serve->add_option("--model", serve_model, "Checkpoint enabling the diffusion generator")->envname("ARL_MODEL");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*synth) {
      arl::bench::ScenarioDir out;
      arl::bench::SynthConfig cfg;
      cfg.frames = synth_frames;
      cfg.beams = arl::bench::default_beams(synth_rows);
      cfg.width = synth_width;
      cfg.moving = synth_moving;
      cfg.parked = synth_parked;
      cfg.static_world = synth_static;
      for (int s = 0; s < synth_scenes; ++s) {
        char token[32];
        std::snprintf(token, sizeof token, "scene-%03d", s);
        cfg.scene_token = token;
        cfg.t0 = 1000.0 * s;
        const auto sc = arl::bench::synth_scenario(arl::mix_seed(synth_seed, static_cast<std::uint64_t>(s)), cfg);
        for (auto& f : arl::bench::to_index(sc).frames) out.index.frames.push_back(std::move(f));
        out.beams = sc.beams;
        out.width = sc.width;
        out.cadence = sc.cadence;
      }
      arl::bench::write_scenario_dir(synth_out, out);
      std::cout << "wrote " << out.index.frames.size() << " frames to " << synth_out << "\n";
    } else if (*calib) {
      const auto sc = arl::bench::load_scenario_dir(calib_dir);
      std::vector<arl::PointCloud> clouds;
      for (std::size_t i = 0; i < sc.index.frames.size() && static_cast<int>(i) < calib_frames; ++i) {
        clouds.push_back(sc.index.frames[i].record.cloud);
      }
      const auto est = arl::hough_calibrate(clouds, sc.beams.rows());
      json rows = json::array();
      for (int j = 0; j < est.rows(); ++j) {
        rows.push_back({{"row", j},
                        {"height", est.height(j)},
                        {"elevation", est.elevation(j)},
                        {"table_height", sc.beams.height(j)},
                        {"table_elevation", sc.beams.elevation(j)}});
      }
      std::cout << json{{"rows", rows}}.dump(2) << "\n";
    } else if (*sdes) {
      const auto prev = read_frame_file(sde_prev);
      const auto cur = read_frame_file(sde_cur);
      const auto est = arl::sde::sde_step(prev, cur.boxes, cur.ego);
      arl::bench::save_cloud(sde_fg, est.foreground);
      arl::bench::save_cloud(sde_bg, est.background);
      std::cout << "foreground " << est.foreground.size() << " points, background " << est.background.size()
                << " points\n";
    } else if (*train) {
      const auto sc = arl::bench::load_scenario_dir(train_dir);
      arl::gen::ModelConfig cfg =
          arl::gen::ModelConfig::desk(sc.beams.rows(), sc.width, train_categories, !train_no_nm);
      cfg.seed = train_seed;
      arl::gen::ToyRecipe recipe;
      recipe.ae.steps = train_ae_steps;
      recipe.ae.seed = arl::mix_seed(train_seed, 11);
      recipe.diffusion.steps = train_steps;
      recipe.diffusion.batch = train_batch;
      recipe.diffusion.seed = arl::mix_seed(train_seed, 12);
      const auto r = arl::gen::train_toy(cfg, scene_sequences(sc), context_of(sc, train_categories), recipe);
      arl::gen::save_model(train_out, *r.model);
      if (!r.ae_losses.empty()) {
        std::cout << "autoencoder loss " << arl::gen::head_mean(r.ae_losses, loss_window(r.ae_losses)) << " -> "
                  << arl::gen::tail_mean(r.ae_losses, loss_window(r.ae_losses)) << "\n";
      }
      std::cout << "diffusion loss " << arl::gen::head_mean(r.losses, loss_window(r.losses)) << " -> "
                << arl::gen::tail_mean(r.losses, loss_window(r.losses)) << "\nsaved " << train_out << "\n";
    } else if (*samp) {
      const auto sc = arl::bench::load_scenario_dir(samp_dir);
      std::shared_ptr<const arl::gen::DiffusionModel> model = arl::gen::load_model(samp_model);
      const auto frames = scene_frames(sc, samp_frame, 1);
      const auto ctxcfg = context_of(sc, model->config().denoiser.masks.categories);
      auto ctx = arl::gen::build_context(frames[0], frames[1].boxes, frames[1].ego, ctxcfg);
      ctx.seed = samp_seed;
      const auto img = arl::gen::DiffusionGenerator(model).generate(ctx);
      arl::save_range_image(samp_out, img);
      if (!samp_cloud.empty()) arl::bench::save_cloud(samp_cloud, arl::unproject(img, sc.beams));
      std::cout << "sampled " << img.occupied() << " occupied pixels\n";
    } else if (*roll) {
      const auto sc = arl::bench::load_scenario_dir(roll_dir);
      std::shared_ptr<const arl::gen::Generator> generator;
      int categories = 10;
      if (roll_gen == "diffusion") {
        if (roll_model.empty()) throw arl::ValidationError("--model is required for the diffusion generator");
        std::shared_ptr<const arl::gen::DiffusionModel> model = arl::gen::load_model(roll_model);
        categories = model->config().denoiser.masks.categories;
        generator = std::make_shared<arl::gen::DiffusionGenerator>(model);
      } else {
        generator = std::make_shared<arl::gen::SdeBaselineGenerator>();
      }
      arl::rollout::Session session(scene_frames(sc, roll_first, roll_steps), generator,
                                    arl::rollout::SessionConfig{context_of(sc, categories), roll_seed});
      session.run(roll_steps);
      fs::create_directories(roll_out);
      std::ofstream log(roll_out / "frames.jsonl");
      for (const auto& g : session.history()) {
        arl::bench::save_cloud(roll_out / frame_name(g.step, "lgpc"), g.cloud);
        arl::save_range_image(roll_out / frame_name(g.step, "lgri"), g.image);
        log << json{{"step", g.step},
                    {"timestamp", g.timestamp},
                    {"points", g.cloud.size()},
                    {"seed", g.provenance.seed},
                    {"generator", g.provenance.generator},
                    {"input_step", g.provenance.input_step},
                    {"first", roll_first}}
                   .dump()
            << "\n";
      }
      std::cout << "generated " << roll_steps << " frames into " << roll_out << "\n";
    } else if (*ev) {
      const auto sc = arl::bench::load_scenario_dir(ev_dir);
      std::ifstream log(ev_roll / "frames.jsonl");
      if (!log) throw arl::FormatError("missing " + (ev_roll / "frames.jsonl").string());
      std::vector<json> entries;
      for (std::string line; std::getline(log, line);) {
        if (!line.empty()) entries.push_back(json::parse(line));
      }
      if (entries.size() < 2) throw arl::ValidationError("rollout has no generated frames");
      const std::size_t first = entries.front().at("first").get<std::size_t>();
      const int steps = static_cast<int>(entries.size()) - 1;
      const auto truth = scene_frames(sc, first, steps);
      std::vector<arl::PointCloud> gen, gt;
      std::vector<arl::RangeImage> gen_img, gt_img;
      for (int s = 1; s <= steps; ++s) {
        gen.push_back(arl::bench::load_cloud(ev_roll / frame_name(s, "lgpc")));
        gen_img.push_back(arl::load_range_image(ev_roll / frame_name(s, "lgri")));
        gt.push_back(truth[static_cast<std::size_t>(s)].cloud);
        gt_img.push_back(arl::project(gt.back(), sc.beams, sc.width, sc.norm));
      }
      const auto rep = arl::metrics::eval_sequence(gen, gt, sc.cadence, &gen_img, &gt_img);
      std::cout << rep.table();
      const fs::path out = ev_jsonl.empty() ? ev_roll / "report.jsonl" : ev_jsonl;
      std::ofstream(out) << rep.jsonl();
      std::cout << "records written to " << out << "\n";
    } else if (*serve) {
      arl::service::ServerConfig cfg;
      cfg.host = serve_host;
      cfg.port = serve_port;
      cfg.scenario_root = serve_dir;
      cfg.ttl = std::chrono::seconds(serve_ttl);
      if (!serve_model.empty()) cfg.model = arl::gen::load_model(serve_model);
      arl::service::HttpService service(cfg);
      const int port = service.bind();
      if (port <= 0) throw arl::Error("cannot bind " + serve_host);
      g_service = &service;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cout << "listening on " << serve_host << ":" << port << std::endl;
      service.serve();
      g_service = nullptr;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
