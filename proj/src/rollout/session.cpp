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

#include "arl/rollout/session.hpp"

#include "arl/range/codec.hpp"
#include "arl/scene/errors.hpp"

#include <bit>
#include <cstring>

namespace arl::rollout {

EditedBoxes apply_edits(const std::vector<BBox>& boxes, const std::vector<EditOp>& edits) {
  std::vector<std::optional<BBox>> slots(boxes.begin(), boxes.end());
  for (const auto& e : edits) {
    switch (e.kind) {
      case EditOp::Kind::kAdd:
        if (!e.box) throw ValidationError("add edit carries no box");
        slots.emplace_back(*e.box);
        break;
      case EditOp::Kind::kMove:
      case EditOp::Kind::kRemove:
        if (e.box_id >= slots.size() || !slots[e.box_id]) {
          throw ValidationError("edit targets missing box " + std::to_string(e.box_id));
        }
        if (e.kind == EditOp::Kind::kMove) {
          if (!e.delta.allFinite()) throw ValidationError("move delta must be finite");
          slots[e.box_id] = slots[e.box_id]->translated(e.delta);
        } else {
          slots[e.box_id].reset();
        }
        break;
    }
  }
  EditedBoxes out;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i]) continue;
    out.boxes.push_back(*slots[i]);
    out.ids.push_back(i);
  }
  return out;
}

std::uint64_t cloud_digest(const PointCloud& cloud) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](double v) {
    const auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(v));
    for (int k = 0; k < 4; ++k) {
      h ^= (bits >> (8 * k)) & 0xFFu;
      h *= 1099511628211ULL;
    }
  };
  for (const auto& p : cloud.points) {
    mix(p.x);
    mix(p.y);
    mix(p.z);
    mix(p.intensity);
  }
  return h;
}

Session::Session(std::vector<FrameRecord> scenario, std::shared_ptr<const gen::Generator> generator,
                 SessionConfig cfg)
    : scenario_(std::move(scenario)), generator_(std::move(generator)), cfg_(std::move(cfg)) {
  if (scenario_.empty()) throw ValidationError("scenario needs at least one frame");
  if (!generator_) throw ValidationError("session needs a generator");
  const FrameRecord& f0 = scenario_.front();
  if (f0.cloud.empty()) throw ValidationError("initial frame has an empty cloud");
  f0.cloud.validate();
  GeneratedFrame g;
  g.step = 0;
  g.timestamp = f0.timestamp;
  g.image = project(f0.cloud, cfg_.context.beams, cfg_.context.width, cfg_.context.norm);
  g.cloud = unproject(g.image, cfg_.context.beams);
  if (g.cloud.empty()) throw ValidationError("initial frame projects to an empty range image");
  g.boxes = f0.boxes;
  for (std::size_t i = 0; i < g.boxes.size(); ++i) g.box_ids.push_back(i);
  g.ego = f0.ego;
  g.provenance.seed = cfg_.seed;
  g.provenance.generator = generator_->name();
  history_.push_back(std::move(g));
  edits_.emplace_back();
}

const GeneratedFrame& Session::step(const std::vector<EditOp>& edits) {
  if (finished()) throw ValidationError("session already reached the end of its scenario");
  const int s = step_index() + 1;
  const FrameRecord& cond = scenario_[static_cast<std::size_t>(s)];
  const GeneratedFrame& last = history_.back();
  EditedBoxes edited = apply_edits(cond.boxes, edits);

  FrameRecord prev;
  prev.timestamp = last.timestamp;
  prev.cloud = last.cloud;
  prev.boxes = last.boxes;
  prev.ego = last.ego;
  gen::GeneratorContext ctx = gen::build_context(prev, edited.boxes, cond.ego, cfg_.context);
  ctx.seed = mix_seed(cfg_.seed, static_cast<std::uint64_t>(s));

  GeneratedFrame g;
  g.step = s;
  g.timestamp = cond.timestamp;
  g.image = generator_->generate(ctx);
  if (g.image.height() != cfg_.context.beams.rows() || g.image.width() != cfg_.context.width) {
    throw ShapeError("generator returned a range image of the wrong size");
  }
  g.cloud = unproject(g.image, cfg_.context.beams);
  g.boxes = std::move(edited.boxes);
  g.box_ids = std::move(edited.ids);
  g.ego = cond.ego;
  g.provenance.step = s;
  g.provenance.input_step = s - 1;
  g.provenance.input_generated = s - 1 >= 1;
  g.provenance.input_digest = cloud_digest(prev.cloud);
  g.provenance.seed = ctx.seed;
  g.provenance.generator = generator_->name();
  history_.push_back(std::move(g));
  edits_.push_back(edits);
  return history_.back();
}

std::vector<GeneratedFrame> Session::run(int steps) {
  if (steps < 0) throw ValidationError("step count must be non-negative");
  if (step_index() != 0) throw ValidationError("run() needs a fresh session");
  std::vector<GeneratedFrame> out;
  for (int i = 0; i < steps; ++i) out.push_back(step());
  return out;
}

Session init_session(std::vector<FrameRecord> scenario, std::shared_ptr<const gen::Generator> generator,
                     SessionConfig cfg) {
  return Session(std::move(scenario), std::move(generator), std::move(cfg));
}

}  // namespace arl::rollout
