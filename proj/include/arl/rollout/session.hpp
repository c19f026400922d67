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

#include "arl/gen/generator.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace arl::rollout {

// Box ids are positions in the step's scenario box list; added boxes take
// the next free ids in edit order.
struct EditOp {
  enum class Kind { kMove, kRemove, kAdd };
  Kind kind = Kind::kMove;
  std::size_t box_id = 0;
  Vec3 delta = Vec3::Zero();
  std::optional<BBox> box;

  static EditOp move(std::size_t id, const Vec3& delta) { return {Kind::kMove, id, delta, std::nullopt}; }
  static EditOp remove(std::size_t id) { return {Kind::kRemove, id, Vec3::Zero(), std::nullopt}; }
  static EditOp add(const BBox& b) { return {Kind::kAdd, 0, Vec3::Zero(), b}; }
};

struct EditedBoxes {
  std::vector<BBox> boxes;
  std::vector<std::size_t> ids;
};

// Throws ValidationError when an edit names a missing box.
EditedBoxes apply_edits(const std::vector<BBox>& boxes, const std::vector<EditOp>& edits);

struct Provenance {
  int step = 0;
  int input_step = -1;          // history entry the context was built from
  bool input_generated = false;  // false only for the projected frame 0
  std::uint64_t input_digest = 0;
  std::uint64_t seed = 0;
  std::string generator;
};

struct GeneratedFrame {
  int step = 0;
  double timestamp = 0.0;
  RangeImage image;
  PointCloud cloud;
  std::vector<BBox> boxes;
  std::vector<std::size_t> box_ids;
  EgoState ego;
  Provenance provenance;
};

// FNV-1a over the cloud's float32 coordinates.
std::uint64_t cloud_digest(const PointCloud& cloud);

struct SessionConfig {
  gen::ContextConfig context;
  std::uint64_t seed = 0;
};

// Autoregressive state machine. scenario[s] supplies boxes and ego state
// for step s; scenario[0] also supplies the initial cloud.
class Session {
 public:
  Session(std::vector<FrameRecord> scenario, std::shared_ptr<const gen::Generator> generator, SessionConfig cfg);

  int step_index() const { return static_cast<int>(history_.size()) - 1; }
  int horizon() const { return static_cast<int>(scenario_.size()) - 1; }
  bool finished() const { return step_index() >= horizon(); }
  const std::vector<GeneratedFrame>& history() const { return history_; }
  const std::vector<std::vector<EditOp>>& edit_log() const { return edits_; }
  const std::vector<FrameRecord>& scenario() const { return scenario_; }
  const gen::Generator& generator() const { return *generator_; }
  const SessionConfig& config() const { return cfg_; }

  const GeneratedFrame& step(const std::vector<EditOp>& edits = {});
  std::vector<GeneratedFrame> run(int steps);

 private:
  std::vector<FrameRecord> scenario_;
  std::shared_ptr<const gen::Generator> generator_;
  SessionConfig cfg_;
  std::vector<GeneratedFrame> history_;
  std::vector<std::vector<EditOp>> edits_;
};

Session init_session(std::vector<FrameRecord> scenario, std::shared_ptr<const gen::Generator> generator,
                     SessionConfig cfg);

}  // namespace arl::rollout
