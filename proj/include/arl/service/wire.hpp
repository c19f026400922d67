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

#include "arl/range/beam_table.hpp"
#include "arl/rollout/session.hpp"
#include "arl/scene/errors.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace arl::service {

using nlohmann::json;

// Structurally malformed request body (HTTP 400).
class WireError : public FormatError {
 public:
  using FormatError::FormatError;
};

std::string cloud_to_base64(const PointCloud& cloud);
PointCloud cloud_from_base64(const std::string& text);
std::string image_to_base64(const RangeImage& img);

json box_to_json(const BBox& box, std::size_t id);
// {"category": c, "corners": [[x, y, z] x 8]} or
// {"category": c, "center": [x, y, z], "size": [l, w, h], "yaw": r}.
BBox box_from_json(const json& j);

// {"edits": [{"op": "move", "box_id": 0, "delta": [dx, dy, dz]},
//            {"op": "remove", "box_id": 1}, {"op": "add", "box": {...}}]}
std::vector<rollout::EditOp> edits_from_json(const json& body);

json frame_to_json(const rollout::GeneratedFrame& frame);

struct InlineScenario {
  std::vector<FrameRecord> frames;
  BeamTable beams = BeamTable::uniform(1, 1.0, 0.0, 0.0);
  int width = 128;
  DepthNorm norm{};
};

// {"sensor": {"heights": [...], "elevations": [...], "width": W, "r_max": R},
//  "cloud": base64 LGPC of frame 0,
//  "frames": [{"timestamp": t, "ego2glb": [16], "li2ego": [16], "speed": v,
//              "acceleration": a, "steering": s, "boxes": [...]}]}
// Boxes are given in the sensor frame of their step.
InlineScenario inline_scenario_from_json(const json& j);

}  // namespace arl::service
