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

#include "arl/scene/geometry.hpp"
#include "arl/scene/types.hpp"

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <vector>

namespace arl::sde {

struct GroupKey {
  int category = 0;
  std::size_t box = 0;  // index into the frame's box list
  auto operator<=>(const GroupKey&) const = default;
};

struct PointGroup {
  PointCloud cloud;
  std::vector<std::size_t> indices;  // into the decoupled frame's cloud
};

// Foreground groups keyed by (category, box) plus everything outside every box.
struct DecoupledScene {
  std::map<GroupKey, PointGroup> groups;
  PointCloud background;
  std::vector<std::size_t> background_indices;

  std::size_t foreground_size() const;
};

// Each point goes to the first containing box in (category, box index) order.
DecoupledScene decouple(const FrameRecord& frame);

// matched[i] = previous donor box for current box i, if any.
struct BoxMatching {
  std::vector<std::optional<std::size_t>> matched;
};

// Same-category nearest centre; previous centres are first mapped through
// e_rel so both live in the current sensor frame. Ties go to the lower index.
BoxMatching match_boxes(const std::vector<BBox>& prev_boxes, const std::vector<BBox>& cur_boxes,
                        const Pose& e_rel = Pose::identity());

PointCloud estimate_foreground(const DecoupledScene& prev, const std::vector<BBox>& prev_boxes,
                               const std::vector<BBox>& cur_boxes, const Pose& e_rel);

PointCloud estimate_background(const PointCloud& prev_bg, const Pose& e_rel);

struct SdeEstimate {
  PointCloud foreground;
  PointCloud background;
};

SdeEstimate sde_step(const FrameRecord& prev_frame, const std::vector<BBox>& cur_boxes, const EgoState& cur_ego);

}  // namespace arl::sde
