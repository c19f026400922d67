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

#include "arl/cond/box_masks.hpp"
#include "arl/cond/features.hpp"
#include "arl/range/beam_table.hpp"
#include "arl/range/range_image.hpp"
#include "arl/scene/types.hpp"

#include <cstdint>
#include <vector>

namespace arl::gen {

struct ContextConfig {
  BeamTable beams;
  int width = 128;
  int categories = 10;
  double mask_step = 0.2;
  DepthNorm norm{};
};

// Per-frame generator inputs.
struct GeneratorContext {
  RangeImage prev;
  RangeImage fg;
  RangeImage bg;
  cond::BoxMaskStack masks_cur{1, 1, 1};
  cond::BoxMaskStack masks_prev{1, 1, 1};
  cond::EgoFeature ego{};
  cond::RelPoseVector rel{};
  std::uint64_t seed = 0;
};

// prev_frame carries the cloud to condition on with its boxes and ego state.
GeneratorContext build_context(const FrameRecord& prev_frame, const std::vector<BBox>& cur_boxes,
                               const EgoState& cur_ego, const ContextConfig& cfg);

}  // namespace arl::gen
