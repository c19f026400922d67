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

#include "arl/bench/index.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace arl::bench {

struct Segment {
  std::size_t first = 0;  // index of the first frame in the source index
  std::string scene_token;
  std::vector<FrameRecord> frames;
};

inline constexpr int kSegmentLength = 20;

// Start offsets of the non-overlapping windows [k * length, (k + 1) * length)
// that lie within a single scene.
std::vector<std::size_t> segment_starts(const std::vector<std::string>& scene_tokens, int length = kSegmentLength);
std::vector<Segment> segment(const ScenarioIndex& index, int length = kSegmentLength);

}  // namespace arl::bench
