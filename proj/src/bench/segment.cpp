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

#include "arl/bench/segment.hpp"

#include "arl/scene/errors.hpp"

namespace arl::bench {

std::vector<std::size_t> segment_starts(const std::vector<std::string>& scene_tokens, int length) {
  if (length <= 0) throw ValidationError("segment length must be positive");
  const auto len = static_cast<std::size_t>(length);
  std::vector<std::size_t> starts;
  for (std::size_t s = 0; s + len <= scene_tokens.size(); s += len) {
    bool single = true;
    for (std::size_t i = s + 1; i < s + len && single; ++i) single = scene_tokens[i] == scene_tokens[s];
    if (single) starts.push_back(s);
  }
  return starts;
}

std::vector<Segment> segment(const ScenarioIndex& index, int length) {
  std::vector<std::string> tokens;
  tokens.reserve(index.frames.size());
  for (const auto& f : index.frames) tokens.push_back(f.record.scene_token);
  std::vector<Segment> out;
  for (std::size_t s : segment_starts(tokens, length)) {
    Segment seg;
    seg.first = s;
    seg.scene_token = tokens[s];
    for (std::size_t i = s; i < s + static_cast<std::size_t>(length); ++i) seg.frames.push_back(index.frames[i].record);
    out.push_back(std::move(seg));
  }
  return out;
}

}  // namespace arl::bench
