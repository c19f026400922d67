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
#include "arl/range/beam_table.hpp"
#include "arl/range/range_image.hpp"

#include <filesystem>

namespace arl::bench {

// On-disk scenario: index.jsonl, clouds/*.lgpc and sensor.json with the
// beam table, image width, depth range and frame cadence.
struct ScenarioDir {
  ScenarioIndex index;
  BeamTable beams = BeamTable::uniform(1, 1.0, 0.0, 0.0);
  int width = 128;
  double cadence = 0.5;
  DepthNorm norm{};
};

void write_scenario_dir(const std::filesystem::path& dir, const ScenarioDir& scenario);
ScenarioDir load_scenario_dir(const std::filesystem::path& dir);

}  // namespace arl::bench
