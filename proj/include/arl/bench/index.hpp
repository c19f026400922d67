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

#include "arl/scene/types.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace arl::bench {

// One frame record per line, e.g.
// {"scene":"s0","timestamp":0.5,"cloud":"clouds/000001.lgpc",
//  "ego2glb":[16 f64],"li2ego":[16 f64],"speed":5,"acceleration":0,
//  "steering":0,"boxes":[{"category":0,"corners":[[x,y,z] x 8]}]}
// Box corners are stored in the global frame.
struct IndexFrame {
  FrameRecord record;  // boxes in the sensor frame
  std::string cloud_file;
};

struct ScenarioIndex {
  std::vector<IndexFrame> frames;
};

// Parses and validates; clouds resolve relative to `root`. With
// load_clouds = false only the file's existence is checked.
ScenarioIndex read_index(std::istream& in, const std::filesystem::path& root, bool load_clouds = true,
                         const std::string& source = "index");
ScenarioIndex ingest(const std::filesystem::path& index_path, bool load_clouds = true);

void write_index(std::ostream& out, const ScenarioIndex& index);
// Writes the index file and one LGPC file per frame under its directory.
void write_index_with_clouds(const std::filesystem::path& index_path, const ScenarioIndex& index);

}  // namespace arl::bench
