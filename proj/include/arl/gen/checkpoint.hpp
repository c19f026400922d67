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

#include "arl/gen/model.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace arl::gen {

struct CheckpointBlob {
  std::string name;
  nn::Shape shape;
  std::vector<float> data;
};

// "LGCK" container: u32 version, u32 manifest length + JSON manifest,
// u32 blob count, then per blob: u16 name length + name, u32 rank, u32
// dims, f32 LE values.
struct Checkpoint {
  static constexpr std::uint32_t kVersion = 1;
  nlohmann::json manifest;
  std::vector<CheckpointBlob> blobs;
};

void write_checkpoint(std::ostream& out, const Checkpoint& ck);
Checkpoint read_checkpoint(std::istream& in);

nlohmann::json model_config_to_json(const ModelConfig& cfg);
ModelConfig model_config_from_json(const nlohmann::json& j);

void save_model(const std::filesystem::path& path, const DiffusionModel& model);
std::unique_ptr<DiffusionModel> load_model(const std::filesystem::path& path);

}  // namespace arl::gen
