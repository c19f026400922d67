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

#include "arl/bench/index.hpp"

#include "arl/bench/cloud_io.hpp"
#include "arl/scene/errors.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <limits>
#include <sstream>

namespace arl::bench {

using nlohmann::json;

namespace {

Pose pose_field(const json& rec, const char* field) {
  const auto v = rec.at(field).get<std::vector<double>>();
  if (v.size() != 16) throw ValidationError(std::string("field '") + field + "' needs 16 values");
  return Pose::from_row_major(v);
}

json pose_json(const Pose& p) {
  const auto m = p.row_major();
  return json(std::vector<double>(m.begin(), m.end()));
}

}  // namespace

ScenarioIndex read_index(std::istream& in, const std::filesystem::path& root, bool load_clouds,
                         const std::string& source) {
  ScenarioIndex index;
  std::string line;
  int line_no = 0;
  double last_ts = -std::numeric_limits<double>::infinity();
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = source + ":" + std::to_string(line_no);
    IndexFrame f;
    try {
      const json rec = json::parse(line);
      FrameRecord& r = f.record;
      r.scene_token = rec.at("scene").get<std::string>();
      r.timestamp = rec.at("timestamp").get<double>();
      f.cloud_file = rec.at("cloud").get<std::string>();
      r.ego.ego2glb = pose_field(rec, "ego2glb");
      r.ego.li2ego = pose_field(rec, "li2ego");
      r.ego.speed = rec.value("speed", 0.0);
      r.ego.acceleration = rec.value("acceleration", 0.0);
      r.ego.steering_angle = rec.value("steering", 0.0);
      const Pose glb2sensor = r.ego.sensor2glb().inverse();
      for (const auto& b : rec.at("boxes")) {
        const auto pts = b.at("corners").get<std::vector<std::vector<double>>>();
        if (pts.size() != 8) throw ValidationError("box needs 8 corners");
        std::array<Vec3, 8> corners;
        for (std::size_t k = 0; k < 8; ++k) {
          if (pts[k].size() != 3) throw ValidationError("box corner needs 3 coordinates");
          corners[k] = Vec3(pts[k][0], pts[k][1], pts[k][2]);
        }
        r.boxes.push_back(BBox(corners, b.at("category").get<int>()).transformed(glb2sensor));
      }
      if (!(r.timestamp >= last_ts)) {
        throw ValidationError("timestamp " + std::to_string(r.timestamp) + " precedes the previous frame");
      }
      last_ts = r.timestamp;
      const std::filesystem::path cloud_path = root / f.cloud_file;
      if (load_clouds) {
        r.cloud = load_cloud(cloud_path);
      } else if (!std::filesystem::exists(cloud_path)) {
        throw FormatError("missing point cloud file " + cloud_path.string());
      }
    } catch (const json::exception& e) {
      throw FormatError(where + " (frame " + std::to_string(index.frames.size()) + "): " + e.what());
    } catch (const ValidationError& e) {
      throw ValidationError(where + " (frame " + std::to_string(index.frames.size()) + "): " + e.what());
    } catch (const FormatError& e) {
      throw FormatError(where + " (frame " + std::to_string(index.frames.size()) + "): " + e.what());
    }
    index.frames.push_back(std::move(f));
  }
  return index;
}

ScenarioIndex ingest(const std::filesystem::path& index_path, bool load_clouds) {
  std::ifstream in(index_path);
  if (!in) throw FormatError("cannot open index " + index_path.string());
  return read_index(in, index_path.parent_path(), load_clouds, index_path.filename().string());
}

void write_index(std::ostream& out, const ScenarioIndex& index) {
  for (const auto& f : index.frames) {
    const FrameRecord& r = f.record;
    const Pose sensor2glb = r.ego.sensor2glb();
    json boxes = json::array();
    for (const auto& b : r.boxes) {
      json corners = json::array();
      for (const auto& c : b.transformed(sensor2glb).corners()) corners.push_back({c.x(), c.y(), c.z()});
      boxes.push_back({{"category", b.category()}, {"corners", corners}});
    }
    json rec{{"scene", r.scene_token},
             {"timestamp", r.timestamp},
             {"cloud", f.cloud_file},
             {"ego2glb", pose_json(r.ego.ego2glb)},
             {"li2ego", pose_json(r.ego.li2ego)},
             {"speed", r.ego.speed},
             {"acceleration", r.ego.acceleration},
             {"steering", r.ego.steering_angle},
             {"boxes", boxes}};
    out << rec.dump() << "\n";
  }
  if (!out) throw FormatError("index write failed");
}

void write_index_with_clouds(const std::filesystem::path& index_path, const ScenarioIndex& index) {
  const auto root = index_path.parent_path();
  for (const auto& f : index.frames) {
    const auto p = root / f.cloud_file;
    std::filesystem::create_directories(p.parent_path());
    save_cloud(p, f.record.cloud);
  }
  std::ofstream out(index_path);
  if (!out) throw FormatError("cannot open " + index_path.string() + " for writing");
  write_index(out, index);
}

}  // namespace arl::bench
